#include "fpverify/derivation.hpp"

#include <stdexcept>
#include <string>

#include "fpverify/presentation.hpp"

namespace fpv {

namespace {

void check_parts(const Derivation& d, std::size_t i) {
  for (const StepRef& r : d.steps[i].parts) {
    if (r.step >= i) {
      throw std::invalid_argument("derivation step " + std::to_string(i) +
                                  " refers to step " + std::to_string(r.step));
    }
  }
}

}  // namespace

std::vector<Word> step_words(const Presentation& p, const Derivation& d) {
  std::vector<Word> words;
  words.reserve(d.steps.size());
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const DerivationStep& s = d.steps[i];
    check_parts(d, i);
    if (s.parts.empty()) {
      const Word& r = p.relator(s.factor.relator);
      words.push_back(conjugate(s.factor.sign > 0 ? r : r.inverse(),
                                s.factor.conjugator));
      continue;
    }
    Word w;
    for (const StepRef& r : s.parts) {
      w *= r.inverted ? words[r.step].inverse() : words[r.step];
    }
    words.push_back(std::move(w));
  }
  return words;
}

bool verify_derivation(const Presentation& p, const Derivation& d) {
  if (d.steps.empty()) {
    return d.target.empty();
  }
  return step_words(p, d).back() == d.target;
}

double flat_size(const Derivation& d) {
  std::vector<double> size(d.steps.size(), 0.0);
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    check_parts(d, i);
    if (d.steps[i].parts.empty()) {
      size[i] = 1.0;
      continue;
    }
    for (const StepRef& r : d.steps[i].parts) {
      size[i] += size[r.step];
    }
  }
  return d.steps.empty() ? 0.0 : size.back();
}

std::optional<Certificate> flatten(const Derivation& d,
                                   std::size_t max_factors) {
  Certificate out{d.target, {}};
  if (d.steps.empty()) {
    return out;
  }
  if (flat_size(d) > static_cast<double>(max_factors)) {
    return std::nullopt;
  }
  std::vector<StepRef> stack{{d.steps.size() - 1, false}};
  while (!stack.empty()) {
    const StepRef r = stack.back();
    stack.pop_back();
    const DerivationStep& s = d.steps[r.step];
    if (s.parts.empty()) {
      out.factors.push_back({s.factor.conjugator, s.factor.relator,
                             r.inverted ? -s.factor.sign : s.factor.sign});
    } else if (!r.inverted) {
      for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) {
        stack.push_back(*it);
      }
    } else {
      // (p1 p2 ... pk)^-1 = pk^-1 ... p1^-1, so p1^-1 is popped last.
      for (const StepRef& part : s.parts) {
        stack.push_back({part.step, !part.inverted});
      }
    }
  }
  return out;
}

Derivation from_certificate(const Certificate& cert) {
  Derivation d{cert.target, {}};
  DerivationStep product;
  for (const Factor& f : cert.factors) {
    product.parts.push_back({d.steps.size(), false});
    d.steps.push_back({f, {}});
  }
  if (d.steps.size() > 1) {
    d.steps.push_back(std::move(product));
  }
  return d;
}

Derivation prune(const Derivation& d) {
  if (d.steps.empty()) {
    return d;
  }
  std::vector<bool> used(d.steps.size(), false);
  used.back() = true;
  for (std::size_t i = d.steps.size(); i-- > 0;) {
    check_parts(d, i);
    if (used[i]) {
      for (const StepRef& r : d.steps[i].parts) {
        used[r.step] = true;
      }
    }
  }
  std::vector<std::size_t> renumber(d.steps.size(), 0);
  Derivation out{d.target, {}};
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    if (!used[i]) {
      continue;
    }
    renumber[i] = out.steps.size();
    DerivationStep s = d.steps[i];
    for (StepRef& r : s.parts) {
      r.step = renumber[r.step];
    }
    out.steps.push_back(std::move(s));
  }
  return out;
}

nlohmann::json to_json(const Derivation& d) {
  nlohmann::json steps = nlohmann::json::array();
  for (const DerivationStep& s : d.steps) {
    if (s.parts.empty()) {
      steps.push_back({{"factor",
                        {{"conjugator", word_to_json(s.factor.conjugator)},
                         {"relator", s.factor.relator},
                         {"sign", s.factor.sign}}}});
      continue;
    }
    nlohmann::json parts = nlohmann::json::array();
    for (const StepRef& r : s.parts) {
      parts.push_back({r.step, r.inverted});
    }
    steps.push_back({{"parts", parts}});
  }
  return {{"target", word_to_json(d.target)}, {"steps", steps}};
}

Derivation derivation_from_json(const nlohmann::json& j) {
  Derivation d{word_from_json(j.at("target")), {}};
  for (const auto& s : j.at("steps")) {
    if (s.contains("factor")) {
      const auto& f = s.at("factor");
      const int sign = f.at("sign").get<int>();
      if (sign != 1 && sign != -1) {
        throw std::invalid_argument("derivation factor sign must be 1 or -1");
      }
      d.steps.push_back({{word_from_json(f.at("conjugator")),
                          f.at("relator").get<std::size_t>(), sign},
                         {}});
      continue;
    }
    DerivationStep step;
    for (const auto& r : s.at("parts")) {
      step.parts.push_back({r.at(0).get<std::size_t>(), r.at(1).get<bool>()});
    }
    if (step.parts.empty()) {
      throw std::invalid_argument("derivation product step has no parts");
    }
    d.steps.push_back(std::move(step));
  }
  return d;
}

}  // namespace fpv
