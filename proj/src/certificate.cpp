#include "fpverify/certificate.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "fpverify/abelianize.hpp"
#include "fpverify/presentation.hpp"

namespace fpv {

Word evaluate(const Presentation& p, const Certificate& cert) {
  Word product;
  for (const Factor& f : cert.factors) {
    const Word& r = p.relator(f.relator);
    product *= conjugate(f.sign > 0 ? r : r.inverse(), f.conjugator);
  }
  return product;
}

bool verify_certificate(const Presentation& p, const Certificate& cert) {
  return evaluate(p, cert) == cert.target;
}

Certificate inverse(const Certificate& cert) {
  Certificate out{cert.target.inverse(), {}};
  for (auto it = cert.factors.rbegin(); it != cert.factors.rend(); ++it) {
    out.factors.push_back({it->conjugator, it->relator, -it->sign});
  }
  return out;
}

Certificate conjugate(const Certificate& cert, const Word& u) {
  Certificate out{fpv::conjugate(cert.target, u), {}};
  for (const Factor& f : cert.factors) {
    out.factors.push_back({u * f.conjugator, f.relator, f.sign});
  }
  return out;
}

Certificate concatenate(const Certificate& lhs, const Certificate& rhs) {
  Certificate out{lhs.target * rhs.target, lhs.factors};
  out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
  return out;
}

Certificate expand(const Certificate& cert,
                   const std::map<std::size_t, Certificate>& expansions,
                   const std::map<std::size_t, std::size_t>& remap) {
  auto mapped = [&remap](std::size_t i) {
    auto it = remap.find(i);
    return it == remap.end() ? i : it->second;
  };
  Certificate out{cert.target, {}};
  for (const Factor& f : cert.factors) {
    auto it = expansions.find(f.relator);
    if (it == expansions.end()) {
      out.factors.push_back({f.conjugator, mapped(f.relator), f.sign});
      continue;
    }
    Certificate piece =
        conjugate(f.sign > 0 ? it->second : inverse(it->second), f.conjugator);
    out.factors.insert(out.factors.end(), piece.factors.begin(),
                       piece.factors.end());
  }
  return out;
}

Certificate substitution_correction(const Word& t, Generator x, const Word& w,
                                    const Certificate& definition) {
  if (definition.target != Word(x) * w.inverse()) {
    throw std::invalid_argument("definition does not certify " + x.name() +
                                " = " + to_string(w));
  }
  // Replacing the occurrence followed by suffix Q, left to right:
  //   A x Q    -> A w Q    = (A x Q) . Q^-1 x^-1 (x w^-1)^-1 x Q
  //   A x^-1 Q -> A w^-1 Q = (A x^-1 Q) . Q^-1 (x w^-1) Q
  const Certificate undo = inverse(definition);
  Certificate out{t.inverse() * substitute(t, x, w), {}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].gen != x) {
      continue;
    }
    const Word q_inv = t.subword(i + 1, t.size() - i - 1).inverse();
    const Certificate piece =
        t[i].exponent > 0 ? conjugate(undo, q_inv * Word(t[i].inverse()))
                          : conjugate(definition, q_inv);
    out.factors.insert(out.factors.end(), piece.factors.begin(),
                       piece.factors.end());
  }
  return out;
}

namespace {

struct Insertion {
  Word inserted;  // rho^-1, spliced into the remaining word
  Word alpha;     // r^s = alpha beta, rho = beta alpha
  std::size_t relator;
  int sign;
};

struct Node {
  Word remaining;
  std::vector<Factor> factors;
};

struct NodeOrder {
  bool operator()(const Node* a, const Node* b) const {
    if (a->remaining.size() != b->remaining.size()) {
      return a->remaining.size() > b->remaining.size();
    }
    return a->factors.size() > b->factors.size();
  }
};

struct RotationKey {
  std::size_t relator;
  int sign;
  std::size_t offset;
};

class Searcher {
 public:
  Searcher(const Presentation& p, std::vector<std::size_t> allowed,
           const SearchBounds& bounds)
      : p_(p), allowed_(std::move(allowed)), bounds_(bounds) {
    for (std::size_t r : allowed_) {
      max_relator_ = std::max(max_relator_, p.relator(r).size());
      for (int sign : {1, -1}) {
        const Word rs = sign > 0 ? p.relator(r) : p.relator(r).inverse();
        for (std::size_t k = 0; k < rs.size(); ++k) {
          Word rho = rotate(rs, k);
          closing_.emplace(rho, RotationKey{r, sign, k});
          insertions_.push_back({rho.inverse(), rs.subword(0, k), r, sign});
        }
      }
    }
    for (Generator g : p.generators()) {
      letters_.emplace_back(g, 1);
      letters_.emplace_back(g, -1);
    }
  }

  std::optional<std::vector<Factor>> run(const Word& target, std::size_t depth,
                                         SearchStats* stats) {
    std::vector<std::unique_ptr<Node>> arena;
    std::priority_queue<Node*, std::vector<Node*>, NodeOrder> open;
    std::unordered_map<Word, std::size_t> best_depth;
    arena.push_back(std::make_unique<Node>(Node{target, {}}));
    open.push(arena.back().get());
    best_depth.emplace(target, 0);
    std::size_t expansions = 0;
    while (!open.empty() && expansions < bounds_.max_expansions) {
      Node* node = open.top();
      open.pop();
      const std::size_t used = node->factors.size();
      if (node->remaining.empty()) {
        return node->factors;
      }
      if (used >= depth) {
        continue;
      }
      if (auto last = close(node->remaining)) {
        auto factors = node->factors;
        factors.push_back(*last);
        return factors;
      }
      if (used + 1 >= depth) {
        continue;
      }
      ++expansions;
      if (stats != nullptr) {
        ++stats->expansions;
      }
      const std::size_t left = depth - used - 1;
      for_each_child(node->remaining, [&](Word next, Factor f) {
        if (next.size() > bounds_.max_word_length ||
            next.size() > left * (max_relator_ + 2 * bounds_.max_conjugator)) {
          return;
        }
        auto [it, fresh] = best_depth.emplace(next, used + 1);
        if (!fresh) {
          if (it->second <= used + 1) {
            return;
          }
          it->second = used + 1;
        }
        auto child = std::make_unique<Node>(Node{std::move(next), node->factors});
        child->factors.push_back(std::move(f));
        open.push(child.get());
        arena.push_back(std::move(child));
      });
    }
    return std::nullopt;
  }

 private:
  // Exact single-factor test: w is a conjugate of some allowed r^{+-1}.
  std::optional<Factor> close(const Word& w) const {
    auto [core, d] = cyclic_reduce(w);
    auto it = closing_.find(core);
    if (it == closing_.end()) {
      return std::nullopt;
    }
    const RotationKey& key = it->second;
    const Word& r = p_.relator(key.relator);
    const Word rs = key.sign > 0 ? r : r.inverse();
    return Factor{d * rs.subword(0, key.offset).inverse(), key.relator,
                  key.sign};
  }

  template <typename Fn>
  void for_each_child(const Word& t, Fn&& emit) const {
    const std::size_t n = t.size();
    std::vector<Word> prefixes;
    for (std::size_t i = 0; i <= n; ++i) {
      Word c = t.subword(0, i);
      prefixes.push_back(c);
      if (bounds_.max_extension > 0) {
        for (const Word& l : letters_) {
          prefixes.push_back(c * l);
        }
      }
    }
    for (const Word& c : prefixes) {
      const Word rest = c.inverse() * t;
      for (const Insertion& ins : insertions_) {
        Word conj = c * ins.alpha.inverse();
        if (conj.size() > bounds_.max_conjugator) {
          continue;
        }
        Word next = c * ins.inserted * rest;
        // Insertions that cancel nothing only grow the word.
        if (next.size() >= t.size() + ins.inserted.size()) {
          continue;
        }
        emit(std::move(next), Factor{std::move(conj), ins.relator, ins.sign});
      }
    }
  }

  const Presentation& p_;
  std::vector<std::size_t> allowed_;
  SearchBounds bounds_;
  std::size_t max_relator_ = 0;
  std::unordered_map<Word, RotationKey> closing_;
  std::vector<Insertion> insertions_;
  std::vector<Word> letters_;
};

}  // namespace

std::optional<Certificate> search_certificate(
    const Presentation& p, const Word& target, const SearchBounds& bounds,
    const std::vector<std::size_t>& allowed, SearchStats* stats) {
  std::vector<std::size_t> rows = allowed;
  if (rows.empty()) {
    rows.resize(p.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  }
  if (target.empty()) {
    return Certificate{target, {}};
  }
  if (!p.is_word_over(target) || !abelian_image_vanishes(p, rows, target)) {
    return std::nullopt;
  }
  Searcher searcher(p, rows, bounds);
  for (std::size_t depth = 1; depth <= bounds.max_factors; ++depth) {
    if (stats != nullptr) {
      ++stats->rounds;
    }
    if (auto factors = searcher.run(target, depth, stats)) {
      Certificate cert{target, std::move(*factors)};
      if (!verify_certificate(p, cert)) {
        throw std::logic_error("certificate search produced an invalid witness");
      }
      return cert;
    }
  }
  return std::nullopt;
}

Word translate(const Word& w, const std::map<Generator, Word>& dictionary) {
  Word out;
  for (const auto& l : w) {
    auto it = dictionary.find(l.gen);
    if (it == dictionary.end()) {
      throw std::invalid_argument("dictionary has no entry for '" +
                                  l.gen.name() + "'");
    }
    out *= l.exponent > 0 ? it->second : it->second.inverse();
  }
  return out;
}

bool check_equivalence(const Presentation& from, const Presentation& to,
                       const std::map<Generator, Word>& dictionary,
                       const std::map<std::size_t, Certificate>& certs) {
  for (Generator g : to.generators()) {
    if (!dictionary.contains(g)) {
      throw std::invalid_argument("dictionary has no entry for '" + g.name() +
                                  "'");
    }
  }
  for (std::size_t i = 0; i < to.size(); ++i) {
    const Word image = translate(to.relator(i), dictionary);
    auto it = certs.find(i);
    if (it == certs.end() || it->second.target != image ||
        !verify_certificate(from, it->second)) {
      return false;
    }
  }
  return true;
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json factors = nlohmann::json::array();
  for (const Factor& f : cert.factors) {
    factors.push_back({{"conjugator", word_to_json(f.conjugator)},
                       {"relator", f.relator},
                       {"sign", f.sign}});
  }
  return {{"target", word_to_json(cert.target)}, {"factors", factors}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert{word_from_json(j.at("target")), {}};
  for (const auto& f : j.at("factors")) {
    int sign = f.at("sign").get<int>();
    if (sign != 1 && sign != -1) {
      throw std::invalid_argument("certificate factor sign must be 1 or -1");
    }
    cert.factors.push_back({word_from_json(f.at("conjugator")),
                            f.at("relator").get<std::size_t>(), sign});
  }
  return cert;
}

}  // namespace fpv
