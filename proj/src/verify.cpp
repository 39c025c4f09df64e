#include "fpverify/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "fpverify/abelianize.hpp"
#include "fpverify/derivation.hpp"
#include "fpverify/tietze.hpp"
#include "fpverify/traced_enum.hpp"

#ifndef FPVERIFY_VERSION
#define FPVERIFY_VERSION "0.0.0"
#endif

namespace fpv {

std::string_view version() { return FPVERIFY_VERSION; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Mismatch: return "mismatch";
    case Outcome::InputError: return "input-error";
    case Outcome::ResourceLimit: return "resource-limit";
  }
  return "?";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Mismatch: return 1;
    case Outcome::InputError: return 2;
    case Outcome::ResourceLimit: return 3;
  }
  return 2;
}

Outcome combine(Outcome a, Outcome b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

std::size_t max_cosets_from_env(std::size_t fallback) {
  const char* env = std::getenv("FPVERIFY_MAX_COSETS");
  if (env == nullptr || *env == '\0') {
    return fallback;
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') {
    throw std::invalid_argument(
        std::string("FPVERIFY_MAX_COSETS must be a positive integer, got '") +
        env + "'");
  }
  return static_cast<std::size_t>(v);
}

Outcome RunReport::outcome() const {
  Outcome o = Outcome::Pass;
  for (const StepReport& s : steps) {
    o = combine(o, s.outcome);
  }
  return o;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Obtained {
  std::optional<Certificate> cert;
  std::string source;  // "stored", "search" or "none"
};

// Stored certificate if it targets `target` and verifies over `from`, else a
// bounded search.
Obtained obtain(const Presentation& from, const Word& target,
                const nlohmann::json& stored,
                const std::vector<std::size_t>& allowed,
                const SearchBounds& bounds) {
  if (!stored.is_null()) {
    Certificate c = certificate_from_json(stored);
    bool in_range = true;
    for (const Factor& f : c.factors) {
      in_range = in_range && f.relator < from.size();
    }
    if (in_range && c.target == target && verify_certificate(from, c)) {
      return {std::move(c), "stored"};
    }
  }
  if (auto c = search_certificate(from, target, bounds, allowed)) {
    return {std::move(c), "search"};
  }
  return {std::nullopt, "none"};
}

nlohmann::json stored_at(const nlohmann::json& array, std::size_t i) {
  if (array.is_array() && i < array.size()) {
    return array[i];
  }
  return nullptr;
}

// Certificates for every relator of `to` over `from`, identity dictionary.
struct Direction {
  bool ok = true;
  nlohmann::json data = nlohmann::json::array();
  std::map<std::size_t, Certificate> certs;
};

Direction certify_direction(const Presentation& from, const Presentation& to,
                            const nlohmann::json& stored,
                            const SearchBounds& bounds) {
  std::map<Generator, Word> dictionary;
  for (Generator g : to.generators()) {
    if (!from.has_generator(g)) {
      throw std::invalid_argument("generator '" + g.name() +
                                  "' has no image in the other presentation");
    }
    dictionary.emplace(g, Word(g));
  }
  Direction d;
  for (std::size_t i = 0; i < to.size(); ++i) {
    const Word target = translate(to.relator(i), dictionary);
    Obtained o = obtain(from, target, stored_at(stored, i), {}, bounds);
    d.data.push_back({{"relator", to_string(to.relator(i))},
                      {"source", o.source},
                      {"factors", o.cert ? nlohmann::json(o.cert->factors.size())
                                         : nlohmann::json(nullptr)}});
    if (o.cert) {
      d.certs.emplace(i, std::move(*o.cert));
    }
  }
  d.ok = check_equivalence(from, to, dictionary, d.certs);
  return d;
}

std::string count_sources(const Direction& d) {
  std::size_t stored = 0;
  std::size_t searched = 0;
  std::size_t missing = 0;
  for (const auto& e : d.data) {
    const auto src = e.at("source").get<std::string>();
    (src == "stored" ? stored : src == "search" ? searched : missing) += 1;
  }
  std::ostringstream out;
  out << stored << " stored";
  if (searched) out << ", " << searched << " searched";
  if (missing) out << ", " << missing << " missing";
  return out.str();
}

void equivalence_step(const Presentation& here, const Presentation& other,
                      const nlohmann::json& forward,
                      const nlohmann::json& backward, const SearchBounds& bounds,
                      StepReport& step) {
  Direction f = certify_direction(here, other, forward, bounds);
  Direction b = certify_direction(other, here, backward, bounds);
  step.data["forward"] = f.data;
  step.data["backward"] = b.data;
  step.outcome = f.ok && b.ok ? Outcome::Pass : Outcome::Mismatch;
  step.detail = "forward " + std::string(f.ok ? "ok" : "FAILED") + " (" +
                count_sources(f) + "), backward " + (b.ok ? "ok" : "FAILED") +
                " (" + count_sources(b) + ")";
}

// The stored entry named by params[key], or null.
nlohmann::json stored_entry(const Scenario& s, const nlohmann::json& params,
                            const char* key) {
  const auto label = params.at(key).get<std::string>();
  if (s.certificates.contains(label)) {
    return s.certificates.at(label);
  }
  return nullptr;
}

void check_shape(const Scenario& s, const Check& c, StepReport& step) {
  const auto gens = c.params.at("generators").get<std::size_t>();
  const auto rels = c.params.at("relators").get<std::size_t>();
  const Presentation& p = s.presentation;
  step.data = {{"generators", p.rank()}, {"relators", p.size()}};
  step.detail = std::to_string(p.rank()) + " generators, " +
                std::to_string(p.size()) + " relators";
  if (p.rank() != gens || p.size() != rels) {
    step.outcome = Outcome::Mismatch;
    step.detail += "; expected " + std::to_string(gens) + " and " +
                   std::to_string(rels);
  }
}

void check_h1(const Scenario& s, const Check& c, StepReport& step) {
  const AbelianInvariants h = homology_h1(s.presentation);
  AbelianInvariants want;
  want.free_rank = c.params.at("free_rank").get<std::size_t>();
  for (const auto& t : c.params.at("torsion")) {
    want.torsion.emplace_back(t.get<long long>());
  }
  step.data = to_json(h);
  step.detail = "H1 = " + to_string(h);
  if (!(h == want)) {
    step.outcome = Outcome::Mismatch;
    step.detail += "; expected " + to_string(want);
  }
}

void check_trivial(const Scenario& s, const VerifyOptions& o,
                   StepReport& step) {
  step.data["convention"] = std::string(to_string(s.convention));
  step.data["attempts"] = nlohmann::json::array();
  std::optional<EnumerationResult> done;
  for (Strategy st : {Strategy::HltLookahead, Strategy::Felsch}) {
    EnumerationOptions eo;
    eo.strategy = st;
    eo.max_cosets = o.max_cosets;
    EnumerationResult r = enumerate(s.presentation, {}, eo);
    step.data["attempts"].push_back(to_json(r));
    if (r.completed()) {
      done = std::move(r);
      break;
    }
  }
  const AbelianInvariants h = homology_h1(s.presentation);
  step.data["h1"] = to_json(h);
  if (!done) {
    step.outcome = Outcome::ResourceLimit;
    step.detail = "no strategy completed within " +
                  std::to_string(o.max_cosets) + " cosets";
    return;
  }
  step.detail = "index " + std::to_string(done->index) + " via " +
                std::string(to_string(done->strategy)) + ", " +
                std::to_string(done->cosets_defined_total) +
                " cosets defined, " + std::to_string(done->cosets_live_max) +
                " live at most; H1 = " + to_string(h);
  if (done->index != 1) {
    step.outcome = Outcome::Mismatch;
  } else if (!h.is_trivial()) {
    // Cannot happen for a sound enumerator; flag it loudly if it does.
    step.outcome = Outcome::Mismatch;
    step.detail += " (trivial verdict contradicts H1)";
  }
}

void check_certificate(const Scenario& s, const Check& c,
                       const VerifyOptions& o, StepReport& step) {
  const Presentation& p = s.presentation;
  const Word target = parse_word(c.params.at("target").get<std::string>(),
                                 p.generators(), s.convention);
  std::vector<std::size_t> allowed;
  if (c.params.contains("relators")) {
    allowed = c.params.at("relators").get<std::vector<std::size_t>>();
  }
  const nlohmann::json stored = stored_entry(s, c.params, "certificate");
  Obtained got = obtain(p, target, stored, allowed, o.bounds);
  if (got.cert && !allowed.empty()) {
    for (const Factor& f : got.cert->factors) {
      if (std::find(allowed.begin(), allowed.end(), f.relator) ==
          allowed.end()) {
        got = {std::nullopt, "none"};
        break;
      }
    }
  }
  step.data["target"] = to_string(target);
  step.data["source"] = got.source;
  if (!got.cert) {
    step.outcome = Outcome::Mismatch;
    step.detail = to_string(target) + ": no certificate (stored one absent or "
                  "invalid, search bounds exhausted)";
    return;
  }
  step.data["certificate"] = to_json(*got.cert);
  step.detail = to_string(target) + " from " +
                std::to_string(got.cert->factors.size()) + " factor(s), " +
                got.source;
}

void check_equivalence_step(const Scenario& s, const Check& c,
                            const VerifyOptions& o, StepReport& step) {
  const Presentation other = parse_presentation(
      c.params.at("other").get<std::string>(), {s.convention, nullptr});
  step.data["other"] = print_presentation(other);
  equivalence_step(s.presentation, other, stored_entry(s, c.params, "forward"),
                   stored_entry(s, c.params, "backward"), o.bounds, step);
}

void check_eliminations(const Scenario& s, const Check& c,
                        const VerifyOptions& o, StepReport& step) {
  Presentation p = s.presentation;
  step.data["moves"] = nlohmann::json::array();
  for (const auto& e : c.params.at("eliminate")) {
    const Generator gen(e.at(0).get<std::string>());
    const Word via =
        parse_word(e.at(1).get<std::string>(), p.generators(), s.convention);
    const EliminateGenerator move = elimination_through(p, gen, via);
    step.data["moves"].push_back(to_json(TietzeMove{move}));
    p = apply_move(p, move);
  }
  step.data["result"] = print_presentation(p);
  const Scenario target = load_scenario(
      c.params.at("target").get<std::string>(), s.convention,
      s.presentation_path.parent_path());
  equivalence_step(p, target.presentation, stored_entry(s, c.params, "forward"),
                   stored_entry(s, c.params, "backward"), o.bounds, step);
  step.detail = "after " + std::to_string(c.params.at("eliminate").size()) +
                " eliminations, equivalent to " + target.id + ": " +
                step.detail;
}

std::vector<std::size_t> all_but(std::size_t n,
                                 const std::vector<bool>& removed) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (!removed[j]) {
      out.push_back(j);
    }
  }
  return out;
}

bool trivial_without(const Presentation& p, const std::vector<std::size_t>& rows,
                     std::size_t max_cosets) {
  std::vector<Word> rels;
  for (std::size_t j : rows) {
    rels.push_back(p.relator(j));
  }
  EnumerationOptions eo;
  eo.strategy = Strategy::Felsch;
  eo.max_cosets = max_cosets;
  const EnumerationResult r =
      enumerate(Presentation(p.name(), p.generators(), std::move(rels)), {}, eo);
  return r.completed() && r.index == 1;
}

// Derivation of each relator in `targets` over the relators at `rows`, or
// nullopt if the traced enumeration does not collapse.
std::optional<std::vector<Derivation>> derive_all(
    const Presentation& p, const std::vector<std::size_t>& rows,
    const std::vector<std::size_t>& targets, std::size_t max_cosets) {
  TracedEnumerationOptions to;
  to.max_cosets = max_cosets;
  const auto witness = certify_triviality(p, rows, to);
  if (!witness) {
    return std::nullopt;
  }
  std::vector<Derivation> out;
  for (std::size_t t : targets) {
    out.push_back(derivation_for_word(*witness, p.relator(t)));
  }
  return out;
}

bool uses_only(const Derivation& d, const std::vector<std::size_t>& rows) {
  for (const DerivationStep& s : d.steps) {
    if (s.parts.empty() &&
        std::find(rows.begin(), rows.end(), s.factor.relator) == rows.end()) {
      return false;
    }
  }
  return true;
}

void check_redundancy(const Scenario& s, const Check& c, const VerifyOptions& o,
                      StepReport& step) {
  const Presentation& p = s.presentation;
  const auto min_count = c.params.at("min_count").get<std::size_t>();
  const auto expected = c.params.at("expected").get<std::vector<std::size_t>>();
  const std::size_t n = p.size();

  // Each relator against all the others.
  std::vector<std::size_t> certified;
  step.data["relators"] = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> removed(n, false);
    removed[i] = true;
    const auto rows = all_but(n, removed);
    nlohmann::json entry{{"index", i}, {"relator", to_string(p.relator(i))}};
    std::optional<std::vector<Derivation>> d;
    if (trivial_without(p, rows, o.traced_max_cosets)) {
      d = derive_all(p, rows, {i}, o.traced_max_cosets);
    }
    if (d && verify_derivation(p, d->front()) && uses_only(d->front(), rows)) {
      certified.push_back(i);
      entry["certified"] = true;
      entry["steps"] = d->front().steps.size();
      entry["flat_factors"] = flat_size(d->front());
    } else {
      entry["certified"] = false;
    }
    step.data["relators"].push_back(entry);
  }
  step.data["certified"] = certified;

  // Greedy simultaneous removal in index order, each kept only if the rest
  // still collapses; every removed relator is then derived from the final
  // remainder.
  std::vector<bool> removed(n, false);
  for (std::size_t i : certified) {
    removed[i] = true;
    if (!trivial_without(p, all_but(n, removed), o.traced_max_cosets)) {
      removed[i] = false;
    }
  }
  const auto rest = all_but(n, removed);
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i]) {
      dropped.push_back(i);
    }
  }
  bool simultaneous_ok = false;
  if (auto d = derive_all(p, rest, dropped, o.traced_max_cosets)) {
    simultaneous_ok = true;
    for (const Derivation& x : *d) {
      simultaneous_ok = simultaneous_ok && verify_derivation(p, x) &&
                        uses_only(x, rest);
    }
  }
  step.data["simultaneous"] = {{"removed", dropped},
                               {"certified", simultaneous_ok}};

  step.detail = std::to_string(certified.size()) + " of " + std::to_string(n) +
                " relators derived from the others (need " +
                std::to_string(min_count) + "); " +
                std::to_string(dropped.size()) + " removable together" +
                (simultaneous_ok ? "" : " (uncertified)");
  if (certified.size() < min_count || certified != expected) {
    step.outcome = Outcome::Mismatch;
  }
}

void check_pins(const Scenario& s, StepReport& step) {
  const auto dir = s.presentation_path.parent_path();
  std::vector<std::string> mine;
  for (const char* suffix : {".grp", ".expect.json", ".certs.json"}) {
    const std::string f = s.id + suffix;
    if (std::filesystem::exists(dir / f)) {
      mine.push_back(f);
    }
  }
  std::vector<std::string> bad;
  for (const std::string& f : mine) {
    bool pinned = false;
    for (const PinnedFile& pin : pinned_files()) {
      if (pin.name == f) {
        pinned = true;
        if (sha256_hex(dir / f) != pin.sha256) {
          bad.push_back(f);
        }
      }
    }
    if (!pinned) {
      bad.push_back(f + " (unpinned)");
    }
  }
  step.data["files"] = mine;
  if (bad.empty()) {
    step.detail = std::to_string(mine.size()) + " file(s) match their pins";
  } else {
    step.outcome = Outcome::Mismatch;
    step.data["changed"] = bad;
    step.detail = "changed since pinned: ";
    for (std::size_t i = 0; i < bad.size(); ++i) {
      step.detail += (i ? ", " : "") + bad[i];
    }
  }
}

StepReport run_step(const std::string& name,
                    const std::function<void(StepReport&)>& body) {
  StepReport step;
  step.check = name;
  const auto t0 = Clock::now();
  try {
    body(step);
  } catch (const std::exception& e) {
    step.outcome = Outcome::InputError;
    step.detail = e.what();
  }
  step.elapsed_ms = ms_since(t0);
  return step;
}

}  // namespace

RunReport run_scenario(const Scenario& s, const VerifyOptions& options) {
  const auto t0 = Clock::now();
  RunReport r;
  r.subject = s.id;
  r.summary = s.summary;
  r.location = s.location;
  r.quote = s.quote;
  r.convention = s.convention;
  r.steps.push_back(run_step("checksums", [&](StepReport& st) {
    check_pins(s, st);
  }));
  for (const Check& c : s.checks) {
    r.steps.push_back(run_step(c.kind, [&](StepReport& st) {
      if (c.kind == "shape") {
        check_shape(s, c, st);
      } else if (c.kind == "h1") {
        check_h1(s, c, st);
      } else if (c.kind == "trivial") {
        check_trivial(s, options, st);
      } else if (c.kind == "certificate") {
        check_certificate(s, c, options, st);
      } else if (c.kind == "equivalence") {
        check_equivalence_step(s, c, options, st);
      } else if (c.kind == "eliminations") {
        check_eliminations(s, c, options, st);
      } else if (c.kind == "redundancy") {
        check_redundancy(s, c, options, st);
      } else {
        throw std::invalid_argument("unknown check kind '" + c.kind + "'");
      }
    }));
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepReport& s : r.steps) {
    steps.push_back({{"check", s.check},
                     {"outcome", std::string(to_string(s.outcome))},
                     {"detail", s.detail},
                     {"data", s.data},
                     {"elapsed_ms", s.elapsed_ms}});
  }
  return {{"subject", r.subject},
          {"summary", r.summary},
          {"provenance", {{"location", r.location}, {"quote", r.quote}}},
          {"convention", std::string(to_string(r.convention))},
          {"version", std::string(version())},
          {"outcome", std::string(to_string(r.outcome()))},
          {"steps", steps},
          {"elapsed_ms", r.elapsed_ms}};
}

std::string render(const RunReport& r) {
  std::ostringstream out;
  out << r.subject << "  [" << to_string(r.convention) << " convention]\n";
  if (!r.quote.empty()) {
    out << "  \"" << r.quote << "\"  (" << r.location << ")\n";
  }
  for (const StepReport& s : r.steps) {
    std::string tag(to_string(s.outcome));
    for (char& ch : tag) {
      ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    out << "  " << tag << "  " << s.check << ": " << s.detail << "\n";
  }
  std::string overall(to_string(r.outcome()));
  for (char& ch : overall) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  out << "  => " << overall << " (" << static_cast<long long>(r.elapsed_ms)
      << " ms)\n";
  return out.str();
}

}  // namespace fpv
