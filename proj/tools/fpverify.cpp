// fpverify: command-line front end.
//
// Exit codes: 0 pass, 1 verification mismatch, 2 input error, 3 resource
// limit.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fpverify/abelianize.hpp"
#include "fpverify/certificate.hpp"
#include "fpverify/coset_enum.hpp"
#include "fpverify/corpus.hpp"
#include "fpverify/presentation.hpp"
#include "fpverify/tietze.hpp"
#include "fpverify/verify.hpp"

namespace {

using namespace fpv;

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kResourceLimit = 3;

struct Global {
  std::string convention = "default";
  CommutatorConvention conv() const { return parse_convention(convention); }
};

Presentation load(const std::string& path, const Global& g) {
  return load_presentation(path, {g.conv(), nullptr});
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) {
      continue;
    }
    std::size_t used = 0;
    const auto v = std::stoull(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad relator index '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::size_t cosets_limit(const std::optional<std::size_t>& flag) {
  return flag ? *flag : max_cosets_from_env();
}

// -- subcommands ------------------------------------------------------------

struct ParseArgs {
  std::string path;
  bool json = false;
};

int cmd_parse(const ParseArgs& a, const Global& g) {
  std::vector<std::string> warnings;
  const Presentation p =
      load_presentation(a.path, {g.conv(), &warnings});
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  if (a.json) {
    print_json(to_json(p));
  } else {
    std::cout << print_presentation(p) << "\n";
  }
  return kPass;
}

struct TcArgs {
  std::string path;
  std::string strategy = "hlt-lookahead";
  std::optional<std::size_t> max_cosets;
  std::vector<std::string> subgroup;
};

int cmd_tc(const TcArgs& a, const Global& g) {
  const Presentation p = load(a.path, g);
  std::vector<Word> h;
  for (const auto& text : a.subgroup) {
    h.push_back(parse_word(text, p.generators(), g.conv()));
  }
  EnumerationOptions o;
  o.strategy = parse_strategy(a.strategy);
  o.max_cosets = cosets_limit(a.max_cosets);
  const EnumerationResult r = enumerate(p, h, o);
  nlohmann::json j = to_json(r);
  j["convention"] = g.convention;
  print_json(j);
  return r.completed() ? kPass : kResourceLimit;
}

struct AbelianizeArgs {
  std::string path;
};

int cmd_abelianize(const AbelianizeArgs& a, const Global& g) {
  print_json(to_json(homology_h1(load(a.path, g))));
  return kPass;
}

struct SimplifyArgs {
  std::string path;
  std::size_t budget = 100;
  bool json = false;
};

int cmd_simplify(const SimplifyArgs& a, const Global& g) {
  const Presentation p = load(a.path, g);
  const Simplification s = simplify(p, a.budget);
  if (a.json) {
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : s.moves) {
      moves.push_back(to_json(m));
    }
    print_json({{"result", to_json(s.result)}, {"moves", moves}});
  } else {
    for (const auto& m : s.moves) {
      std::cout << "# " << describe(m) << "\n";
    }
    std::cout << print_presentation(s.result) << "\n";
  }
  return kPass;
}

struct CertifyArgs {
  std::string path;
  std::string target;
  std::string relators;
  std::string cert;
  SearchBounds bounds;
};

int cmd_certify(const CertifyArgs& a, const Global& g) {
  const Presentation p = load(a.path, g);
  const Word target = parse_word(a.target, p.generators(), g.conv());
  if (!a.cert.empty()) {
    std::ifstream in(a.cert);
    if (!in) {
      throw std::runtime_error("cannot open " + a.cert);
    }
    const Certificate c = certificate_from_json(nlohmann::json::parse(in));
    for (const Factor& f : c.factors) {
      if (f.relator >= p.size()) {
        throw std::invalid_argument("certificate relator index " +
                                    std::to_string(f.relator) +
                                    " out of range");
      }
    }
    const Word value = evaluate(p, c);
    const bool ok = c.target == target && value == target;
    print_json({{"verified", ok},
                {"target", to_string(target)},
                {"product", to_string(value)},
                {"factors", c.factors.size()}});
    return ok ? kPass : kMismatch;
  }
  SearchStats stats;
  const auto c =
      search_certificate(p, target, a.bounds, parse_indices(a.relators), &stats);
  if (!c) {
    std::cerr << "no certificate for " << to_string(target)
              << " within bounds (" << stats.expansions << " expansions)\n";
    return kMismatch;
  }
  print_json(to_json(*c));
  return kPass;
}

struct VerifyArgs {
  std::string scenario;
  bool all = false;
  bool json = false;
  std::string corpus;
  std::optional<std::size_t> max_cosets;
  unsigned jobs = 0;
};

int cmd_verify(const VerifyArgs& a, const Global& g) {
  if (a.all == !a.scenario.empty()) {
    throw std::invalid_argument("give exactly one of --scenario and --all");
  }
  const auto dir =
      a.corpus.empty() ? default_corpus_dir() : std::filesystem::path(a.corpus);
  const std::vector<std::string> ids =
      a.all ? registered_scenarios() : std::vector<std::string>{a.scenario};
  // Load everything up front so input errors surface before any work.
  std::vector<Scenario> scenarios;
  for (const auto& id : ids) {
    scenarios.push_back(load_scenario(id, g.conv(), dir));
  }
  VerifyOptions o;
  o.convention = g.conv();
  o.max_cosets = cosets_limit(a.max_cosets);

  // Scenarios are independent; reports are assembled in registry order.
  std::vector<RunReport> reports(scenarios.size());
  const unsigned jobs =
      a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < scenarios.size(); start += jobs) {
    std::vector<std::future<RunReport>> running;
    const std::size_t end = std::min(scenarios.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      running.push_back(std::async(std::launch::async, [&, i] {
        return run_scenario(scenarios[i], o);
      }));
    }
    for (std::size_t i = start; i < end; ++i) {
      reports[i] = running[i - start].get();
    }
  }

  Outcome overall = Outcome::Pass;
  nlohmann::json all = nlohmann::json::array();
  for (const RunReport& r : reports) {
    overall = combine(overall, r.outcome());
    if (a.json) {
      all.push_back(to_json(r));
    } else {
      std::cout << render(r);
    }
  }
  if (a.json) {
    print_json({{"version", std::string(version())},
                {"convention", g.convention},
                {"outcome", std::string(to_string(overall))},
                {"reports", all}});
  } else {
    std::cout << "overall: " << to_string(overall) << " (" << reports.size()
              << " scenario" << (reports.size() == 1 ? "" : "s") << ", "
              << g.convention << " convention, fpverify " << version()
              << ")\n";
  }
  return exit_code(overall);
}

void add_bounds(CLI::App* cmd, SearchBounds& b) {
  cmd->add_option("--max-factors", b.max_factors, "Factor bound")
      ->capture_default_str();
  cmd->add_option("--max-conjugator", b.max_conjugator,
                  "Conjugator length bound")
      ->capture_default_str();
  cmd->add_option("--max-extension", b.max_extension,
                  "Free letters appended to prefix conjugators")
      ->capture_default_str();
  cmd->add_option("--max-expansions", b.max_expansions,
                  "Node expansions per bound pair")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitely presented group verification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fpv::version()));
  Global g;
  app.add_option("--convention", g.convention,
                 "Commutator convention: default [u,v]=uvu^-1v^-1, gap "
                 "[u,v]=u^-1v^-1uv")
      ->check(CLI::IsMember({"default", "gap"}))
      ->capture_default_str();

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Parse and print a presentation");
  parse->add_option("path", parse_args.path)->required();
  parse->add_flag("--json", parse_args.json, "Emit JSON");

  TcArgs tc_args;
  auto* tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  tc->add_option("path", tc_args.path)->required();
  tc->add_option("--strategy", tc_args.strategy)
      ->check(CLI::IsMember({"hlt", "hlt-lookahead", "felsch"}))
      ->capture_default_str();
  tc->add_option("--max-cosets", tc_args.max_cosets,
                 "Live coset limit (default: FPVERIFY_MAX_COSETS or 1000000)");
  tc->add_option("--subgroup", tc_args.subgroup,
                 "Subgroup generator word (repeatable)");

  AbelianizeArgs ab_args;
  auto* ab = app.add_subcommand("abelianize", "First homology");
  ab->add_option("path", ab_args.path)->required();

  SimplifyArgs simp_args;
  auto* simp = app.add_subcommand("simplify", "Greedy Tietze simplification");
  simp->add_option("path", simp_args.path)->required();
  simp->add_option("--budget", simp_args.budget, "Maximum number of moves")
      ->capture_default_str();
  simp->add_flag("--json", simp_args.json, "Emit JSON");

  CertifyArgs cert_args;
  auto* cert = app.add_subcommand(
      "certify", "Search for or check a consequence certificate");
  cert->add_option("path", cert_args.path)->required();
  cert->add_option("--target", cert_args.target, "Word to certify")
      ->required();
  cert->add_option("--relators", cert_args.relators,
                   "Comma-separated relator indices the search may use");
  cert->add_option("--cert", cert_args.cert,
                   "Certificate JSON to check instead of searching");
  add_bounds(cert, cert_args.bounds);

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Replay corpus scenarios");
  ver->add_option("--scenario", ver_args.scenario, "Scenario id");
  ver->add_flag("--all", ver_args.all, "Every registered scenario");
  ver->add_flag("--json", ver_args.json, "Emit JSON");
  ver->add_option("--corpus", ver_args.corpus, "Corpus directory");
  ver->add_option("--max-cosets", ver_args.max_cosets,
                  "Live coset limit (default: FPVERIFY_MAX_COSETS or 1000000)");
  ver->add_option("--jobs", ver_args.jobs,
                  "Scenarios run concurrently (default: hardware threads)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*parse) return cmd_parse(parse_args, g);
    if (*tc) return cmd_tc(tc_args, g);
    if (*ab) return cmd_abelianize(ab_args, g);
    if (*simp) return cmd_simplify(simp_args, g);
    if (*cert) return cmd_certify(cert_args, g);
    if (*ver) return cmd_verify(ver_args, g);
  } catch (const fpv::ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const std::bad_alloc&) {
    std::cerr << "out of memory\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
