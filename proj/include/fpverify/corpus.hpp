// The scenario corpus: presentation files, expectations and stored
// certificates, read from a directory laid out as
//
//     <id>.grp           presentation in the text grammar
//     <id>.expect.json   provenance and the checks to run
//     <id>.certs.json    optional, labelled certificates used by the checks
//
// Files are pinned by SHA-256 so that silent edits are caught.

#ifndef FPVERIFY_CORPUS_HPP_
#define FPVERIFY_CORPUS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/presentation.hpp"

namespace fpv {

class UnknownScenario : public std::invalid_argument {
 public:
  explicit UnknownScenario(const std::string& id)
      : std::invalid_argument("unknown scenario '" + id + "'") {}
};

struct Check {
  std::string kind;  // shape, h1, trivial, certificate, equivalence,
                     // eliminations, redundancy
  nlohmann::json params;
};

struct Scenario {
  std::string id;
  std::string summary;
  std::string location;  // where in the source the claim is made
  std::string quote;     // verbatim from the source
  std::filesystem::path presentation_path;
  Presentation presentation;
  std::vector<Check> checks;
  nlohmann::json certificates = nlohmann::json::object();  // label -> cert(s)
  CommutatorConvention convention = CommutatorConvention::Default;
};

struct ScenarioSummary {
  std::string id;
  std::string summary;
};

// FPVERIFY_CORPUS_DIR from the environment if set, else the build-time path.
std::filesystem::path default_corpus_dir();

// Registered ids, sorted.
const std::vector<std::string>& registered_scenarios();
std::vector<ScenarioSummary> list_scenarios(
    const std::filesystem::path& dir = default_corpus_dir());

// Throws UnknownScenario, ParseError (presentation file) or
// std::runtime_error (missing file, malformed JSON).
Scenario load_scenario(std::string_view id,
                       CommutatorConvention convention =
                           CommutatorConvention::Default,
                       const std::filesystem::path& dir = default_corpus_dir());

struct PinnedFile {
  std::string_view name;
  std::string_view sha256;
};
const std::vector<PinnedFile>& pinned_files();

std::string sha256_hex(const std::filesystem::path& file);

// Files whose hash differs from the pin, or that are missing.
std::vector<std::string> checksum_mismatches(
    const std::filesystem::path& dir = default_corpus_dir());

}  // namespace fpv

#endif  // FPVERIFY_CORPUS_HPP_
