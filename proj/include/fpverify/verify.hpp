// Scenario replay: runs every check recorded for a corpus scenario and
// collects the outcomes into a report.

#ifndef FPVERIFY_VERIFY_HPP_
#define FPVERIFY_VERIFY_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/certificate.hpp"
#include "fpverify/coset_enum.hpp"
#include "fpverify/corpus.hpp"

namespace fpv {

std::string_view version();

// Ordered by severity for aggregation: an input error outranks a mismatch,
// which outranks running out of resources.
enum class Outcome { Pass, ResourceLimit, Mismatch, InputError };

std::string_view to_string(Outcome o);
// 0 pass, 1 mismatch, 2 input error, 3 resource limit.
int exit_code(Outcome o);
Outcome combine(Outcome a, Outcome b);

// FPVERIFY_MAX_COSETS when set to a positive integer, else the fallback.
// Throws std::invalid_argument on a malformed value.
std::size_t max_cosets_from_env(std::size_t fallback = kDefaultMaxCosets);

struct VerifyOptions {
  CommutatorConvention convention = CommutatorConvention::Default;
  std::size_t max_cosets = kDefaultMaxCosets;
  // Used when a stored certificate is absent or fails to verify.
  SearchBounds bounds{};
  // Coset bound for the proof-producing enumerations of the redundancy check.
  std::size_t traced_max_cosets = 200'000;
};

struct StepReport {
  std::string check;
  Outcome outcome = Outcome::Pass;
  std::string detail;
  nlohmann::json data = nlohmann::json::object();
  double elapsed_ms = 0.0;
};

struct RunReport {
  std::string subject;  // scenario id or input path
  std::string summary;
  std::string location;
  std::string quote;
  CommutatorConvention convention = CommutatorConvention::Default;
  std::vector<StepReport> steps;
  double elapsed_ms = 0.0;

  // Pass only when every step passed.
  [[nodiscard]] Outcome outcome() const;
};

RunReport run_scenario(const Scenario& s, const VerifyOptions& options = {});

nlohmann::json to_json(const RunReport& r);
// Human-readable, with the source quote next to the outcome.
std::string render(const RunReport& r);

}  // namespace fpv

#endif  // FPVERIFY_VERIFY_HPP_
