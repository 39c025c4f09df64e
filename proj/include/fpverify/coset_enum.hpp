// Todd-Coxeter coset enumeration.
//
// Three strategies: HLT (relator tracing with eager definitions), HLT with
// lookahead (when the table is full, scan every coset without defining and
// keep going if coincidences freed space), and Felsch (definitions in table
// order, every deduction scanned against the cyclic conjugates of the
// relators). Coincidences are merged through a union-find forwarding array and
// processed to exhaustion before any further definition.

#ifndef FPVERIFY_COSET_ENUM_HPP_
#define FPVERIFY_COSET_ENUM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/presentation.hpp"

namespace fpv {

enum class Strategy { Hlt, HltLookahead, Felsch };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

inline constexpr std::size_t kDefaultMaxCosets = 1'000'000;

// A complete coset table in canonical numbering: coset 0 is the subgroup and
// cosets are numbered in breadth-first order from it, columns taken in the
// order g0, g0^-1, g1, g1^-1, ...
class CosetTable {
 public:
  CosetTable(std::vector<Generator> generators, std::size_t cosets,
             std::vector<std::uint32_t> entries);

  [[nodiscard]] std::size_t size() const noexcept { return cosets_; }
  [[nodiscard]] const std::vector<Generator>& generators() const noexcept {
    return generators_;
  }
  // Image of coset c under the letter; throws if the generator is unknown.
  [[nodiscard]] std::size_t act(std::size_t coset, const Letter& l) const;
  [[nodiscard]] std::size_t act(std::size_t coset, const Word& w) const;

 private:
  std::size_t column(const Letter& l) const;

  std::vector<Generator> generators_;
  std::size_t cosets_;
  std::vector<std::uint32_t> entries_;  // row-major, 2 * rank columns
};

using Permutation = std::vector<std::size_t>;

// The permutation of cosets induced by w (right action: coset c goes to c.w).
Permutation permutation_action(const CosetTable& table, const Word& w);
bool is_identity(const Permutation& perm);

struct EnumerationOptions {
  Strategy strategy = Strategy::HltLookahead;
  std::size_t max_cosets = kDefaultMaxCosets;
  // Checks involution consistency of the working table after every
  // definition and coincidence. Quadratic; tests only.
  bool validate = false;
};

enum class EnumerationStatus { Completed, LimitExceeded };

struct EnumerationResult {
  EnumerationStatus status = EnumerationStatus::LimitExceeded;
  std::size_t index = 0;  // meaningful when Completed
  std::size_t cosets_defined_total = 0;
  std::size_t cosets_live_max = 0;
  std::size_t coincidences = 0;
  Strategy strategy = Strategy::HltLookahead;
  double elapsed_ms = 0.0;
  std::optional<CosetTable> table;  // present when Completed

  [[nodiscard]] bool completed() const noexcept {
    return status == EnumerationStatus::Completed;
  }
};

// Enumerates the cosets of <subgroup> in the group presented by p. Throws
// std::invalid_argument when a subgroup word leaves the alphabet or
// max_cosets is zero.
EnumerationResult enumerate(const Presentation& p,
                            const std::vector<Word>& subgroup = {},
                            const EnumerationOptions& options = {});

struct TrivialityVerdict {
  bool trivial = false;  // false means unknown, never "nontrivial"
  EnumerationResult enumeration;
};

TrivialityVerdict verify_trivial(const Presentation& p,
                                 const EnumerationOptions& options = {});

// True when every relator fixes every coset and every subgroup generator
// fixes coset 0.
bool is_valid_permutation_representation(const CosetTable& table,
                                         const Presentation& p,
                                         const std::vector<Word>& subgroup);

// {"status", "index", "cosets_defined_total", "cosets_live_max",
//  "coincidences", "strategy", "elapsed_ms"}
nlohmann::json to_json(const EnumerationResult& r);

}  // namespace fpv

#endif  // FPVERIFY_COSET_ENUM_HPP_
