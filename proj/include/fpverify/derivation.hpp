// Certificates with shared steps.
//
// A derivation is a straight-line program over conjugated relators. Each step
// is either a single factor c R[r]^s c^-1 or the product of earlier steps,
// each possibly inverted. The word of a step is the free reduction of that
// product, and the derivation proves the word of its last step. Flattening the
// program gives an ordinary Certificate with the same target, but since steps
// may be reused the flat form can be exponentially longer; verification
// therefore works step by step, reducing one product per step.

#ifndef FPVERIFY_DERIVATION_HPP_
#define FPVERIFY_DERIVATION_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/certificate.hpp"

namespace fpv {

struct StepRef {
  std::size_t step = 0;
  bool inverted = false;
  friend bool operator==(const StepRef&, const StepRef&) = default;
};

struct DerivationStep {
  // A leaf when `parts` is empty.
  Factor factor;
  std::vector<StepRef> parts;
  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct Derivation {
  Word target;
  // Parts refer only to earlier steps. No steps proves the empty word.
  std::vector<DerivationStep> steps;
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

// Word of every step, in order. Throws std::out_of_range on a bad relator
// index and std::invalid_argument on a forward or out-of-range part.
std::vector<Word> step_words(const Presentation& p, const Derivation& d);
bool verify_derivation(const Presentation& p, const Derivation& d);

// Factor count of the flattened certificate (as a double; it can overflow
// any integer type for adversarial programs).
double flat_size(const Derivation& d);
// nullopt when the flat form would have more than max_factors factors.
std::optional<Certificate> flatten(const Derivation& d,
                                   std::size_t max_factors);
Derivation from_certificate(const Certificate& cert);

// Drops steps the last step does not depend on, keeping order.
Derivation prune(const Derivation& d);

// {"target": word, "steps": [{"factor": {...}} | {"parts": [[i, inv], ...]}]}
nlohmann::json to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::json& j);

}  // namespace fpv

#endif  // FPVERIFY_DERIVATION_HPP_
