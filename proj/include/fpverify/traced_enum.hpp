// Certificate-producing coset enumeration over the trivial subgroup.
//
// Runs a Felsch enumeration that carries, for every table entry c.x = d, a
// certificate for W(c) x W(d)^-1 where W(c) is the word that defined coset c.
// Deductions and coincidences compose these along relator traces, so when the
// enumeration collapses to a single coset the entries of coset 0 certify each
// generator as a consequence of the relators. The certificates share steps
// heavily and are returned as derivations.

#ifndef FPVERIFY_TRACED_ENUM_HPP_
#define FPVERIFY_TRACED_ENUM_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fpverify/derivation.hpp"
#include "fpverify/presentation.hpp"

namespace fpv {

struct TracedEnumerationOptions {
  std::size_t max_cosets = 200'000;
  // Bound on derivation steps recorded during the run.
  std::size_t max_steps = 20'000'000;
};

struct TrivialityWitness {
  // Shared steps; roots[g] is the step proving the generator g.
  std::vector<DerivationStep> steps;
  std::map<Generator, StepRef> roots;
  std::size_t cosets_defined_total = 0;
  std::size_t cosets_live_max = 0;
};

// Certificates over p's relators (restricted to `allowed`, all when empty)
// showing every generator is trivial. nullopt when the enumeration does not
// collapse to one coset within bounds.
std::optional<TrivialityWitness> certify_triviality(
    const Presentation& p, const std::vector<std::size_t>& allowed = {},
    const TracedEnumerationOptions& options = {});

// Derivation for an arbitrary word over p, assembled letter by letter and
// pruned to the steps it uses.
Derivation derivation_for_word(const TrivialityWitness& witness,
                               const Word& target);

}  // namespace fpv

#endif  // FPVERIFY_TRACED_ENUM_HPP_
