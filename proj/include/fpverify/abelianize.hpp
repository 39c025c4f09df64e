// First homology of a finitely presented group: the abelianized relation
// matrix and its Smith invariants.

#ifndef FPVERIFY_ABELIANIZE_HPP_
#define FPVERIFY_ABELIANIZE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/presentation.hpp"
#include "fpverify/smith.hpp"

namespace fpv {

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // nonunit invariant factors, ascending

  [[nodiscard]] bool is_trivial() const noexcept {
    return free_rank == 0 && torsion.empty();
  }
  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
};

// One row per relator, one column per generator; entries are exponent sums.
IntegerMatrix abelianized_relation_matrix(const Presentation& p);
// Same, restricted to the relators at `rows`.
IntegerMatrix abelianized_relation_matrix(const Presentation& p,
                                          const std::vector<std::size_t>& rows);

std::vector<BigInt> exponent_vector(const Presentation& p, const Word& w);

AbelianInvariants homology_h1(const Presentation& p);

// False when the image of w in the abelianization of <gens | relators at
// `rows`> is nonzero; such a w cannot lie in the normal closure.
bool abelian_image_vanishes(const Presentation& p,
                            const std::vector<std::size_t>& rows,
                            const Word& w);

std::string to_string(const AbelianInvariants& h);
nlohmann::json to_json(const AbelianInvariants& h);

}  // namespace fpv

#endif  // FPVERIFY_ABELIANIZE_HPP_
