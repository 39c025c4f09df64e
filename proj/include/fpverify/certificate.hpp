// Consequence certificates.
//
// A certificate for `target` over a presentation P is a list of factors
// (conjugator c_i, relator index r_i, sign s_i) such that the free reduction of
//
//     c_1 R[r_1]^{s_1} c_1^-1 * c_2 R[r_2]^{s_2} c_2^-1 * ...
//
// is exactly `target`. Checking one is a single pass of free reduction.

#ifndef FPVERIFY_CERTIFICATE_HPP_
#define FPVERIFY_CERTIFICATE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/word.hpp"

namespace fpv {

class Presentation;

struct Factor {
  Word conjugator;
  std::size_t relator = 0;
  int sign = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Certificate {
  Word target;
  std::vector<Factor> factors;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// The freely reduced product of the factors; throws std::out_of_range on a bad
// relator index.
Word evaluate(const Presentation& p, const Certificate& cert);
bool verify_certificate(const Presentation& p, const Certificate& cert);

// Certificate for the inverse of cert.target.
Certificate inverse(const Certificate& cert);
// Certificate for u * target * u^-1.
Certificate conjugate(const Certificate& cert, const Word& u);
// Certificate for lhs.target * rhs.target.
Certificate concatenate(const Certificate& lhs, const Certificate& rhs);
// Replaces each factor whose relator has an entry in `expansions` by the
// conjugated (and possibly inverted) expansion. Expansion certificates must
// target the relator they replace; indices of the result refer to whatever
// presentation the expansions and remaining factors are over, after `remap`.
Certificate expand(const Certificate& cert,
                   const std::map<std::size_t, Certificate>& expansions,
                   const std::map<std::size_t, std::size_t>& remap = {});

// Given `definition` with target x w^-1, a certificate built from it alone
// with target t^-1 * substitute(t, x, w). Appending it to a certificate for t
// certifies the substituted word; appending its inverse to one for the
// substituted word recovers t. Throws std::invalid_argument if the definition
// targets anything else.
Certificate substitution_correction(const Word& t, Generator x, const Word& w,
                                    const Certificate& definition);

struct SearchBounds {
  std::size_t max_factors = 4;
  std::size_t max_conjugator = 6;
  // Free letters that may be appended to a prefix conjugator.
  std::size_t max_extension = 1;
  // Intermediate words longer than this are discarded.
  std::size_t max_word_length = 64;
  // Node expansions per (factor, conjugator) bound pair.
  std::size_t max_expansions = 200000;
};

struct SearchStats {
  std::size_t expansions = 0;
  std::size_t rounds = 0;
};

// Looks for a certificate for `target` using only the relators at `allowed`
// (all relators when empty). NotFound (nullopt) is inconclusive unless the
// abelian image of target is nonzero.
std::optional<Certificate> search_certificate(
    const Presentation& p, const Word& target, const SearchBounds& bounds = {},
    const std::vector<std::size_t>& allowed = {}, SearchStats* stats = nullptr);

// True iff every relator of `to`, translated through `dictionary` (words over
// `from`), carries a verified certificate in `certs` over `from`. Certificates
// are matched to relators by index in `to`. Throws std::invalid_argument when a
// generator of `to` is missing from the dictionary.
bool check_equivalence(const Presentation& from, const Presentation& to,
                       const std::map<Generator, Word>& dictionary,
                       const std::map<std::size_t, Certificate>& certs);

// Translates a word over `to` into the generators of `from`.
Word translate(const Word& w, const std::map<Generator, Word>& dictionary);

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace fpv

#endif  // FPVERIFY_CERTIFICATE_HPP_
