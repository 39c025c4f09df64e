// Tietze transformations: generator elimination and greedy simplification.

#ifndef FPVERIFY_TIETZE_HPP_
#define FPVERIFY_TIETZE_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/certificate.hpp"
#include "fpverify/presentation.hpp"

namespace fpv {

struct EliminateGenerator {
  Generator gen;
  Word definition;           // gen = definition, free of gen
  std::size_t defining = 0;  // index of the consumed relator
  friend bool operator==(const EliminateGenerator&,
                         const EliminateGenerator&) = default;
};

struct AddRedundantRelator {
  Word relator;
  Certificate certificate;  // over the presentation before the move
  friend bool operator==(const AddRedundantRelator&,
                         const AddRedundantRelator&) = default;
};

struct RemoveRedundantRelator {
  std::size_t index = 0;
  Certificate certificate;  // over the presentation after the move
  friend bool operator==(const RemoveRedundantRelator&,
                         const RemoveRedundantRelator&) = default;
};

// Rewrites gen as replacement in every relator except the one stating
// gen = replacement, which must be present and is kept.
struct SubstituteInRelators {
  Generator gen;
  Word replacement;
  friend bool operator==(const SubstituteInRelators&,
                         const SubstituteInRelators&) = default;
};

using TietzeMove = std::variant<EliminateGenerator, AddRedundantRelator,
                                RemoveRedundantRelator, SubstituteInRelators>;

class NoDefiningRelator : public std::runtime_error {
 public:
  NoDefiningRelator(Generator gen, std::vector<std::size_t> candidates);
  [[nodiscard]] Generator generator() const noexcept { return gen_; }
  // Relators that mention the generator.
  [[nodiscard]] const std::vector<std::size_t>& candidates() const noexcept {
    return candidates_;
  }

 private:
  Generator gen_;
  std::vector<std::size_t> candidates_;
};

struct Definition {
  Word word;
  std::size_t relator;
};

// Shortest definition of `gen` isolated by some relator (gen occurring exactly
// once), ties broken by relator index.
std::optional<Definition> find_definition(const Presentation& p, Generator gen);

std::pair<Presentation, TietzeMove> eliminate_generator(const Presentation& p,
                                                        Generator gen);

// The elimination of gen through the relator equal to `relator` up to cyclic
// permutation and inversion. Throws NoDefiningRelator when no such relator
// isolates gen.
EliminateGenerator elimination_through(const Presentation& p, Generator gen,
                                       const Word& relator);

// Applies one move. Throws std::invalid_argument if the move does not fit p
// (missing generator, stale certificate, out-of-range index).
Presentation apply_move(const Presentation& p, const TietzeMove& move);
Presentation replay(const Presentation& p, const std::vector<TietzeMove>& moves);

// Undoes an elimination: gen is re-added with the relator gen definition^-1.
Presentation restore_generator(const Presentation& p,
                               const EliminateGenerator& move);

// Drops trivial relators and duplicates up to cyclic permutation/inversion;
// first occurrence wins.
Presentation deduplicate(const Presentation& p);

struct Simplification {
  Presentation result;
  std::vector<TietzeMove> moves;
};

// Greedily eliminates generators with the shortest definition, ties going to
// the alphabetically last generator. Duplicate relators are removed as
// RemoveRedundantRelator moves with one-factor certificates. At most `budget`
// moves are made.
Simplification simplify(const Presentation& p, std::size_t budget);

std::string describe(const TietzeMove& move);
nlohmann::json to_json(const TietzeMove& move);

}  // namespace fpv

#endif  // FPVERIFY_TIETZE_HPP_
