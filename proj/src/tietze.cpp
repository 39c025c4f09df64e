#include "fpverify/tietze.hpp"

#include <algorithm>
#include <unordered_map>

namespace fpv {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i : v) {
    out += (out.empty() ? "" : ", ") + std::to_string(i);
  }
  return out;
}

std::vector<std::size_t> mentioning(const Presentation& p, Generator gen) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.relator(i).contains(gen)) {
      out.push_back(i);
    }
  }
  return out;
}

bool states(const Word& relator, Generator gen, const Word& definition) {
  return cyclic_normal_form(relator) ==
         cyclic_normal_form(Word(gen) * definition.inverse());
}

std::vector<Generator> without(const std::vector<Generator>& gens,
                               Generator gen) {
  std::vector<Generator> out;
  for (Generator g : gens) {
    if (g != gen) {
      out.push_back(g);
    }
  }
  return out;
}

// Certificate that relator `dup` of `before` follows from `keep` of `after`,
// where the two are equal up to cyclic permutation and inversion.
Certificate duplicate_certificate(const Word& dup, const Word& kept,
                                  std::size_t kept_index) {
  for (int sign : {1, -1}) {
    const Word ks = sign > 0 ? kept : kept.inverse();
    for (std::size_t k = 0; k < ks.size(); ++k) {
      if (rotate(ks, k) == dup) {
        return {dup, {{ks.subword(0, k).inverse(), kept_index, sign}}};
      }
    }
  }
  throw std::logic_error("relators are not cyclic duplicates");
}

}  // namespace

NoDefiningRelator::NoDefiningRelator(Generator gen,
                                     std::vector<std::size_t> candidates)
    : std::runtime_error("no relator isolates generator '" + gen.name() +
                         "'" +
                         (candidates.empty()
                              ? std::string(" (it occurs in no relator)")
                              : " (relators mentioning it: " +
                                    join(candidates) + ")")),
      gen_(gen),
      candidates_(std::move(candidates)) {}

std::optional<Definition> find_definition(const Presentation& p,
                                          Generator gen) {
  std::optional<Definition> best;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Word& r = p.relator(i);
    if (r.occurrences(gen) != 1) {
      continue;
    }
    const auto pos = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(),
                     [gen](const Letter& l) { return l.gen == gen; }) -
        r.begin());
    // Rotate so gen^e leads: gen^e s = 1, hence gen = s^-e.
    const Word rotated = rotate(r, pos);
    const Word rest = rotated.subword(1, rotated.size() - 1);
    Word def = rotated[0].exponent > 0 ? rest.inverse() : rest;
    if (!best || def.size() < best->word.size()) {
      best = Definition{std::move(def), i};
    }
  }
  return best;
}

std::pair<Presentation, TietzeMove> eliminate_generator(const Presentation& p,
                                                        Generator gen) {
  if (!p.has_generator(gen)) {
    throw std::invalid_argument("'" + gen.name() +
                                "' is not a generator of the presentation");
  }
  auto def = find_definition(p, gen);
  if (!def) {
    throw NoDefiningRelator(gen, mentioning(p, gen));
  }
  EliminateGenerator move{gen, def->word, def->relator};
  return {apply_move(p, move), move};
}

EliminateGenerator elimination_through(const Presentation& p, Generator gen,
                                       const Word& relator) {
  const Word key = cyclic_normal_form(relator);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Word& r = p.relator(i);
    if (cyclic_normal_form(r) != key || r.occurrences(gen) != 1) {
      continue;
    }
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k].gen == gen) {
        // Rotated, the relator reads gen^e rest, so gen^e = rest^-1.
        const Word rest = rotate(r, k).subword(1, r.size() - 1);
        return {gen, r[k].exponent > 0 ? rest.inverse() : rest, i};
      }
    }
  }
  throw NoDefiningRelator(gen, mentioning(p, gen));
}

Presentation apply_move(const Presentation& p, const TietzeMove& move) {
  return std::visit(
      [&p](const auto& m) -> Presentation {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, EliminateGenerator>) {
          if (!p.has_generator(m.gen) || m.definition.contains(m.gen) ||
              m.defining >= p.size() ||
              !states(p.relator(m.defining), m.gen, m.definition)) {
            throw std::invalid_argument("elimination of '" + m.gen.name() +
                                        "' does not fit the presentation");
          }
          std::vector<Word> rels;
          for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != m.defining) {
              rels.push_back(substitute(p.relator(i), m.gen, m.definition));
            }
          }
          return Presentation(p.name(), without(p.generators(), m.gen),
                              std::move(rels));
        } else if constexpr (std::is_same_v<M, AddRedundantRelator>) {
          if (m.certificate.target != m.relator ||
              !verify_certificate(p, m.certificate)) {
            throw std::invalid_argument("added relator is not certified");
          }
          auto rels = p.relators();
          rels.push_back(m.relator);
          return p.with_relators(std::move(rels));
        } else if constexpr (std::is_same_v<M, RemoveRedundantRelator>) {
          if (m.index >= p.size()) {
            throw std::invalid_argument("relator index out of range");
          }
          auto rels = p.relators();
          rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(m.index));
          Presentation after = p.with_relators(std::move(rels));
          if (m.certificate.target != p.relator(m.index) ||
              !verify_certificate(after, m.certificate)) {
            throw std::invalid_argument("removed relator is not certified");
          }
          return after;
        } else {
          std::vector<Word> rels;
          bool stated = false;
          for (const Word& r : p.relators()) {
            if (!stated && states(r, m.gen, m.replacement)) {
              stated = true;
              rels.push_back(r);
            } else {
              rels.push_back(substitute(r, m.gen, m.replacement));
            }
          }
          if (!stated || m.replacement.contains(m.gen)) {
            throw std::invalid_argument("no relator states '" + m.gen.name() +
                                        "' = " + to_string(m.replacement));
          }
          return p.with_relators(std::move(rels));
        }
      },
      move);
}

Presentation replay(const Presentation& p,
                    const std::vector<TietzeMove>& moves) {
  Presentation current = p;
  for (const auto& m : moves) {
    current = apply_move(current, m);
  }
  return current;
}

Presentation restore_generator(const Presentation& p,
                               const EliminateGenerator& move) {
  auto gens = p.generators();
  gens.push_back(move.gen);
  auto rels = p.relators();
  rels.push_back(Word(move.gen) * move.definition.inverse());
  return Presentation(p.name(), std::move(gens), std::move(rels));
}

Presentation deduplicate(const Presentation& p) {
  std::vector<Word> rels;
  std::unordered_map<Word, std::size_t> seen;
  for (const Word& r : p.relators()) {
    if (seen.emplace(cyclic_normal_form(r), rels.size()).second) {
      rels.push_back(r);
    }
  }
  return p.with_relators(std::move(rels));
}

namespace {

// Removes cyclic duplicates one move at a time, last duplicate first.
bool remove_one_duplicate(Presentation& p, std::vector<TietzeMove>& moves) {
  std::unordered_map<Word, std::size_t> first;
  std::optional<std::pair<std::size_t, std::size_t>> dup;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [it, fresh] = first.emplace(cyclic_normal_form(p.relator(i)), i);
    if (!fresh) {
      dup = {i, it->second};
    }
  }
  if (!dup) {
    return false;
  }
  auto [index, kept] = *dup;
  RemoveRedundantRelator move{
      index, duplicate_certificate(p.relator(index), p.relator(kept), kept)};
  p = apply_move(p, move);
  moves.emplace_back(std::move(move));
  return true;
}

}  // namespace

Simplification simplify(const Presentation& p, std::size_t budget) {
  Simplification out{p, {}};
  while (out.moves.size() < budget) {
    if (remove_one_duplicate(out.result, out.moves)) {
      continue;
    }
    std::optional<std::pair<Generator, Definition>> best;
    // Ties go to the alphabetically last name, so generators such as y and w
    // go before the g and q they are defined by.
    auto gens = out.result.generators();
    std::sort(gens.begin(), gens.end(), std::greater<>{});
    for (Generator g : gens) {
      auto def = find_definition(out.result, g);
      if (def && (!best || def->word.size() < best->second.word.size())) {
        best = {g, *def};
      }
    }
    if (!best) {
      break;
    }
    EliminateGenerator move{best->first, best->second.word,
                            best->second.relator};
    out.result = apply_move(out.result, move);
    out.moves.emplace_back(std::move(move));
  }
  return out;
}

std::string describe(const TietzeMove& move) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, EliminateGenerator>) {
          return "eliminate " + m.gen.name() + " = " + to_string(m.definition) +
                 " (relator " + std::to_string(m.defining) + ")";
        } else if constexpr (std::is_same_v<M, AddRedundantRelator>) {
          return "add relator " + to_string(m.relator);
        } else if constexpr (std::is_same_v<M, RemoveRedundantRelator>) {
          return "remove relator " + std::to_string(m.index) + " (" +
                 to_string(m.certificate.target) + ")";
        } else {
          return "substitute " + m.gen.name() + " -> " + to_string(m.replacement);
        }
      },
      move);
}

nlohmann::json to_json(const TietzeMove& move) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, EliminateGenerator>) {
          return {{"kind", "eliminate_generator"},
                  {"generator", m.gen.name()},
                  {"definition", word_to_json(m.definition)},
                  {"relator", m.defining}};
        } else if constexpr (std::is_same_v<M, AddRedundantRelator>) {
          return {{"kind", "add_redundant_relator"},
                  {"relator", word_to_json(m.relator)},
                  {"certificate", to_json(m.certificate)}};
        } else if constexpr (std::is_same_v<M, RemoveRedundantRelator>) {
          return {{"kind", "remove_redundant_relator"},
                  {"index", m.index},
                  {"certificate", to_json(m.certificate)}};
        } else {
          return {{"kind", "substitute_in_relators"},
                  {"generator", m.gen.name()},
                  {"replacement", word_to_json(m.replacement)}};
        }
      },
      move);
}

}  // namespace fpv
