// Shared helpers for the test binaries.

#ifndef FPVERIFY_TESTS_SUPPORT_HPP_
#define FPVERIFY_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "fpverify/presentation.hpp"
#include "fpverify/word.hpp"

namespace fpv::testing {

inline std::vector<Generator> gens(std::initializer_list<const char*> names) {
  std::vector<Generator> out;
  for (const char* n : names) {
    out.emplace_back(n);
  }
  return out;
}

inline Word w(const std::string& text, const std::vector<Generator>& g,
              CommutatorConvention c = CommutatorConvention::Default) {
  return parse_word(text, g, c);
}

// Raw (unreduced) letter sequence.
inline std::vector<Letter> random_letters(std::mt19937_64& rng,
                                          const std::vector<Generator>& g,
                                          std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> out(len(rng), Letter{g.front(), 1});
  for (Letter& l : out) {
    l = {g[pick(rng)], sign(rng) ? 1 : -1};
  }
  return out;
}

inline Word random_word(std::mt19937_64& rng, const std::vector<Generator>& g,
                        std::size_t max_len) {
  const auto letters = random_letters(rng, g, max_len);
  return Word(std::span<const Letter>(letters));
}

}  // namespace fpv::testing

#endif  // FPVERIFY_TESTS_SUPPORT_HPP_
