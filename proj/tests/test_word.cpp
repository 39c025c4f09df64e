#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fpverify/word.hpp"
#include "support.hpp"

using namespace fpv;
using fpv::testing::gens;
using fpv::testing::random_letters;
using fpv::testing::random_word;
using fpv::testing::w;

namespace {

// Deletes a randomly chosen adjacent cancelling pair until none is left.
// Different cancellation orders must agree with free_reduce.
std::vector<Letter> reduce_in_random_order(std::vector<Letter> s,
                                           std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::size_t> pairs;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i].cancels(s[i + 1])) {
        pairs.push_back(i);
      }
    }
    if (pairs.empty()) {
      return s;
    }
    const std::size_t i =
        pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i),
            s.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

std::vector<Letter> concat(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Letter> letters_of(const Word& x) {
  return {x.begin(), x.end()};
}

}  // namespace

TEST_CASE("generators are interned and compared by name") {
  Generator a("a");
  Generator a2(std::string("a"));
  Generator b("b");
  CHECK(a == a2);
  CHECK(a != b);
  CHECK(a < b);
  CHECK(a.name() == "a");
  CHECK(Generator::is_valid_name("x_1"));
  CHECK_FALSE(Generator::is_valid_name("1x"));
  CHECK_FALSE(Generator::is_valid_name(""));
  CHECK_THROWS_AS(Generator("a-b"), std::invalid_argument);
}

TEST_CASE("free reduction") {
  const auto g = gens({"a", "b", "x", "y"});
  const Generator a = g[0], b = g[1], x = g[2], y = g[3];

  SUBCASE("full cancellation") {
    CHECK(Word{{a, 1}, {a, -1}}.empty());
  }
  SUBCASE("already reduced relator survives") {
    const Word r{{x, 1}, {y, 1}, {x, 1}, {y, -1}, {x, -1}, {y, -1}};
    CHECK(r.size() == 6);
    CHECK(to_string(r) == "x y x y^-1 x^-1 y^-1");
  }
  SUBCASE("nested cancellation") {
    const std::vector<Letter> s{{a, 1}, {b, 1}, {b, -1}, {a, 1}, {a, -1}, {a, -1}};
    CHECK(free_reduce(s).empty());
  }
  SUBCASE("exponents other than +-1 are rejected") {
    CHECK_THROWS_AS(Word(a, 2), std::invalid_argument);
  }
}

TEST_CASE("free reduction is confluent on short words") {
  std::mt19937_64 rng(7);
  const auto g = gens({"a", "b"});
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = random_letters(rng, g, 8);
    const Word expected = free_reduce(s);
    for (int order = 0; order < 4; ++order) {
      CHECK(letters_of(expected) == reduce_in_random_order(s, rng));
    }
  }
}

TEST_CASE("free reduction laws on 10000 random words") {
  std::mt19937_64 rng(20240611);
  const auto g = gens({"a", "c", "g", "q", "x"});
  for (int trial = 0; trial < 10000; ++trial) {
    const auto s = random_letters(rng, g, 64);
    const auto t = random_letters(rng, g, 64);
    const Word rs = free_reduce(s);
    const Word rt = free_reduce(t);
    // Idempotence.
    REQUIRE(free_reduce(letters_of(rs)) == rs);
    // Inverse law, both sides.
    REQUIRE((rs * invert(rs)).empty());
    REQUIRE((invert(rs) * rs).empty());
    // Homomorphism.
    REQUIRE(free_reduce(concat(s, t)) == rs * rt);
    // No adjacent cancelling pair survives.
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
      REQUIRE_FALSE(rs[i].cancels(rs[i + 1]));
    }
  }
}

TEST_CASE("inversion") {
  const auto g = gens({"x", "q", "y"});
  CHECK(invert(Word{}).empty());
  CHECK(invert(w("xq^-1x^-1q", g)) == w("q^-1xqx^-1", g));
  CHECK(invert(w("qy^-1", g)) == w("yq^-1", g));
}

TEST_CASE("conjugation") {
  const auto g = gens({"a", "g", "q"});
  const Word a = w("a", g);
  CHECK(conjugate(Word{}, w("gq", g)).empty());
  CHECK(conjugate(w("q", g), w("g", g)) == w("gqg^-1", g));
  CHECK(conjugate(a, a) == a);
}

TEST_CASE("commutators under both conventions") {
  const auto g = gens({"a", "q", "x"});
  const Word a = w("a", g), q = w("q", g), x = w("x", g);
  CHECK(commutator(a, a).empty());
  CHECK(commutator(a, q) == w("aqa^-1q^-1", g));
  CHECK(commutator(x, q.inverse()) == w("xq^-1x^-1q", g));
  CHECK(commutator(a, q, CommutatorConvention::Gap) == w("a^-1q^-1aq", g));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(rng, g, 10);
    const Word v = random_word(rng, g, 10);
    CHECK(commutator(u, u).empty());
    CHECK(commutator(u, Word{}).empty());
    CHECK(commutator(u, v).inverse() == commutator(v, u));
    CHECK(commutator(u, v, CommutatorConvention::Gap) ==
          commutator(u.inverse(), v.inverse()));
  }
}

TEST_CASE("substitution") {
  const auto g = gens({"q", "x", "y", "w", "g"});
  const Generator y = g[2], wg = g[3], gg = g[4];
  CHECK(substitute(w("qy^-1", g), y, w("q", g)).empty());
  const Word step = substitute(w("xyx^-1wy^-1", g), y, w("q", g));
  CHECK(step == w("xqx^-1wq^-1", g));
  CHECK(substitute(step, wg, w("g", g)) == w("xqx^-1gq^-1", g));
  CHECK(substitute(Word{}, gg, w("xq", g)).empty());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Word r = random_word(rng, g, 20);
    CHECK(substitute(r, y, Word(y)) == r);
  }
}

TEST_CASE("cyclic reduction") {
  const auto g = gens({"a", "b", "x", "y"});
  auto [core, conj] = cyclic_reduce(w("aba^-1", g));
  CHECK(core == w("b", g));
  CHECK(conj == w("a", g));
  const Word r = w("xyxy^-1x^-1y^-1", g);
  CHECK(cyclic_reduce(r).core == r);
  CHECK(cyclic_reduce(r).conjugator.empty());
  CHECK(cyclic_reduce(Word{}).core.empty());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Word x = random_word(rng, g, 30);
    const auto cr = cyclic_reduce(x);
    CHECK(cr.core.size() <= x.size());
    CHECK(cr.core.is_cyclically_reduced());
    CHECK(conjugate(cr.core, cr.conjugator) == x);
  }
}

TEST_CASE("rotations and cyclic normal form") {
  const auto g = gens({"a", "b"});
  const Word r = w("aab^-1", g);
  CHECK(rotate(r, 1) == w("ab^-1a", g));
  CHECK(rotations(r).size() == 3);
  CHECK(rotations(w("abab", g)).size() == 2);
  CHECK(cyclic_normal_form(r) == cyclic_normal_form(rotate(r, 2).inverse()));
  CHECK(cyclic_normal_form(w("b a b^-1", g)) == cyclic_normal_form(w("a", g)));
}

TEST_CASE("printing compresses runs") {
  const auto g = gens({"g", "q"});
  CHECK(to_string(w("gq^-2g", g)) == "g q^-2 g");
  CHECK(to_string(Word{}) == "1");
  std::ostringstream os;
  os << w("q^3", g);
  CHECK(os.str() == "q^3");
}

TEST_CASE("word queries") {
  const auto g = gens({"a", "b"});
  const Word x = w("a^3 b^-1 a^-1", g);
  CHECK(x.exponent_sum(g[0]) == 2);
  CHECK(x.exponent_sum(g[1]) == -1);
  CHECK(x.occurrences(g[0]) == 4);
  CHECK(x.contains(g[1]));
  CHECK(x.pow(0).empty());
  CHECK(x.pow(-2) == (x * x).inverse());
  CHECK(x.subword(1, 3) == w("a^2 b^-1", g));
  CHECK_FALSE(x.is_cyclically_reduced());
  CHECK(w("a", g) < w("b", g));
  CHECK(w("b", g) < w("aa", g));
}
