#include <array>
#include <complex>
#include <set>

#include "doctest.h"
#include "fpverify/abelianize.hpp"
#include "fpverify/coset_enum.hpp"
#include "fpverify/presentation.hpp"
#include "support.hpp"

using namespace fpv;
using fpv::testing::w;

namespace {

constexpr std::array kStrategies{Strategy::Hlt, Strategy::HltLookahead,
                                 Strategy::Felsch};

EnumerationResult run(const Presentation& p, Strategy s,
                      std::size_t max_cosets = 10000,
                      const std::vector<Word>& h = {}) {
  EnumerationOptions o;
  o.strategy = s;
  o.max_cosets = max_cosets;
  o.validate = true;
  return enumerate(p, h, o);
}

// Closes a set of generators under multiplication and checks every relator
// maps to the identity; returns the order of the image group.
template <typename Elem, typename Mul, typename Less = std::less<Elem>>
std::size_t image_order(const Presentation& p, const std::vector<Elem>& images,
                        const Elem& one, Mul mul, Less = {}) {
  auto eval = [&](const Word& word) {
    Elem acc = one;
    for (const Letter& l : word) {
      const std::size_t k = *p.index_of(l.gen);
      Elem x = images[k];
      if (l.exponent < 0) {
        // Finite order: the inverse is a positive power.
        Elem y = x;
        while (mul(y, x) != one) y = mul(y, x);
        x = y;
      }
      acc = mul(acc, x);
    }
    return acc;
  };
  for (const Word& r : p.relators()) {
    REQUIRE(eval(r) == one);
  }
  std::set<Elem, Less> seen{one};
  std::vector<Elem> frontier{one};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const Elem& e : frontier) {
      for (const Elem& g : images) {
        const Elem f = mul(e, g);
        if (seen.insert(f).second) next.push_back(f);
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

using Perm3 = std::array<int, 3>;
Perm3 compose(const Perm3& a, const Perm3& b) {
  return {b[a[0]], b[a[1]], b[a[2]]};
}

// Quaternion units as 2x2 complex matrices with integer parts.
using Mat = std::array<std::complex<int>, 4>;
Mat matmul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
struct MatLess {
  bool operator()(const Mat& a, const Mat& b) const {
    for (int k = 0; k < 4; ++k) {
      const auto x = std::pair(a[k].real(), a[k].imag());
      const auto y = std::pair(b[k].real(), b[k].imag());
      if (x != y) return x < y;
    }
    return false;
  }
};

}  // namespace

TEST_CASE("cyclic groups up to order 12 under every strategy") {
  for (int n = 1; n <= 12; ++n) {
    const Presentation p =
        parse_presentation("< a | a^" + std::to_string(n) + " >");
    for (Strategy s : kStrategies) {
      CAPTURE(n);
      CAPTURE(to_string(s));
      const auto r = run(p, s);
      REQUIRE(r.completed());
      CHECK(r.index == static_cast<std::size_t>(n));
      CHECK(r.index <= r.cosets_live_max);
      CHECK(r.cosets_live_max <= r.cosets_defined_total);
      CHECK(is_valid_permutation_representation(*r.table, p, {}));
    }
  }
}

TEST_CASE("symmetric group of order 6") {
  const Presentation p = parse_presentation("< r, s | r^3, s^2, (rs)^2 >");
  // Oracle: r -> (0 1 2), s -> (0 1) satisfy the relators and generate
  // six permutations, so the group has order at least 6.
  const std::size_t oracle = image_order<Perm3>(
      p, {Perm3{1, 2, 0}, Perm3{1, 0, 2}}, Perm3{0, 1, 2}, compose);
  CHECK(oracle == 6);
  for (Strategy s : kStrategies) {
    const auto r = run(p, s);
    REQUIRE(r.completed());
    CHECK(r.index == oracle);
    CHECK(r.strategy == s);
  }
}

TEST_CASE("quaternion group of order 8") {
  const Presentation p = parse_presentation("< i, j | i^4, i^2j^-2, j^-1iji >");
  using C = std::complex<int>;
  const Mat one{C(1), C(0), C(0), C(1)};
  const Mat qi{C(0, 1), C(0), C(0), C(0, -1)};
  const Mat qj{C(0), C(1), C(-1), C(0)};
  const std::size_t oracle = image_order(p, std::vector<Mat>{qi, qj}, one, matmul, MatLess{});
  CHECK(oracle == 8);
  for (Strategy s : kStrategies) {
    const auto r = run(p, s);
    REQUIRE(r.completed());
    CHECK(r.index == oracle);
  }
}

TEST_CASE("strategies agree on index and canonical table") {
  const std::vector<std::string> battery = {
      "< a, b | a^2, b^3, (ab)^3 >",          // A4
      "< a, b | a^2, b^3, (ab)^4 >",          // S4
      "< a, b | a^2, b^3, (ab)^5 >",          // A5
      "< a, b | a^4, b^2, (ab)^2 >",          // D4
      "< x, y | x^3, y^3, [x,y] >",           // Z3 x Z3
      "< a, b | a^8, b^2a^4, b^-1aba >",      // Q16
      "< a, b | a^3, b^3, (ab)^3, (a^-1b)^3 >",
  };
  const std::vector<std::size_t> orders = {12, 24, 60, 8, 9, 16, 27};
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const Presentation p = parse_presentation(battery[k]);
    CAPTURE(battery[k]);
    std::optional<EnumerationResult> first;
    for (Strategy s : kStrategies) {
      const auto r = run(p, s);
      REQUIRE(r.completed());
      CHECK(r.index == orders[k]);
      if (!first) {
        first = r;
        continue;
      }
      for (std::size_t c = 0; c < r.index; ++c) {
        for (const Generator& g : p.generators()) {
          CHECK(r.table->act(c, Letter{g, 1}) ==
                first->table->act(c, Letter{g, 1}));
        }
      }
    }
  }
}

TEST_CASE("subgroup index") {
  const Presentation s3 = parse_presentation("< r, s | r^3, s^2, (rs)^2 >");
  const auto& g = s3.generators();
  for (Strategy s : kStrategies) {
    const auto r = run(s3, s, 1000, {w("s", g)});
    REQUIRE(r.completed());
    CHECK(r.index == 3);
    CHECK(is_valid_permutation_representation(*r.table, s3, {w("s", g)}));
    CHECK(run(s3, s, 1000, {w("r", g)}).index == 2);
    CHECK(run(s3, s, 1000, {w("r", g), w("s", g)}).index == 1);
  }
  const Presentation q8 = parse_presentation("< i, j | i^4, i^2j^-2, j^-1iji >");
  CHECK(run(q8, Strategy::Felsch, 1000, {w("i", q8.generators())}).index == 2);
}

TEST_CASE("permutation action") {
  const Presentation p = parse_presentation("< a | a^3 >");
  const auto r = run(p, Strategy::HltLookahead);
  REQUIRE(r.completed());
  const auto& g = p.generators();
  const Permutation a = permutation_action(*r.table, w("a", g));
  CHECK(a.size() == 3);
  CHECK_FALSE(is_identity(a));
  // A 3-cycle: no fixed point and a^3 is the identity.
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(a[c] != c);
    CHECK(a[a[a[c]]] == c);
  }
  CHECK(is_identity(permutation_action(*r.table, w("a^3", g))));

  const Presentation s3 = parse_presentation("< r, s | r^3, s^2, (rs)^2 >");
  const auto t = run(s3, Strategy::Felsch);
  REQUIRE(t.completed());
  const auto& h = s3.generators();
  for (const Word& rel : s3.relators()) {
    CHECK(is_identity(permutation_action(*t.table, rel)));
  }
  const Permutation u = permutation_action(*t.table, w("rs^-1r", h));
  const Permutation v = permutation_action(*t.table, w("srr", h));
  const Permutation uv = permutation_action(*t.table, w("rs^-1r srr", h));
  for (std::size_t c = 0; c < uv.size(); ++c) {
    CHECK(uv[c] == v[u[c]]);
  }
}

TEST_CASE("infinite groups hit the limit, trivial groups close") {
  const Presentation free1 = parse_presentation("< a | >");
  for (Strategy s : kStrategies) {
    const auto r = run(free1, s, 500);
    CHECK(r.status == EnumerationStatus::LimitExceeded);
    CHECK_FALSE(r.table);
    CHECK(r.cosets_live_max <= 500);
  }
  const auto v = verify_trivial(free1, {Strategy::HltLookahead, 500, false});
  CHECK_FALSE(v.trivial);
  CHECK_FALSE(homology_h1(free1).is_trivial());

  const Presentation one = parse_presentation("< a | a >");
  const auto t = verify_trivial(one);
  CHECK(t.trivial);
  CHECK(t.enumeration.index == 1);
  CHECK(t.enumeration.cosets_defined_total >= 1);
}

TEST_CASE("monotone limits") {
  const Presentation p = parse_presentation("< a, b | a^2, b^3, (ab)^4 >");
  for (Strategy s : kStrategies) {
    std::size_t m = 1;
    while (!run(p, s, m).completed()) {
      ++m;
      REQUIRE(m < 5000);
    }
    for (std::size_t bigger = m; bigger < m + 40; ++bigger) {
      const auto r = run(p, s, bigger);
      REQUIRE(r.completed());
      CHECK(r.index == 24);
    }
  }
}

TEST_CASE("order is divisible by the abelianization") {
  const std::vector<std::string> battery = {
      "< a | a^12 >",
      "< a, b | a^4, b^6, [a,b] >",
      "< r, s | r^3, s^2, (rs)^2 >",
      "< i, j | i^4, i^2j^-2, j^-1iji >",
      "< a, b | a^2, b^3, (ab)^3 >",
  };
  for (const auto& text : battery) {
    const Presentation p = parse_presentation(text);
    const auto h = homology_h1(p);
    REQUIRE(h.free_rank == 0);
    BigInt ab = 1;
    for (const BigInt& t : h.torsion) ab *= t;
    const auto r = run(p, Strategy::HltLookahead);
    REQUIRE(r.completed());
    CHECK(BigInt(r.index) % ab == 0);
  }
}

TEST_CASE("bad input") {
  const Presentation p = parse_presentation("< a | a^2 >");
  EnumerationOptions o;
  o.max_cosets = 0;
  CHECK_THROWS_AS(enumerate(p, {}, o), std::invalid_argument);
  const Word stray(Generator("zz"));
  CHECK_THROWS_AS(enumerate(p, {stray}), std::invalid_argument);
  CHECK(parse_strategy("felsch") == Strategy::Felsch);
  CHECK(to_string(Strategy::HltLookahead) == "HLT-lookahead");
  CHECK_THROWS(parse_strategy("coxeter"));
}

TEST_CASE("statistics JSON") {
  const auto r = run(parse_presentation("< a | a^3 >"), Strategy::Hlt);
  const auto j = to_json(r);
  for (const char* key : {"status", "index", "cosets_defined_total",
                          "cosets_live_max", "coincidences", "strategy",
                          "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["index"] == 3);
  CHECK(j["strategy"] == "HLT");
}
