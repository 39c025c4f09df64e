#include <numeric>
#include <random>

#include "doctest.h"
#include "fpverify/abelianize.hpp"
#include "fpverify/corpus.hpp"
#include "fpverify/presentation.hpp"
#include "fpverify/smith.hpp"

using namespace fpv;

namespace {

using Int = long long;
using Small = Matrix<Int>;

IntegerMatrix to_big(const Small& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(i, j) = BigInt(m(i, j));
    }
  }
  return out;
}

Int det(std::vector<std::vector<Int>> a) {
  // Laplace expansion; k <= 5 keeps this cheap and exact.
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Int total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(row);
    }
    const Int term = a[0][c] * det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start,
             std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors; the product of the first k invariant factors.
Int minor_gcd(const Small& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  subsets(static_cast<std::size_t>(m.rows()), k, 0, cur, rows);
  subsets(static_cast<std::size_t>(m.cols()), k, 0, cur, cols);
  Int g = 0;
  for (const auto& r : rows) {
    for (const auto& c : cols) {
      std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          sub[i][j] = m(static_cast<Eigen::Index>(r[i]),
                        static_cast<Eigen::Index>(c[j]));
        }
      }
      g = std::gcd(g, det(sub));
    }
  }
  return g;
}

Small random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::bernoulli_distribution sparse(0.3);
  Small m(dim(rng), dim(rng));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = sparse(rng) ? 0 : entry(rng);
    }
  }
  return m;
}

// Eigen's product kernels do not instantiate for cpp_int; multiply by hand.
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      BigInt sum = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        sum += a(i, k) * b(k, j);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

std::vector<BigInt> diagonal_of(const Small& m) {
  return smith_normal_form(to_big(m)).diagonal;
}

Small from_rows(std::initializer_list<std::initializer_list<Int>> rows) {
  Small m(static_cast<Eigen::Index>(rows.size()),
          static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (Int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("small worked examples") {
  CHECK(diagonal_of(from_rows({{2, 0}, {0, 3}})) ==
        std::vector<BigInt>{1, 6});
  CHECK(diagonal_of(Small::Zero(2, 3)) == std::vector<BigInt>{0, 0});
  CHECK(diagonal_of(Small::Identity(3, 3)) == std::vector<BigInt>{1, 1, 1});
  CHECK(smith_normal_form(to_big(Small::Zero(2, 3))).rank == 0);
}

TEST_CASE("1000 random matrices against the minor-gcd oracle") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const Small m = random_matrix(rng);
    CAPTURE(m);
    const auto snf = smith_normal_form(to_big(m), true);
    const auto k_max = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
    REQUIRE(snf.diagonal.size() == k_max);

    BigInt product = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
      product *= snf.diagonal[k - 1];
      REQUIRE(product == BigInt(minor_gcd(m, k)));
    }
    // Nonnegative with the divisibility chain.
    for (std::size_t k = 0; k < k_max; ++k) {
      REQUIRE(snf.diagonal[k] >= 0);
      REQUIRE((k < snf.rank) == (snf.diagonal[k] != 0));
      if (k + 1 < snf.rank) {
        REQUIRE(snf.diagonal[k + 1] % snf.diagonal[k] == 0);
      }
    }
    // U A V == D.
    const IntegerMatrix prod = multiply(multiply(*snf.left, to_big(m)), *snf.right);
    for (Eigen::Index i = 0; i < prod.rows(); ++i) {
      for (Eigen::Index j = 0; j < prod.cols(); ++j) {
        const BigInt want =
            i == j ? snf.diagonal[static_cast<std::size_t>(i)] : BigInt(0);
        REQUIRE(prod(i, j) == want);
      }
    }
  }
}

TEST_CASE("invariance under swaps and sign flips") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Small m = random_matrix(rng);
    Small t = m;
    std::uniform_int_distribution<Eigen::Index> r(0, m.rows() - 1);
    std::uniform_int_distribution<Eigen::Index> c(0, m.cols() - 1);
    t.row(r(rng)).swap(t.row(r(rng)));
    t.col(c(rng)).swap(t.col(c(rng)));
    t.row(r(rng)) *= -1;
    t.col(c(rng)) *= -1;
    CHECK(diagonal_of(t) == diagonal_of(m));
    CHECK(diagonal_of(Small(m.transpose())) == diagonal_of(m));
  }
}

TEST_CASE("fixed-width scalars agree with big integers") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Small m = random_matrix(rng);
    const auto small = smith_normal_form(m).diagonal;
    const auto big = diagonal_of(m);
    REQUIRE(small.size() == big.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      CHECK(BigInt(small[i]) == big[i]);
    }
  }
}

TEST_CASE("no overflow on large entries") {
  IntegerMatrix m(2, 2);
  const BigInt huge = BigInt(1) << 200;
  m << huge, BigInt(0), BigInt(0), huge * 3;
  const auto snf = smith_normal_form(m);
  CHECK(snf.diagonal[0] == huge);
  CHECK(snf.diagonal[1] == huge * 3);
}

TEST_CASE("row lattice solving") {
  const IntegerMatrix m = to_big(from_rows({{2, 0}, {0, 3}}));
  const auto x = solve_row_lattice(m, std::vector<BigInt>{4, 9});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(solve_row_lattice(m, std::vector<BigInt>{1, 0}));
}

TEST_CASE("first homology") {
  const auto e0 = homology_h1(load_scenario("pi1-E0-tilde").presentation);
  CHECK(e0.free_rank == 2);
  CHECK(e0.torsion.empty());
  CHECK(to_string(e0) == "Z^2");
  CHECK(homology_h1(load_scenario("pi1-N-reduced").presentation).is_trivial());
  CHECK(homology_h1(load_scenario("pi1-N-full").presentation).is_trivial());

  const auto z2 = homology_h1(parse_presentation("< a | a^2 >"));
  CHECK(z2.free_rank == 0);
  CHECK(z2.torsion == std::vector<BigInt>{2});
  CHECK(to_json(z2).dump() == R"({"free_rank":0,"torsion":[2]})");

  const auto mixed =
      homology_h1(parse_presentation("< a, b, c | a^4, b^6, [a,c] >"));
  CHECK(mixed.free_rank == 1);
  CHECK(mixed.torsion == std::vector<BigInt>{2, 12});
  CHECK(to_string(homology_h1(parse_presentation("< a | a >"))) == "0");
}

TEST_CASE("abelian image test") {
  const Presentation p = parse_presentation("< a, b | a^2, [a,b] >");
  const auto& g = p.generators();
  CHECK(abelian_image_vanishes(p, {0}, parse_word("a^-2", g)));
  CHECK_FALSE(abelian_image_vanishes(p, {0}, parse_word("a", g)));
  CHECK_FALSE(abelian_image_vanishes(p, {0, 1}, parse_word("b", g)));
}
