// Smith normal form of integer matrices.
//
// Dense Eigen storage templated on the scalar type. The default scalar is an
// arbitrary-precision integer; fixed-width integers work for small inputs and
// tests. Pivoting picks the smallest nonzero absolute value in the active
// block, ties broken by row-major position.

#ifndef FPVERIFY_SMITH_HPP_
#define FPVERIFY_SMITH_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace fpv {

using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntegerMatrix = Matrix<BigInt>;

template <typename Scalar>
struct SmithForm {
  // d_1 | d_2 | ... | d_rank, followed by zeros; length min(rows, cols).
  std::vector<Scalar> diagonal;
  std::size_t rank = 0;
  // Present only when requested: left * input * right == diag(diagonal).
  std::optional<Matrix<Scalar>> left;
  std::optional<Matrix<Scalar>> right;
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

template <typename Scalar>
void add_row_multiple(Matrix<Scalar>& m, Eigen::Index dst, Eigen::Index src,
                      const Scalar& factor) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m(src, j) != Scalar(0)) {
      m(dst, j) += factor * m(src, j);
    }
  }
}

template <typename Scalar>
void add_col_multiple(Matrix<Scalar>& m, Eigen::Index dst, Eigen::Index src,
                      const Scalar& factor) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, src) != Scalar(0)) {
      m(i, dst) += factor * m(i, src);
    }
  }
}

template <typename Scalar>
void swap_rows(Matrix<Scalar>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::swap(m(a, j), m(b, j));
    }
  }
}

template <typename Scalar>
void swap_cols(Matrix<Scalar>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::swap(m(i, a), m(i, b));
    }
  }
}

// Smallest nonzero |entry| in the block [t.., t..], or nullopt if zero.
template <typename Scalar>
std::optional<std::pair<Eigen::Index, Eigen::Index>> find_pivot(
    const Matrix<Scalar>& m, Eigen::Index t) {
  std::optional<std::pair<Eigen::Index, Eigen::Index>> best;
  Scalar best_abs(0);
  for (Eigen::Index i = t; i < m.rows(); ++i) {
    for (Eigen::Index j = t; j < m.cols(); ++j) {
      if (m(i, j) == Scalar(0)) {
        continue;
      }
      Scalar a = abs_value(m(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  }
  return best;
}

}  // namespace detail

template <typename Scalar>
SmithForm<Scalar> smith_normal_form(Matrix<Scalar> a,
                                    bool keep_transforms = false) {
  using detail::abs_value;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Matrix<Scalar> u;
  Matrix<Scalar> v;
  if (keep_transforms) {
    u = Matrix<Scalar>::Identity(rows, rows);
    v = Matrix<Scalar>::Identity(cols, cols);
  }
  auto row_op = [&](Eigen::Index dst, Eigen::Index src, const Scalar& f) {
    detail::add_row_multiple(a, dst, src, f);
    if (keep_transforms) {
      detail::add_row_multiple(u, dst, src, f);
    }
  };
  auto col_op = [&](Eigen::Index dst, Eigen::Index src, const Scalar& f) {
    detail::add_col_multiple(a, dst, src, f);
    if (keep_transforms) {
      detail::add_col_multiple(v, dst, src, f);
    }
  };

  SmithForm<Scalar> result;
  const Eigen::Index diag = std::min(rows, cols);
  Eigen::Index t = 0;
  for (; t < diag; ++t) {
    auto pivot = detail::find_pivot(a, t);
    if (!pivot) {
      break;
    }
    while (true) {
      detail::swap_rows(a, t, pivot->first);
      detail::swap_cols(a, t, pivot->second);
      if (keep_transforms) {
        detail::swap_rows(u, t, pivot->first);
        detail::swap_cols(v, t, pivot->second);
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) != Scalar(0)) {
          Scalar q = a(i, t) / a(t, t);
          if (q != Scalar(0)) {
            row_op(i, t, Scalar(-q));
          }
          clean = clean && a(i, t) == Scalar(0);
        }
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) != Scalar(0)) {
          Scalar q = a(t, j) / a(t, t);
          if (q != Scalar(0)) {
            col_op(j, t, Scalar(-q));
          }
          clean = clean && a(t, j) == Scalar(0);
        }
      }
      if (clean) {
        // Enforce divisibility of the remaining block by the pivot.
        std::optional<Eigen::Index> bad_row;
        for (Eigen::Index i = t + 1; i < rows && !bad_row; ++i) {
          for (Eigen::Index j = t + 1; j < cols; ++j) {
            if (a(i, j) % a(t, t) != Scalar(0)) {
              bad_row = i;
              break;
            }
          }
        }
        if (!bad_row) {
          break;
        }
        row_op(t, *bad_row, Scalar(1));
      }
      pivot = detail::find_pivot(a, t);
    }
    if (a(t, t) < Scalar(0)) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        a(t, j) = -a(t, j);
      }
      if (keep_transforms) {
        for (Eigen::Index j = 0; j < rows; ++j) {
          u(t, j) = -u(t, j);
        }
      }
    }
  }
  result.rank = static_cast<std::size_t>(t);
  for (Eigen::Index i = 0; i < diag; ++i) {
    result.diagonal.push_back(a(i, i));
  }
  if (keep_transforms) {
    result.left = std::move(u);
    result.right = std::move(v);
  }
  return result;
}

// Solves x * m == target over the integers (target a row vector); nullopt when
// target is not in the row lattice of m.
template <typename Scalar>
std::optional<std::vector<Scalar>> solve_row_lattice(
    const Matrix<Scalar>& m, const std::vector<Scalar>& target) {
  const auto snf = smith_normal_form(m, true);
  const Matrix<Scalar>& left = *snf.left;
  const Matrix<Scalar>& right = *snf.right;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  // x m = t  <=>  (x left^-1) D = t right, with y = x left^-1.
  std::vector<Scalar> tv(static_cast<std::size_t>(cols), Scalar(0));
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      tv[static_cast<std::size_t>(j)] += target[static_cast<std::size_t>(k)] * right(k, j);
    }
  }
  std::vector<Scalar> y(static_cast<std::size_t>(rows), Scalar(0));
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Scalar& rhs = tv[static_cast<std::size_t>(j)];
    const Scalar d = static_cast<std::size_t>(j) < snf.rank
                         ? snf.diagonal[static_cast<std::size_t>(j)]
                         : Scalar(0);
    if (d == Scalar(0)) {
      if (rhs != Scalar(0)) {
        return std::nullopt;
      }
      continue;
    }
    if (rhs % d != Scalar(0)) {
      return std::nullopt;
    }
    y[static_cast<std::size_t>(j)] = rhs / d;
  }
  std::vector<Scalar> x(static_cast<std::size_t>(rows), Scalar(0));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      x[static_cast<std::size_t>(i)] += y[static_cast<std::size_t>(k)] * left(k, i);
    }
  }
  return x;
}

}  // namespace fpv

#endif  // FPVERIFY_SMITH_HPP_
