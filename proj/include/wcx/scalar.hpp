#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace wcx {

namespace mp = boost::multiprecision;

// Expression templates off: Eigen needs plain value semantics from its scalars.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

template <class S>
inline constexpr bool is_field_v = std::is_same_v<S, Rational>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InstanceMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MalformedExpr : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NegativeCodim : MalformedExpr {
  using MalformedExpr::MalformedExpr;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "a" or "a/b" (optional leading '-'), returning lowest terms.
/// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);
/// Parses an optionally signed decimal integer.
Integer parse_integer(std::string_view text);

template <class S>
S parse_scalar(std::string_view text) {
  if constexpr (is_field_v<S>)
    return parse_rational(text);
  else
    return parse_integer(text);
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

template <class S>
bool is_unit(const S& x) {
  if constexpr (is_field_v<S>)
    return x != 0;
  else
    return x == 1 || x == -1;
}

template <class S>
bool is_zero(const Matrix<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <class S>
Matrix<S> zeros(Index rows, Index cols) {
  return Matrix<S>::Zero(rows, cols);
}

template <class S>
Matrix<S> eye(Index n) {
  return Matrix<S>::Identity(n, n);
}

/// Copy of m without rows [start, start+count).
template <class S>
Matrix<S> remove_rows(const Matrix<S>& m, Index start, Index count) {
  Matrix<S> r(m.rows() - count, m.cols());
  r.topRows(start) = m.topRows(start);
  r.bottomRows(m.rows() - start - count) = m.bottomRows(m.rows() - start - count);
  return r;
}

template <class S>
Matrix<S> remove_cols(const Matrix<S>& m, Index start, Index count) {
  Matrix<S> r(m.rows(), m.cols() - count);
  r.leftCols(start) = m.leftCols(start);
  r.rightCols(m.cols() - start - count) = m.rightCols(m.cols() - start - count);
  return r;
}

/// [[a, 0], [0, b]]
template <class S>
Matrix<S> block_diag(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> r = Matrix<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

}  // namespace wcx
