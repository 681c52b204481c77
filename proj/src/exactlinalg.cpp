#include "wcx/exactlinalg.hpp"

#include <algorithm>
#include <cctype>

namespace wcx {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Gauss-Jordan in place, pivoting only in columns [0, pivot_cols).
// Row operations are mirrored into *t when given.
std::vector<Index> gauss_jordan(Matrix<Rational>& m, Index pivot_cols, Matrix<Rational>* t) {
  std::vector<Index> pivots;
  std::vector<Index> nz, tnz;
  Index row = 0;
  for (Index col = 0; col < pivot_cols && row < m.rows(); ++col) {
    Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      m.row(p).swap(m.row(row));
      if (t) t->row(p).swap(t->row(row));
    }
    const Rational inv = 1 / m(row, col);
    nz.clear();
    for (Index j = col; j < m.cols(); ++j)
      if (m(row, j) != 0) {
        m(row, j) *= inv;
        nz.push_back(j);
      }
    tnz.clear();
    if (t)
      for (Index j = 0; j < t->cols(); ++j)
        if ((*t)(row, j) != 0) {
          (*t)(row, j) *= inv;
          tnz.push_back(j);
        }
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (Index j : nz) m(i, j) -= f * m(row, j);
      if (t)
        for (Index j : tnz) (*t)(i, j) -= f * (*t)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

SmithResult<Integer> smith_impl(const Matrix<Integer>& m) {
  const Index R = m.rows(), C = m.cols();
  Matrix<Integer> a = m;
  Matrix<Integer> u = eye<Integer>(R), ui = eye<Integer>(R);
  Matrix<Integer> v = eye<Integer>(C), vi = eye<Integer>(C);

  auto swap_rows = [&](Index i, Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    u.row(i).swap(u.row(j));
    ui.col(i).swap(ui.col(j));
  };
  auto swap_cols = [&](Index i, Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    v.col(i).swap(v.col(j));
    vi.row(i).swap(vi.row(j));
  };
  // row i += q * row j
  auto add_row = [&](Index i, Index j, const Integer& q) {
    a.row(i) += q * a.row(j);
    u.row(i) += q * u.row(j);
    ui.col(j) -= q * ui.col(i);
  };
  // col i += q * col j
  auto add_col = [&](Index i, Index j, const Integer& q) {
    a.col(i) += q * a.col(j);
    v.col(i) += q * v.col(j);
    vi.row(j) -= q * vi.row(i);
  };

  Index t = 0;
  for (; t < std::min(R, C); ++t) {
    Index bi = -1, bj = -1;
    for (Index j = t; j < C; ++j)
      for (Index i = t; i < R; ++i)
        if (a(i, j) != 0 && (bi < 0 || abs(a(i, j)) < abs(a(bi, bj)))) bi = i, bj = j;
    if (bi < 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    for (;;) {
      bool clean = true;
      for (Index i = t + 1; i < R; ++i)
        if (a(i, t) != 0) {
          add_row(i, t, Integer(-(a(i, t) / a(t, t))));
          if (a(i, t) != 0) clean = false;
        }
      for (Index j = t + 1; j < C; ++j)
        if (a(t, j) != 0) {
          add_col(j, t, Integer(-(a(t, j) / a(t, t))));
          if (a(t, j) != 0) clean = false;
        }
      if (!clean) {
        // a remainder is now smaller than the pivot; bring the smallest in
        Index si = t, sj = t;
        for (Index i = t + 1; i < R; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(si, sj))) si = i, sj = t;
        for (Index j = t + 1; j < C; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(si, sj))) si = t, sj = j;
        swap_rows(t, si);
        swap_cols(t, sj);
        continue;
      }
      Index ni = -1;
      for (Index i = t + 1; i < R && ni < 0; ++i)
        for (Index j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            ni = i;
            break;
          }
      if (ni < 0) break;
      add_row(t, ni, Integer(1));
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
      ui.col(t) = -ui.col(t);
    }
  }
  return {u, a, v, ui, vi, t};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  const auto slash = s.find('/');
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    std::string_view d = s.substr(slash + 1);
    if (!all_digits(d)) throw ParseError("malformed rational '" + std::string(text) + "'");
    den = Integer(std::string(d));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  // the string constructor of gmp_rational does not canonicalize
  return Rational(num) / Rational(den);
}

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) throw ParseError("malformed integer '" + std::string(text) + "'");
  return Integer(std::string(text));
}

template <class S>
RrefResult<S> rref(const Matrix<S>& m) {
  if constexpr (!is_field_v<S>) {
    throw DomainError("rref needs a field; got an integer matrix");
  } else {
    RrefResult<S> r;
    r.reduced = m;
    r.transform = eye<S>(m.rows());
    r.pivots = gauss_jordan(r.reduced, m.cols(), &r.transform);
    r.rank = static_cast<Index>(r.pivots.size());
    return r;
  }
}

template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows())
    throw ShapeError("solve: a has " + std::to_string(a.rows()) + " rows, b has " +
                     std::to_string(b.rows()));
  const Index n = a.cols(), k = b.cols();
  if constexpr (is_field_v<S>) {
    Matrix<S> aug(a.rows(), n + k);
    aug.leftCols(n) = a;
    aug.rightCols(k) = b;
    const auto piv = gauss_jordan(aug, n, nullptr);
    const Index r = static_cast<Index>(piv.size());
    for (Index i = r; i < aug.rows(); ++i)
      for (Index j = n; j < n + k; ++j)
        if (aug(i, j) != 0) return std::nullopt;
    Matrix<S> x = Matrix<S>::Zero(n, k);
    for (Index i = 0; i < r; ++i) x.row(piv[i]) = aug.block(i, n, 1, k);
    return x;
  } else {
    const auto snf = smith_impl(a);
    const Matrix<S> ub = snf.u * b;
    Matrix<S> y = Matrix<S>::Zero(n, k);
    for (Index i = 0; i < ub.rows(); ++i)
      for (Index j = 0; j < k; ++j) {
        if (i < snf.rank) {
          if (ub(i, j) % snf.d(i, i) != 0) return std::nullopt;
          y(i, j) = ub(i, j) / snf.d(i, i);
        } else if (ub(i, j) != 0) {
          return std::nullopt;
        }
      }
    return Matrix<S>(snf.v * y);
  }
}

template <class S>
SmithResult<S> smith_normal_form(const Matrix<S>& m) {
  if constexpr (is_field_v<S>)
    throw DomainError("smith_normal_form needs integer input");
  else
    return smith_impl(m);
}

template <class S>
Matrix<S> kernel_basis(const Matrix<S>& m) {
  if constexpr (!is_field_v<S>) {
    throw DomainError("kernel_basis needs a field; use lattice_kernel_basis over Z");
  } else {
    Matrix<S> r = m;
    const auto piv = gauss_jordan(r, m.cols(), nullptr);
    std::vector<bool> is_pivot(m.cols(), false);
    for (Index c : piv) is_pivot[c] = true;
    Matrix<S> k = Matrix<S>::Zero(m.cols(), m.cols() - static_cast<Index>(piv.size()));
    Index col = 0;
    for (Index f = 0; f < m.cols(); ++f) {
      if (is_pivot[f]) continue;
      k(f, col) = 1;
      for (Index i = 0; i < static_cast<Index>(piv.size()); ++i) k(piv[i], col) = -r(i, f);
      ++col;
    }
    return k;
  }
}

Matrix<Integer> lattice_kernel_basis(const Matrix<Integer>& m) {
  const auto snf = smith_impl(m);
  return snf.v.rightCols(m.cols() - snf.rank);
}

template <class S>
Index rank(const Matrix<S>& m) {
  if constexpr (is_field_v<S>) {
    Matrix<S> r = m;
    return static_cast<Index>(gauss_jordan(r, m.cols(), nullptr).size());
  } else {
    return smith_impl(m).rank;
  }
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  if constexpr (is_field_v<S>) {
    Matrix<S> r = m, t = eye<S>(n);
    if (static_cast<Index>(gauss_jordan(r, n, &t).size()) != n) return std::nullopt;
    return t;
  } else {
    const auto snf = smith_impl(m);
    if (snf.rank != n) return std::nullopt;
    for (Index i = 0; i < n; ++i)
      if (snf.d(i, i) != 1) return std::nullopt;
    return Matrix<S>(snf.v * snf.u);
  }
}

#define WCX_INSTANTIATE(S)                                                  \
  template RrefResult<S> rref(const Matrix<S>&);                            \
  template std::optional<Matrix<S>> solve(const Matrix<S>&, const Matrix<S>&); \
  template SmithResult<S> smith_normal_form(const Matrix<S>&);              \
  template Matrix<S> kernel_basis(const Matrix<S>&);                        \
  template Index rank(const Matrix<S>&);                                    \
  template std::optional<Matrix<S>> inverse(const Matrix<S>&);

WCX_INSTANTIATE(Rational)
WCX_INSTANTIATE(Integer)

}  // namespace wcx
