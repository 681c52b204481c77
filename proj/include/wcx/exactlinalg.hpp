#pragma once

#include "wcx/scalar.hpp"

#include <optional>
#include <vector>

namespace wcx {

template <class S>
struct RrefResult {
  Matrix<S> reduced;
  Index rank = 0;
  Matrix<S> transform;  // transform * m == reduced
  std::vector<Index> pivots;
};

/// Reduced row-echelon form; pivots are the first nonzero entry in column order.
/// Rationals only, throws DomainError for integer matrices.
template <class S>
RrefResult<S> rref(const Matrix<S>& m);

/// Some x with a * x == b in the scalar domain, or nothing.
/// Over the integers solvability is decided through the Smith form.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b);

template <class S>
struct SmithResult {
  Matrix<S> u, d, v;  // u * m * v == d
  Matrix<S> u_inv, v_inv;
  Index rank = 0;
};

/// Integers only, throws DomainError for rationals.
template <class S>
SmithResult<S> smith_normal_form(const Matrix<S>& m);

/// Columns span the nullspace. Rationals only.
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& m);

/// Basis of the integer kernel lattice {x in Z^n : m x = 0}; saturated.
Matrix<Integer> lattice_kernel_basis(const Matrix<Integer>& m);

/// Rank over the fraction field.
template <class S>
Index rank(const Matrix<S>& m);

/// Two-sided inverse in the domain (unimodular over Z), if any.
template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m);

}  // namespace wcx
