#pragma once

#include "wcx/complex.hpp"

#include <map>
#include <string>
#include <variant>

namespace wcx {

/// Integer Laurent polynomial in the Lefschetz class L. No zero coefficients stored.
class LaurentClass {
 public:
  LaurentClass() = default;
  explicit LaurentClass(std::map<int, Integer> coeffs);
  static LaurentClass monomial(int exponent, Integer coeff = 1);
  static LaurentClass constant(Integer c) { return monomial(0, std::move(c)); }
  /// L - 1
  static LaurentClass lefschetz_minus_one();

  const std::map<int, Integer>& coeffs() const { return coeffs_; }
  Integer coeff(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const { return coeffs_.begin()->first; }
  int max_exponent() const { return coeffs_.rbegin()->first; }
  Integer at_one() const;
  LaurentClass pow(int n) const;

  LaurentClass& operator+=(const LaurentClass& o);
  LaurentClass& operator-=(const LaurentClass& o);
  friend LaurentClass operator+(LaurentClass a, const LaurentClass& b) { return a += b; }
  friend LaurentClass operator-(LaurentClass a, const LaurentClass& b) { return a -= b; }
  friend LaurentClass operator-(const LaurentClass& a) { return LaurentClass() - a; }
  friend LaurentClass operator*(const LaurentClass& a, const LaurentClass& b);
  friend LaurentClass operator*(const Integer& c, const LaurentClass& a);
  friend bool operator==(const LaurentClass&, const LaurentClass&) = default;

 private:
  std::map<int, Integer> coeffs_;
};

/// 1 + L + ... + L^n (zero for n < 0).
LaurentClass geometric_sum(int n);

/// Ascending exponents; constant term bare, others `c*L^a`, joined by " + ".
std::string to_string(const LaurentClass& p);

struct RankClass {
  Integer rank;
  friend bool operator==(const RankClass&, const RankClass&) = default;
};

using K0Class = std::variant<RankClass, LaurentClass>;

K0Class class_of(const Instance& inst, const Obj& x);
template <class S>
K0Class euler_char(const Complex<S>& c);
/// L^a -> L^(s-a). DomainError on rank classes.
K0Class dual_class(const K0Class& c, int s);
LaurentClass dual_class(const LaurentClass& c, int s);

K0Class operator+(const K0Class& a, const K0Class& b);
K0Class operator-(const K0Class& a, const K0Class& b);
K0Class operator-(const K0Class& a);
bool is_zero(const K0Class& c);
std::string to_string(const K0Class& c);

}  // namespace wcx
