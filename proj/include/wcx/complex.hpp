#pragma once

#include "wcx/addcat.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wcx {

/// Bounded cochain complex: d^n maps term n to term n+1.
/// Zero terms and zero differentials are not stored, so equality is equality of data.
template <class S>
class Complex {
 public:
  explicit Complex(Instance inst = default_instance());
  /// Shapes are checked (ShapeError); d o d == 0 is not, see validate().
  Complex(Instance inst, std::map<int, Obj> terms, std::map<int, Matrix<S>> diffs);

  const Instance& instance() const { return inst_; }
  const Obj& term(int n) const;
  Matrix<S> d(int n) const;
  Index dim(int n) const { return scalar_dim(inst_, term(n)); }
  const std::map<int, Obj>& terms() const { return terms_; }
  const std::map<int, Matrix<S>>& diffs() const { return diffs_; }

  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }
  std::set<int> support() const;

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.inst_ == b.inst_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
  }

 private:
  static Instance default_instance() {
    return is_field_v<S> ? Instance::rationals() : Instance::integers();
  }
  Instance inst_;
  std::map<int, Obj> terms_;
  std::map<int, Matrix<S>> diffs_;
};

template <class S>
struct ChainMap {
  ChainMap() = default;
  ChainMap(Complex<S> src, Complex<S> tgt, std::map<int, Matrix<S>> comps = {});

  Complex<S> source;
  Complex<S> target;

  /// f^n : source^n -> target^n (zero when absent).
  Matrix<S> operator()(int n) const;
  const std::map<int, Matrix<S>>& components() const { return comps_; }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    return a.source == b.source && a.target == b.target && a.comps_ == b.comps_;
  }

 private:
  std::map<int, Matrix<S>> comps_;
};

enum class WitnessKind { Homotopy, QuasiHomotopy };

/// f^k - g^k = s^{k+1} d_A^k + d_B^{k-1} t^k, with t = s for Homotopy.
/// s[k], t[k] : A^k -> B^{k-1}.
template <class S>
struct HomotopyWitness {
  WitnessKind kind = WitnessKind::Homotopy;
  std::map<int, Matrix<S>> s;
  std::map<int, Matrix<S>> t;  // unused for Homotopy
};

template <class S>
struct GroupPresentation {
  Index free_rank = 0;
  std::vector<Integer> invariant_factors;  // each > 1, successive divisibility
  /// One representative per torsion factor (same order), then one per free generator.
  std::vector<ChainMap<S>> generators;
};

struct ValidationReport {
  bool valid = true;
  std::optional<int> failing_degree;
  std::string message;
  std::set<int> support;

  /// Membership in C^P: support within P.
  bool supported_in(const std::set<int>& p) const;
};

template <class S>
ValidationReport validate(const Complex<S>& c);

template <class S>
Complex<S> shift(const Complex<S>& c, int n);
/// (f[n])^k = f^{k+n}, no sign.
template <class S>
ChainMap<S> shift(const ChainMap<S>& f, int n);

template <class S>
Complex<S> direct_sum(const Complex<S>& a, const Complex<S>& b);
template <class S>
ChainMap<S> direct_sum(const ChainMap<S>& f, const ChainMap<S>& g);

/// Subcomplex of degrees >= k.
template <class S>
Complex<S> brutal_ge(const Complex<S>& c, int k);
/// Quotient complex of degrees <= k.
template <class S>
Complex<S> brutal_le(const Complex<S>& c, int k);
/// Identity components on a common degree range; source and target must agree there.
template <class S>
ChainMap<S> canonical_map(const Complex<S>& source, const Complex<S>& target);

template <class S>
ChainMap<S> identity(const Complex<S>& c);
template <class S>
ChainMap<S> zero_map(const Complex<S>& a, const Complex<S>& b);
template <class S>
ChainMap<S> compose(const ChainMap<S>& g, const ChainMap<S>& f);
template <class S>
ChainMap<S> operator+(const ChainMap<S>& f, const ChainMap<S>& g);
template <class S>
ChainMap<S> operator-(const ChainMap<S>& f, const ChainMap<S>& g);
template <class S>
ChainMap<S> operator-(const ChainMap<S>& f);
template <class S>
ChainMap<S> operator*(const S& c, const ChainMap<S>& f);

/// First degree n with d_B^n f^n != f^{n+1} d_A^n, if any; also admissibility of components.
template <class S>
std::optional<int> chain_map_defect(const ChainMap<S>& f);
template <class S>
bool is_chain_map(const ChainMap<S>& f) {
  return !chain_map_defect(f);
}

template <class S>
bool witness_holds(const ChainMap<S>& f, const ChainMap<S>& g, const HomotopyWitness<S>& w);

/// cone^k = A^{k+1} + B^k, d = [[-d_A^{k+1}, 0], [f^{k+1}, d_B^k]].
template <class S>
struct ConeResult {
  Complex<S> cone;
  ChainMap<S> inclusion;   // B -> cone, [0; 1]
  ChainMap<S> projection;  // cone -> A[1], [1, 0]
};
template <class S>
ConeResult<S> cone(const ChainMap<S>& f);

template <class S>
std::optional<HomotopyWitness<S>> is_homotopic(const ChainMap<S>& f, const ChainMap<S>& g);
template <class S>
std::optional<HomotopyWitness<S>> is_quasi_homotopic(const ChainMap<S>& f, const ChainMap<S>& g);

template <class S>
GroupPresentation<S> hom_group_K(const Complex<S>& a, const Complex<S>& b);
template <class S>
GroupPresentation<S> hom_group_QK(const Complex<S>& a, const Complex<S>& b);

/// Basis of the chain maps a -> b (of the kernel lattice over Z).
template <class S>
std::vector<ChainMap<S>> chain_map_basis(const Complex<S>& a, const Complex<S>& b);

/// Generators of QHt(a, b) as (u, w) with w a quasi-homotopy witness of u ~ 0.
template <class S>
std::vector<std::pair<ChainMap<S>, HomotopyWitness<S>>> quasi_null_generators(const Complex<S>& a,
                                                                                const Complex<S>& b);

template <class S>
struct MinimizeResult {
  Complex<S> minimal;
  ChainMap<S> p;  // c -> minimal
  ChainMap<S> i;  // minimal -> c
  HomotopyWitness<S> h;  // i o p ~ id_c
  /// All differentials vanish. Always true over a field-valued semisimple
  /// instance; over Z a non-unit differential may remain.
  bool field_minimal = true;
};

template <class S>
MinimizeResult<S> minimize(const Complex<S>& c);

/// term^k = dualize(term^{-k}, s), d^k = (d^{-k-1})^T. TateHeart only.
template <class S>
Complex<S> dual_complex(const Complex<S>& c, int s);
/// (f^dual)^k = (f^{-k})^T : dual(B) -> dual(A).
template <class S>
ChainMap<S> dual_map(const ChainMap<S>& f, int s);

}  // namespace wcx
