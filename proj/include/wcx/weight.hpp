#pragma once

#include "wcx/complex.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wcx {

/// Weights of a complex under weight(term in degree k) = -k, read on the minimal model.
struct WeightWindow {
  bool zero = true;
  int lo = 0, hi = 0;

  friend bool operator==(const WeightWindow&, const WeightWindow&) = default;
};
std::string to_string(const WeightWindow& w);

template <class S>
WeightWindow weight_bounds(const Complex<S>& x);
template <class S>
bool in_w_le(const Complex<S>& x, int n);
template <class S>
bool in_w_ge(const Complex<S>& x, int n);

/// low -> whole -> high with low in w<=n and high in w>=n+1, cut out of the
/// minimal model by brutal truncation at degree -n.
template <class S>
struct WeightTriangle {
  int n = 0;
  Complex<S> low, whole, high;
  ChainMap<S> low_to_whole, whole_to_high;
  MinimizeResult<S> model;  // x -> whole
};
template <class S>
WeightTriangle<S> weight_truncate(const Complex<S>& x, int n);

/// Certificates: memberships, chain maps, and cone(low -> whole) ~ high
/// through explicit maps q, r with q r = id and r q ~ id (witness checked).
template <class S>
bool certify(const WeightTriangle<S>& t, std::string* why = nullptr);

/// Trace of one degree k, Y = m[k] for the minimal model m:
///   w<=-1 Y --alpha_minus--> w<=0 Y --beta_minus--> W^k --gamma_minus--> (w<=-1 Y)[1]
///   w>=0 Y --alpha_plus--> w>=1 Y --beta_plus--> W^k[1] --gamma_plus--> (w>=0 Y)[1]
/// and phi : w>=0 Y -> (w<=-1 Y)[1] = w<=0 (Y[1]).
template <class S>
struct WeightComplexStep {
  int k = 0;
  Complex<S> w;  // W^k concentrated in degree 0
  ChainMap<S> alpha_minus, beta_minus, gamma_minus;
  ChainMap<S> alpha_plus, beta_plus, gamma_plus;
  ChainMap<S> phi;
  MinimizeResult<S> minus_model;  // of cone(alpha_minus)
};

template <class S>
struct WeightComplexResult {
  Complex<S> wc;
  std::vector<WeightComplexStep<S>> steps;
  /// The three expressions for d^k, as degree-0 components:
  /// beta_-^{k+1} phi gamma_+^k[-1], beta_+^{k+1}[-1] gamma_+^k[-1], -beta_-^{k+1} gamma_-^k.
  std::map<int, std::array<Matrix<S>, 3>> routes;
  MinimizeResult<S> model;
  /// Degreewise isomorphism wc -> model.minimal and its inverse.
  ChainMap<S> compare, compare_inv;
  /// wc -> x and x -> wc with from o to = id exactly, to o from ~ id via `witness`.
  ChainMap<S> to, from;
  HomotopyWitness<S> witness;
};

template <class S>
WeightComplexResult<S> weight_complex(const Complex<S>& x);
/// Sign law, route agreement and d o d = 0 on a result.
template <class S>
bool check_sign_law(const WeightComplexResult<S>& r, std::string* why = nullptr);
/// compare is a degreewise isomorphism of complexes, from o to = id, and the
/// witness certifies to o from ~ id on the input.
template <class S>
bool check_equivalence(const WeightComplexResult<S>& r, const Complex<S>& x, std::string* why = nullptr);

template <class S>
ChainMap<S> weight_complex_of_map(const ChainMap<S>& f);

struct AxiomFailure {
  std::string axiom;
  std::uint64_t sample = 0;
  std::string message;
  /// Offending complexes in the file format, so each case re-runs in isolation.
  std::vector<std::string> data;
};

struct AxiomReport {
  std::string instance;
  std::uint64_t seed = 0;
  int samples = 0;
  std::map<std::string, int> passed;
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
};

AxiomReport verify_axioms(const Instance& inst, int samples, std::uint64_t seed);

/// One sample of verify_axioms, appended to `report`.
template <class S>
void verify_axioms_sample(const Instance& inst, std::uint64_t seed, std::uint64_t index, AxiomReport& report);

struct DualityReport {
  WeightWindow window, dual_window;
  bool ok = false;
};
template <class S>
DualityReport weight_reversal_under_duality(const Complex<S>& x, int s);

}  // namespace wcx
