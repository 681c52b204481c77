#pragma once

#include "wcx/complex.hpp"
#include "wcx/motive.hpp"

#include <cstdint>
#include <random>

namespace wcx {

/// Seeded generator; derive() gives independent reproducible streams per
/// (seed, stream, index), so samples can be regenerated in isolation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct ComplexShape {
  int min_degree = -3;
  int max_degree = 3;
  int max_width = 4;
  int max_core = 2;          // minimal pieces started per degree
  int max_contractible = 2;  // [P --1--> P] pieces in total
  int max_rank = 6;          // generators per degree
  int max_twist = 2;
};

Instance instance_by_name(std::string_view name);

template <class S>
S random_scalar(Rng& rng, int bound = 2);
/// A random element of Hom(a, b).
template <class S>
Matrix<S> random_morphism(const Instance& inst, const Obj& a, const Obj& b, Rng& rng);

template <class S>
struct Automorphism {
  Matrix<S> g, g_inv;
};
/// Product of elementary operations inside each twist, with its exact inverse.
template <class S>
Automorphism<S> random_automorphism(const Instance& inst, const Obj& x, Rng& rng);

Obj random_object(const Instance& inst, Rng& rng, int max_rank, int max_twist = 2);

/// Minimal complex: single generators plus chains of non-unit entries.
template <class S>
Complex<S> random_minimal_complex(const Instance& inst, Rng& rng, const ComplexShape& shape = {});
/// Adds contractible pieces and conjugates by random automorphisms.
template <class S>
Complex<S> random_representative(const Complex<S>& minimal, Rng& rng, const ComplexShape& shape = {});
template <class S>
Complex<S> random_complex(const Instance& inst, Rng& rng, const ComplexShape& shape = {});

/// Random integer combination of a chain-map basis.
template <class S>
ChainMap<S> random_chain_map(const Complex<S>& a, const Complex<S>& b, Rng& rng);
/// s d + d s for random s, returned with s.
template <class S>
std::pair<ChainMap<S>, HomotopyWitness<S>> random_null_homotopic(const Complex<S>& a, const Complex<S>& b,
                                                                 Rng& rng);

VarietyExpr random_expr(Rng& rng, int depth = 3);
/// A closed subvariety of x of strictly smaller dimension (x must have dim >= 1).
VarietyExpr random_closed_sub(const VarietyExpr& x, Rng& rng);
SquareSpec random_square(Rng& rng);

}  // namespace wcx
