#pragma once

#include "wcx/scalar.hpp"

#include <map>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace wcx {

enum class InstanceKind { FreeModField, FreeModInt, TateHeart, AlgebraMod };

/// Finite-dimensional associative unital Q-algebra given by structure constants.
class Algebra {
 public:
  using Table = std::vector<std::vector<Vector<Rational>>>;

  /// table[i][j] holds the coordinates of e_i * e_j. Associativity and the
  /// unit laws are checked here; violations throw DomainError.
  Algebra(Table table, Vector<Rational> unit);

  /// Q[eps]/(eps^2) with basis (1, eps).
  static Algebra dual_numbers();

  int dim() const { return static_cast<int>(unit_.size()); }
  const Vector<Rational>& unit() const { return unit_; }
  const Table& table() const { return table_; }

  /// Matrix of b -> a*b.
  Matrix<Rational> left_multiplication(const Vector<Rational>& a) const;
  const Matrix<Rational>& left_multiplication(int basis_index) const { return left_[basis_index]; }
  Vector<Rational> multiply(const Vector<Rational>& a, const Vector<Rational>& b) const;
  bool is_unit(const Vector<Rational>& a) const;

  friend bool operator==(const Algebra& x, const Algebra& y) {
    return x.table_ == y.table_ && x.unit_ == y.unit_;
  }

 private:
  Table table_;
  Vector<Rational> unit_;
  std::vector<Matrix<Rational>> left_;
};

class Instance {
 public:
  static Instance rationals() { return Instance(InstanceKind::FreeModField, nullptr); }
  static Instance integers() { return Instance(InstanceKind::FreeModInt, nullptr); }
  static Instance tate() { return Instance(InstanceKind::TateHeart, nullptr); }
  static Instance algebra(Algebra a) {
    return Instance(InstanceKind::AlgebraMod, std::make_shared<const Algebra>(std::move(a)));
  }

  InstanceKind kind() const { return kind_; }
  bool is_tate() const { return kind_ == InstanceKind::TateHeart; }
  const Algebra& algebra() const;
  /// Scalars per generator: the algebra dimension, else 1.
  Index block_size() const { return algebra_ ? algebra_->dim() : 1; }
  std::string_view name() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.algebra_ == b.algebra_) return true;
    return a.algebra_ && b.algebra_ && *a.algebra_ == *b.algebra_;
  }

 private:
  Instance(InstanceKind k, std::shared_ptr<const Algebra> a) : kind_(k), algebra_(std::move(a)) {}
  InstanceKind kind_;
  std::shared_ptr<const Algebra> algebra_;
};

/// Throws InstanceMismatch when S is not the scalar type of the instance.
template <class S>
void require_scalar(const Instance& inst) {
  const bool int_inst = inst.kind() == InstanceKind::FreeModInt;
  if (int_inst != !is_field_v<S>)
    throw InstanceMismatch(std::string("instance '") + std::string(inst.name()) +
                           "' used with " + (is_field_v<S> ? "rational" : "integer") +
                           " scalars");
}

/// An object: an ordered list of generators. Free and algebra instances use
/// label 0 for every generator; TateHeart labels carry the twist a of L^a.
class Obj {
 public:
  Obj() = default;
  static Obj free(int rank) { return Obj(std::vector<int>(static_cast<size_t>(rank), 0)); }
  static Obj tate(std::vector<int> twists) { return Obj(std::move(twists)); }

  int size() const { return static_cast<int>(twists_.size()); }
  bool is_zero() const { return twists_.empty(); }
  const std::vector<int>& twists() const { return twists_; }
  int twist(int i) const { return twists_[i]; }

  friend bool operator==(const Obj&, const Obj&) = default;

 private:
  explicit Obj(std::vector<int> t) : twists_(std::move(t)) {}
  std::vector<int> twists_;
};

/// Scalar dimension of the underlying matrix side.
inline Index scalar_dim(const Instance& inst, const Obj& x) { return x.size() * inst.block_size(); }

/// Throws InstanceMismatch if x has twist labels outside TateHeart.
void require_object(const Instance& inst, const Obj& x);

template <class S>
struct Mor {
  Obj source;
  Obj target;
  Matrix<S> matrix;  // scalar_dim(target) x scalar_dim(source)
};

template <class S>
Mor<S> compose(const Mor<S>& g, const Mor<S>& f);

Obj direct_sum(const Instance& inst, std::span<const Obj> xs);
Obj direct_sum(const Obj& a, const Obj& b);
template <class S>
Mor<S> direct_sum(const Mor<S>& f, const Mor<S>& g);

/// Basis of Hom(a, b): row-major over (target generator, source generator),
/// then over the algebra basis.
template <class S>
std::vector<Mor<S>> hom_basis(const Instance& inst, const Obj& a, const Obj& b);
Index hom_dimension(const Instance& inst, const Obj& a, const Obj& b);
/// Coordinates of m in hom_basis(a, b).
template <class S>
Vector<S> hom_coordinates(const Instance& inst, const Obj& a, const Obj& b, const Matrix<S>& m);
template <class S>
Matrix<S> hom_element(const Instance& inst, const Obj& a, const Obj& b, const Vector<S>& coords);
/// Shape, twist orthogonality and algebra-linearity of a raw matrix.
template <class S>
bool is_morphism(const Instance& inst, const Obj& a, const Obj& b, const Matrix<S>& m);

template <class S>
Matrix<S> identity(const Instance& inst, const Obj& x) {
  return eye<S>(scalar_dim(inst, x));
}
template <class S>
Matrix<S> zero(const Instance& inst, const Obj& a, const Obj& b) {
  return zeros<S>(scalar_dim(inst, b), scalar_dim(inst, a));
}

/// A generator-to-generator entry (block_size square) is a unit of End(generator).
template <class S>
bool is_invertible_entry(const Instance& inst, const Matrix<S>& block);
template <class S>
Matrix<S> invert_entry(const Instance& inst, const Matrix<S>& block);

/// L^a -> L^(s-a), generator order kept. TateHeart only.
Obj dualize(const Instance& inst, const Obj& x, int s);
/// Transpose between dualized objects; reverses direction.
template <class S>
Mor<S> dualize(const Instance& inst, const Mor<S>& f, int s);

/// Per-twist blocks of a TateHeart morphism; cross-twist entries are zero.
std::map<int, Matrix<Rational>> tate_blocks(const Mor<Rational>& f);

}  // namespace wcx
