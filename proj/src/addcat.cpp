#include "wcx/addcat.hpp"

#include "wcx/exactlinalg.hpp"

#include <set>

namespace wcx {

Algebra::Algebra(Table table, Vector<Rational> unit) : table_(std::move(table)), unit_(std::move(unit)) {
  const int n = dim();
  if (n == 0) throw DomainError("algebra of dimension 0");
  if (static_cast<int>(table_.size()) != n) throw DomainError("structure table has wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw DomainError("structure table has wrong size");
    for (const auto& v : row)
      if (v.size() != n) throw DomainError("structure constant vector has wrong size");
  }
  left_.assign(n, Matrix<Rational>::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) left_[i].col(j) = table_[i][j];

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vector<Rational> ek = Vector<Rational>::Unit(n, k);
        // (e_i e_j) e_k against e_i (e_j e_k)
        if (left_multiplication(table_[i][j]) * ek != left_[i] * table_[j][k])
          throw DomainError("structure constants are not associative");
      }
  for (int j = 0; j < n; ++j) {
    const Vector<Rational> ej = Vector<Rational>::Unit(n, j);
    if (multiply(unit_, ej) != ej || multiply(ej, unit_) != ej)
      throw DomainError("unit vector is not a two-sided unit");
  }
}

Algebra Algebra::dual_numbers() {
  Vector<Rational> one(2), eps(2), zero(2);
  one << 1, 0;
  eps << 0, 1;
  zero << 0, 0;
  return Algebra({{one, eps}, {eps, zero}}, one);
}

Matrix<Rational> Algebra::left_multiplication(const Vector<Rational>& a) const {
  Matrix<Rational> l = Matrix<Rational>::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (a(i) != 0) l += a(i) * left_[i];
  return l;
}

Vector<Rational> Algebra::multiply(const Vector<Rational>& a, const Vector<Rational>& b) const {
  return left_multiplication(a) * b;
}

bool Algebra::is_unit(const Vector<Rational>& a) const {
  return rank(left_multiplication(a)) == dim();
}

const Algebra& Instance::algebra() const {
  if (!algebra_) throw InstanceMismatch("instance has no algebra");
  return *algebra_;
}

std::string_view Instance::name() const {
  switch (kind_) {
    case InstanceKind::FreeModField: return "q";
    case InstanceKind::FreeModInt: return "z";
    case InstanceKind::TateHeart: return "tate";
    case InstanceKind::AlgebraMod: return "algebra";
  }
  return "?";
}

void require_object(const Instance& inst, const Obj& x) {
  if (inst.is_tate()) return;
  for (int t : x.twists())
    if (t != 0) throw InstanceMismatch("twisted generator in non-Tate instance");
}

template <class S>
Mor<S> compose(const Mor<S>& g, const Mor<S>& f) {
  if (!(f.target == g.source) || g.matrix.cols() != f.matrix.rows())
    throw ShapeError("compose: target of f differs from source of g");
  return {f.source, g.target, g.matrix * f.matrix};
}

Obj direct_sum(const Obj& a, const Obj& b) {
  std::vector<int> t = a.twists();
  t.insert(t.end(), b.twists().begin(), b.twists().end());
  return Obj::tate(std::move(t));
}

Obj direct_sum(const Instance& inst, std::span<const Obj> xs) {
  Obj r;
  for (const auto& x : xs) {
    require_object(inst, x);
    r = direct_sum(r, x);
  }
  return r;
}

template <class S>
Mor<S> direct_sum(const Mor<S>& f, const Mor<S>& g) {
  return {direct_sum(f.source, g.source), direct_sum(f.target, g.target), block_diag(f.matrix, g.matrix)};
}

Index hom_dimension(const Instance& inst, const Obj& a, const Obj& b) {
  Index n = 0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (b.twist(i) == a.twist(j)) ++n;
  return n * inst.block_size();
}

template <class S>
std::vector<Mor<S>> hom_basis(const Instance& inst, const Obj& a, const Obj& b) {
  const Index n = hom_dimension(inst, a, b);
  std::vector<Mor<S>> out;
  out.reserve(n);
  for (Index l = 0; l < n; ++l)
    out.push_back({a, b, hom_element<S>(inst, a, b, Vector<S>::Unit(n, l))});
  return out;
}

template <class S>
Vector<S> hom_coordinates(const Instance& inst, const Obj& a, const Obj& b, const Matrix<S>& m) {
  const Index bs = inst.block_size();
  Vector<S> c(hom_dimension(inst, a, b));
  Index k = 0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (b.twist(i) != a.twist(j)) continue;
      if constexpr (is_field_v<S>) {
        if (bs > 1) {
          // the entry a_ij is its block applied to the unit
          c.segment(k, bs) = m.block(i * bs, j * bs, bs, bs) * inst.algebra().unit();
          k += bs;
          continue;
        }
      }
      c(k++) = m(i, j);
    }
  return c;
}

template <class S>
Matrix<S> hom_element(const Instance& inst, const Obj& a, const Obj& b, const Vector<S>& coords) {
  const Index bs = inst.block_size();
  Matrix<S> m = zero<S>(inst, a, b);
  Index k = 0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (b.twist(i) != a.twist(j)) continue;
      if constexpr (is_field_v<S>) {
        if (bs > 1) {
          m.block(i * bs, j * bs, bs, bs) = inst.algebra().left_multiplication(Vector<S>(coords.segment(k, bs)));
          k += bs;
          continue;
        }
      }
      m(i, j) = coords(k++);
    }
  return m;
}

template <class S>
bool is_morphism(const Instance& inst, const Obj& a, const Obj& b, const Matrix<S>& m) {
  if (m.rows() != scalar_dim(inst, b) || m.cols() != scalar_dim(inst, a)) return false;
  return hom_element<S>(inst, a, b, hom_coordinates<S>(inst, a, b, m)) == m;
}

template <class S>
bool is_invertible_entry(const Instance& inst, const Matrix<S>& block) {
  if (inst.block_size() == 1) return is_unit(block(0, 0));
  return rank(block) == block.rows();
}

template <class S>
Matrix<S> invert_entry(const Instance& inst, const Matrix<S>& block) {
  if (inst.block_size() == 1) {
    Matrix<S> r(1, 1);
    r(0, 0) = S(1) / block(0, 0);
    return r;
  }
  auto inv = inverse(block);
  if (!inv) throw DomainError("entry is not invertible");
  return *inv;
}

Obj dualize(const Instance& inst, const Obj& x, int s) {
  if (!inst.is_tate()) throw DomainError("dualize is defined on TateHeart only");
  std::vector<int> t;
  t.reserve(x.size());
  for (int a : x.twists()) t.push_back(s - a);
  return Obj::tate(std::move(t));
}

template <class S>
Mor<S> dualize(const Instance& inst, const Mor<S>& f, int s) {
  return {dualize(inst, f.target, s), dualize(inst, f.source, s), f.matrix.transpose()};
}

std::map<int, Matrix<Rational>> tate_blocks(const Mor<Rational>& f) {
  std::set<int> twists(f.source.twists().begin(), f.source.twists().end());
  std::map<int, Matrix<Rational>> out;
  for (int a : twists) {
    std::vector<Index> rows, cols;
    for (int i = 0; i < f.target.size(); ++i)
      if (f.target.twist(i) == a) rows.push_back(i);
    for (int j = 0; j < f.source.size(); ++j)
      if (f.source.twist(j) == a) cols.push_back(j);
    if (rows.empty()) continue;
    Matrix<Rational> b(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) b(i, j) = f.matrix(rows[i], cols[j]);
    out.emplace(a, std::move(b));
  }
  return out;
}

#define WCX_INSTANTIATE(S)                                                                   \
  template Mor<S> compose(const Mor<S>&, const Mor<S>&);                                     \
  template Mor<S> direct_sum(const Mor<S>&, const Mor<S>&);                                  \
  template std::vector<Mor<S>> hom_basis(const Instance&, const Obj&, const Obj&);           \
  template Vector<S> hom_coordinates(const Instance&, const Obj&, const Obj&, const Matrix<S>&); \
  template Matrix<S> hom_element(const Instance&, const Obj&, const Obj&, const Vector<S>&); \
  template bool is_morphism(const Instance&, const Obj&, const Obj&, const Matrix<S>&);      \
  template bool is_invertible_entry(const Instance&, const Matrix<S>&);                      \
  template Matrix<S> invert_entry(const Instance&, const Matrix<S>&);                        \
  template Mor<S> dualize(const Instance&, const Mor<S>&, int);

WCX_INSTANTIATE(Rational)
WCX_INSTANTIATE(Integer)

}  // namespace wcx
