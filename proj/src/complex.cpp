#include "wcx/complex.hpp"

#include "wcx/exactlinalg.hpp"

#include <algorithm>

namespace wcx {

namespace {

template <class S>
Matrix<S> lookup(const std::map<int, Matrix<S>>& m, int k, Index rows, Index cols) {
  auto it = m.find(k);
  if (it == m.end()) return zeros<S>(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw ShapeError("component in degree " + std::to_string(k) + " has shape " +
                     std::to_string(it->second.rows()) + "x" + std::to_string(it->second.cols()) +
                     ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  return it->second;
}

std::set<int> degrees_of(const std::map<int, Obj>& a, const std::map<int, Obj>& b) {
  std::set<int> out;
  for (const auto& [k, x] : a) out.insert(k);
  for (const auto& [k, x] : b) out.insert(k);
  return out;
}

// Hom^p(A, B) = prod_k Hom(A^k, B^{k+p}), blocks in ascending k.
template <class S>
class GradedHom {
 public:
  struct Block {
    int degree;
    Index offset;
    Index dim;
    Obj src, tgt;
  };

  GradedHom(const Complex<S>& a, const Complex<S>& b, int p) : inst_(a.instance()) {
    for (const auto& [k, x] : a.terms()) {
      const Obj& y = b.term(k + p);
      const Index n = hom_dimension(inst_, x, y);
      if (n == 0) continue;
      index_[k] = blocks_.size();
      blocks_.push_back({k, size_, n, x, y});
      size_ += n;
    }
  }

  Index size() const { return size_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block* find(int k) const {
    auto it = index_.find(k);
    return it == index_.end() ? nullptr : &blocks_[it->second];
  }

  Vector<S> coords(const std::map<int, Matrix<S>>& comps) const {
    Vector<S> v = Vector<S>::Zero(size_);
    for (const auto& b : blocks_) {
      auto it = comps.find(b.degree);
      if (it != comps.end()) v.segment(b.offset, b.dim) = hom_coordinates<S>(inst_, b.src, b.tgt, it->second);
    }
    return v;
  }

  std::map<int, Matrix<S>> element(const Vector<S>& v) const {
    std::map<int, Matrix<S>> out;
    for (const auto& b : blocks_) {
      Vector<S> seg = v.segment(b.offset, b.dim);
      if (is_zero<S>(Matrix<S>(seg))) continue;
      out[b.degree] = hom_element<S>(inst_, b.src, b.tgt, seg);
    }
    return out;
  }

  Matrix<S> basis_element(const Block& b, Index l) const {
    return hom_element<S>(inst_, b.src, b.tgt, Vector<S>::Unit(b.dim, l));
  }

  // adds coordinates of m (a morphism in block of degree k) into column col of out
  void accumulate(Matrix<S>& out, Index col, int k, const Matrix<S>& m, const S& sign) const {
    const Block* b = find(k);
    if (!b) return;  // hom space is zero, so m is zero
    Vector<S> c = hom_coordinates<S>(inst_, b->src, b->tgt, m);
    for (Index i = 0; i < b->dim; ++i)
      if (c(i) != 0) out(b->offset + i, col) += sign * c(i);
  }

 private:
  Instance inst_;
  std::vector<Block> blocks_;
  std::map<int, size_t> index_;
  Index size_ = 0;
};

// s in Hom^{-1}(A,B) |-> (s^{k+1} d_A^k)_k and (d_B^{k-1} s^k)_k, as maps into Hom^0.
template <class S>
std::pair<Matrix<S>, Matrix<S>> homotopy_operators(const Complex<S>& a, const Complex<S>& b,
                                                   const GradedHom<S>& hm1, const GradedHom<S>& h0) {
  Matrix<S> sop = Matrix<S>::Zero(h0.size(), hm1.size());
  Matrix<S> top = Matrix<S>::Zero(h0.size(), hm1.size());
  const S one(1);
  for (const auto& blk : hm1.blocks()) {
    const int k = blk.degree;
    const Matrix<S> da = a.d(k - 1);  // A^{k-1} -> A^k
    const Matrix<S> db = b.d(k - 1);  // B^{k-1} -> B^k
    for (Index l = 0; l < blk.dim; ++l) {
      const Matrix<S> e = hm1.basis_element(blk, l);
      const Index col = blk.offset + l;
      if (da.size() > 0) h0.accumulate(sop, col, k - 1, Matrix<S>(e * da), one);
      if (db.size() > 0) h0.accumulate(top, col, k, Matrix<S>(db * e), one);
    }
  }
  return {sop, top};
}

// f in Hom^0 |-> (d_B^k f^k - f^{k+1} d_A^k)_k in Hom^1.
template <class S>
Matrix<S> chain_defect_operator(const Complex<S>& a, const Complex<S>& b, const GradedHom<S>& h0,
                                const GradedHom<S>& h1) {
  Matrix<S> m = Matrix<S>::Zero(h1.size(), h0.size());
  const S one(1), minus(-1);
  for (const auto& blk : h0.blocks()) {
    const int k = blk.degree;
    const Matrix<S> db = b.d(k);
    const Matrix<S> da = a.d(k - 1);
    for (Index l = 0; l < blk.dim; ++l) {
      const Matrix<S> e = h0.basis_element(blk, l);
      const Index col = blk.offset + l;
      if (db.size() > 0) h1.accumulate(m, col, k, Matrix<S>(db * e), one);
      if (da.size() > 0) h1.accumulate(m, col, k - 1, Matrix<S>(e * da), minus);
    }
  }
  return m;
}

// Quotient of the lattice/space spanned by Z-columns (the cycles, given through the
// defect operator dz) by the span of g.
template <class S>
GroupPresentation<S> present(const Complex<S>& a, const Complex<S>& b, const GradedHom<S>& h0,
                             const Matrix<S>& dz, const Matrix<S>& g) {
  GroupPresentation<S> out;
  auto to_map = [&](const Vector<S>& v) { return ChainMap<S>(a, b, h0.element(v)); };
  if constexpr (is_field_v<S>) {
    const Matrix<S> z = kernel_basis(dz);
    Matrix<S> aug(h0.size(), g.cols() + z.cols());
    aug.leftCols(g.cols()) = g;
    aug.rightCols(z.cols()) = z;
    const auto r = rref(aug);
    for (Index p : r.pivots)
      if (p >= g.cols()) out.generators.push_back(to_map(z.col(p - g.cols())));
    out.free_rank = static_cast<Index>(out.generators.size());
  } else {
    const auto snf = smith_normal_form(dz);
    const Index n = h0.size(), zr = n - snf.rank;
    const Matrix<S> z = snf.v.rightCols(zr);
    const Matrix<S> c = (snf.v_inv * g).bottomRows(zr);
    const auto s2 = smith_normal_form(c);
    const Matrix<S> gens = z * s2.u_inv;
    for (Index i = 0; i < s2.rank; ++i)
      if (s2.d(i, i) != 1) {
        out.invariant_factors.push_back(s2.d(i, i));
        out.generators.push_back(to_map(gens.col(i)));
      }
    for (Index i = s2.rank; i < zr; ++i) out.generators.push_back(to_map(gens.col(i)));
    out.free_rank = zr - s2.rank;
  }
  return out;
}

template <class S>
Matrix<S> kernel_columns(const Matrix<S>& m) {
  if constexpr (is_field_v<S>)
    return kernel_basis(m);
  else
    return lattice_kernel_basis(m);
}

template <class S>
void require_same_ends(const ChainMap<S>& f, const ChainMap<S>& g, const char* what) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw ShapeError(std::string(what) + ": chain maps have different source or target");
}

}  // namespace

// ---------------------------------------------------------------- Complex

template <class S>
Complex<S>::Complex(Instance inst) : inst_(std::move(inst)) {
  require_scalar<S>(inst_);
}

template <class S>
Complex<S>::Complex(Instance inst, std::map<int, Obj> terms, std::map<int, Matrix<S>> diffs)
    : inst_(std::move(inst)) {
  require_scalar<S>(inst_);
  for (auto& [k, x] : terms) {
    require_object(inst_, x);
    if (!x.is_zero()) terms_.emplace(k, std::move(x));
  }
  for (auto& [k, m] : diffs) {
    if (m.rows() != dim(k + 1) || m.cols() != dim(k))
      throw ShapeError("differential d^" + std::to_string(k) + " has shape " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()) + ", expected " + std::to_string(dim(k + 1)) + "x" +
                       std::to_string(dim(k)));
    if (wcx::is_zero<S>(m)) continue;
    if (!is_morphism<S>(inst_, term(k), term(k + 1), m))
      throw ShapeError("differential d^" + std::to_string(k) + " is not a morphism of the instance");
    diffs_.emplace(k, std::move(m));
  }
}

template <class S>
const Obj& Complex<S>::term(int n) const {
  static const Obj empty;
  auto it = terms_.find(n);
  return it == terms_.end() ? empty : it->second;
}

template <class S>
Matrix<S> Complex<S>::d(int n) const {
  auto it = diffs_.find(n);
  if (it != diffs_.end()) return it->second;
  return zeros<S>(dim(n + 1), dim(n));
}

template <class S>
std::set<int> Complex<S>::support() const {
  std::set<int> out;
  for (const auto& [k, x] : terms_) out.insert(k);
  return out;
}

// ---------------------------------------------------------------- ChainMap

template <class S>
ChainMap<S>::ChainMap(Complex<S> src, Complex<S> tgt, std::map<int, Matrix<S>> comps)
    : source(std::move(src)), target(std::move(tgt)) {
  if (!(source.instance() == target.instance()))
    throw InstanceMismatch("chain map between complexes of different instances");
  for (auto& [k, m] : comps) {
    if (m.rows() != target.dim(k) || m.cols() != source.dim(k))
      throw ShapeError("chain map component " + std::to_string(k) + " has wrong shape");
    if (wcx::is_zero<S>(m)) continue;
    if (!is_morphism<S>(source.instance(), source.term(k), target.term(k), m))
      throw ShapeError("chain map component " + std::to_string(k) + " is not a morphism");
    comps_.emplace(k, std::move(m));
  }
}

template <class S>
Matrix<S> ChainMap<S>::operator()(int n) const {
  auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return zeros<S>(target.dim(n), source.dim(n));
}

// ---------------------------------------------------------------- basic constructions

bool ValidationReport::supported_in(const std::set<int>& p) const {
  return std::includes(p.begin(), p.end(), support.begin(), support.end());
}

template <class S>
ValidationReport validate(const Complex<S>& c) {
  ValidationReport r;
  r.support = c.support();
  for (int k : r.support) {
    const Matrix<S> dd = c.d(k + 1) * c.d(k);
    if (!is_zero<S>(dd)) {
      r.valid = false;
      r.failing_degree = k;
      r.message = "d^" + std::to_string(k + 1) + " o d^" + std::to_string(k) + " != 0";
      return r;
    }
  }
  return r;
}

template <class S>
Complex<S> shift(const Complex<S>& c, int n) {
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (const auto& [k, x] : c.terms()) terms[k - n] = x;
  const S sign = (n % 2 == 0) ? S(1) : S(-1);
  for (const auto& [k, m] : c.diffs()) diffs[k - n] = sign * m;
  return Complex<S>(c.instance(), std::move(terms), std::move(diffs));
}

template <class S>
ChainMap<S> shift(const ChainMap<S>& f, int n) {
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, m] : f.components()) comps[k - n] = m;
  return ChainMap<S>(shift(f.source, n), shift(f.target, n), std::move(comps));
}

template <class S>
Complex<S> direct_sum(const Complex<S>& a, const Complex<S>& b) {
  if (!(a.instance() == b.instance())) throw InstanceMismatch("direct sum across instances");
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (int k : degrees_of(a.terms(), b.terms())) {
    terms[k] = direct_sum(a.term(k), b.term(k));
    diffs[k] = block_diag(a.d(k), b.d(k));
  }
  return Complex<S>(a.instance(), std::move(terms), std::move(diffs));
}

template <class S>
ChainMap<S> direct_sum(const ChainMap<S>& f, const ChainMap<S>& g) {
  std::map<int, Matrix<S>> comps;
  for (int k : degrees_of(f.source.terms(), g.source.terms())) comps[k] = block_diag(f(k), g(k));
  return ChainMap<S>(direct_sum(f.source, g.source), direct_sum(f.target, g.target), std::move(comps));
}

template <class S>
Complex<S> brutal_ge(const Complex<S>& c, int k) {
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (const auto& [n, x] : c.terms())
    if (n >= k) terms[n] = x;
  for (const auto& [n, m] : c.diffs())
    if (n >= k) diffs[n] = m;
  return Complex<S>(c.instance(), std::move(terms), std::move(diffs));
}

template <class S>
Complex<S> brutal_le(const Complex<S>& c, int k) {
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (const auto& [n, x] : c.terms())
    if (n <= k) terms[n] = x;
  for (const auto& [n, m] : c.diffs())
    if (n + 1 <= k) diffs[n] = m;
  return Complex<S>(c.instance(), std::move(terms), std::move(diffs));
}

template <class S>
ChainMap<S> canonical_map(const Complex<S>& source, const Complex<S>& target) {
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, x] : source.terms()) {
    const Obj& y = target.term(k);
    if (y.is_zero()) continue;
    if (!(x == y)) throw ShapeError("canonical_map: terms differ in degree " + std::to_string(k));
    comps[k] = identity<S>(source.instance(), x);
  }
  return ChainMap<S>(source, target, std::move(comps));
}

template <class S>
ChainMap<S> identity(const Complex<S>& c) {
  return canonical_map(c, c);
}

template <class S>
ChainMap<S> zero_map(const Complex<S>& a, const Complex<S>& b) {
  return ChainMap<S>(a, b);
}

template <class S>
ChainMap<S> compose(const ChainMap<S>& g, const ChainMap<S>& f) {
  if (!(f.target == g.source)) throw ShapeError("compose: target of f differs from source of g");
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, m] : f.components()) {
    auto it = g.components().find(k);
    if (it != g.components().end()) comps[k] = it->second * m;
  }
  return ChainMap<S>(f.source, g.target, std::move(comps));
}

template <class S>
ChainMap<S> operator+(const ChainMap<S>& f, const ChainMap<S>& g) {
  require_same_ends(f, g, "sum");
  std::map<int, Matrix<S>> comps = f.components();
  for (const auto& [k, m] : g.components()) {
    auto it = comps.find(k);
    if (it == comps.end())
      comps[k] = m;
    else
      it->second += m;
  }
  return ChainMap<S>(f.source, f.target, std::move(comps));
}

template <class S>
ChainMap<S> operator-(const ChainMap<S>& f) {
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, m] : f.components()) comps[k] = -m;
  return ChainMap<S>(f.source, f.target, std::move(comps));
}

template <class S>
ChainMap<S> operator-(const ChainMap<S>& f, const ChainMap<S>& g) {
  return f + (-g);
}

template <class S>
ChainMap<S> operator*(const S& c, const ChainMap<S>& f) {
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, m] : f.components()) comps[k] = c * m;
  return ChainMap<S>(f.source, f.target, std::move(comps));
}

template <class S>
std::optional<int> chain_map_defect(const ChainMap<S>& f) {
  for (int k : degrees_of(f.source.terms(), f.target.terms())) {
    if (!is_zero<S>(Matrix<S>(f.target.d(k) * f(k) - f(k + 1) * f.source.d(k)))) return k;
  }
  return std::nullopt;
}

template <class S>
bool witness_holds(const ChainMap<S>& f, const ChainMap<S>& g, const HomotopyWitness<S>& w) {
  if (!(f.source == g.source) || !(f.target == g.target)) return false;
  const Complex<S>& a = f.source;
  const Complex<S>& b = f.target;
  const auto& t = w.kind == WitnessKind::Homotopy ? w.s : w.t;
  try {
    for (const auto* m : {&w.s, &t})
      for (const auto& [k, x] : *m)
        if (!is_morphism<S>(a.instance(), a.term(k), b.term(k - 1), x)) return false;
    std::set<int> degs = degrees_of(a.terms(), b.terms());
    for (int k : degs) {
      const Matrix<S> lhs = f(k) - g(k);
      const Matrix<S> rhs = lookup(w.s, k + 1, b.dim(k), a.dim(k + 1)) * a.d(k) +
                            b.d(k - 1) * lookup(t, k, b.dim(k - 1), a.dim(k));
      if (lhs != rhs) return false;
    }
  } catch (const ShapeError&) {
    return false;
  }
  return true;
}

template <class S>
ConeResult<S> cone(const ChainMap<S>& f) {
  const Complex<S>& a = f.source;
  const Complex<S>& b = f.target;
  std::set<int> degs;
  for (const auto& [k, x] : a.terms()) degs.insert(k - 1);
  for (const auto& [k, x] : b.terms()) degs.insert(k);
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (int k : degs) terms[k] = direct_sum(a.term(k + 1), b.term(k));
  for (int k : degs) {
    if (!degs.count(k + 1)) continue;
    Matrix<S> d = Matrix<S>::Zero(a.dim(k + 2) + b.dim(k + 1), a.dim(k + 1) + b.dim(k));
    d.topLeftCorner(a.dim(k + 2), a.dim(k + 1)) = -a.d(k + 1);
    d.bottomLeftCorner(b.dim(k + 1), a.dim(k + 1)) = f(k + 1);
    d.bottomRightCorner(b.dim(k + 1), b.dim(k)) = b.d(k);
    diffs[k] = std::move(d);
  }
  Complex<S> c(a.instance(), std::move(terms), std::move(diffs));
  std::map<int, Matrix<S>> inc, proj;
  for (int k : degs) {
    const Index na = a.dim(k + 1), nb = b.dim(k);
    Matrix<S> i = Matrix<S>::Zero(na + nb, nb);
    i.bottomRows(nb) = eye<S>(nb);
    inc[k] = std::move(i);
    Matrix<S> p = Matrix<S>::Zero(na, na + nb);
    p.leftCols(na) = eye<S>(na);
    proj[k] = std::move(p);
  }
  ChainMap<S> inclusion(b, c, std::move(inc));
  ChainMap<S> projection(c, shift(a, 1), std::move(proj));
  return {std::move(c), std::move(inclusion), std::move(projection)};
}

// ---------------------------------------------------------------- homotopy decision

template <class S>
std::optional<HomotopyWitness<S>> is_homotopic(const ChainMap<S>& f, const ChainMap<S>& g) {
  require_same_ends(f, g, "is_homotopic");
  const Complex<S>& a = f.source;
  const Complex<S>& b = f.target;
  GradedHom<S> hm1(a, b, -1), h0(a, b, 0);
  auto [sop, top] = homotopy_operators(a, b, hm1, h0);
  const Vector<S> rhs = h0.coords((f - g).components());
  auto x = solve<S>(Matrix<S>(sop + top), Matrix<S>(rhs));
  if (!x) return std::nullopt;
  HomotopyWitness<S> w;
  w.kind = WitnessKind::Homotopy;
  w.s = hm1.element(x->col(0));
  return w;
}

template <class S>
std::optional<HomotopyWitness<S>> is_quasi_homotopic(const ChainMap<S>& f, const ChainMap<S>& g) {
  require_same_ends(f, g, "is_quasi_homotopic");
  const Complex<S>& a = f.source;
  const Complex<S>& b = f.target;
  GradedHom<S> hm1(a, b, -1), h0(a, b, 0);
  auto [sop, top] = homotopy_operators(a, b, hm1, h0);
  Matrix<S> sys(h0.size(), 2 * hm1.size());
  sys.leftCols(hm1.size()) = sop;
  sys.rightCols(hm1.size()) = top;
  const Vector<S> rhs = h0.coords((f - g).components());
  auto x = solve<S>(sys, Matrix<S>(rhs));
  if (!x) return std::nullopt;
  HomotopyWitness<S> w;
  w.kind = WitnessKind::QuasiHomotopy;
  w.s = hm1.element(x->col(0).head(hm1.size()));
  w.t = hm1.element(x->col(0).tail(hm1.size()));
  return w;
}

template <class S>
GroupPresentation<S> hom_group_K(const Complex<S>& a, const Complex<S>& b) {
  if (!(a.instance() == b.instance())) throw InstanceMismatch("hom group across instances");
  GradedHom<S> hm1(a, b, -1), h0(a, b, 0), h1(a, b, 1);
  auto [sop, top] = homotopy_operators(a, b, hm1, h0);
  const Matrix<S> dz = chain_defect_operator(a, b, h0, h1);
  return present(a, b, h0, dz, Matrix<S>(sop + top));
}

template <class S>
GroupPresentation<S> hom_group_QK(const Complex<S>& a, const Complex<S>& b) {
  if (!(a.instance() == b.instance())) throw InstanceMismatch("hom group across instances");
  GradedHom<S> hm1(a, b, -1), h0(a, b, 0), h1(a, b, 1);
  auto [sop, top] = homotopy_operators(a, b, hm1, h0);
  const Matrix<S> dz = chain_defect_operator(a, b, h0, h1);
  Matrix<S> t(h0.size(), 2 * hm1.size());
  t.leftCols(hm1.size()) = sop;
  t.rightCols(hm1.size()) = top;
  // s d + d t is not a chain map in general; keep the pairs whose image is one
  const Matrix<S> gens = t * kernel_columns<S>(Matrix<S>(dz * t));
  return present(a, b, h0, dz, gens);
}

template <class S>
std::vector<ChainMap<S>> chain_map_basis(const Complex<S>& a, const Complex<S>& b) {
  if (!(a.instance() == b.instance())) throw InstanceMismatch("chain maps across instances");
  GradedHom<S> h0(a, b, 0), h1(a, b, 1);
  const Matrix<S> z = kernel_columns<S>(chain_defect_operator(a, b, h0, h1));
  std::vector<ChainMap<S>> out;
  for (Index j = 0; j < z.cols(); ++j) out.emplace_back(a, b, h0.element(z.col(j)));
  return out;
}

template <class S>
std::vector<std::pair<ChainMap<S>, HomotopyWitness<S>>> quasi_null_generators(const Complex<S>& a,
                                                                                const Complex<S>& b) {
  GradedHom<S> hm1(a, b, -1), h0(a, b, 0), h1(a, b, 1);
  auto [sop, top] = homotopy_operators(a, b, hm1, h0);
  const Matrix<S> dz = chain_defect_operator(a, b, h0, h1);
  Matrix<S> t(h0.size(), 2 * hm1.size());
  t.leftCols(hm1.size()) = sop;
  t.rightCols(hm1.size()) = top;
  const Matrix<S> k = kernel_columns<S>(Matrix<S>(dz * t));
  std::vector<std::pair<ChainMap<S>, HomotopyWitness<S>>> out;
  for (Index j = 0; j < k.cols(); ++j) {
    HomotopyWitness<S> w;
    w.kind = WitnessKind::QuasiHomotopy;
    w.s = hm1.element(k.col(j).head(hm1.size()));
    w.t = hm1.element(k.col(j).tail(hm1.size()));
    out.emplace_back(ChainMap<S>(a, b, h0.element(Vector<S>(t * k.col(j)))), std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------- minimization

template <class S>
MinimizeResult<S> minimize(const Complex<S>& c) {
  const Instance& inst = c.instance();
  MinimizeResult<S> res;
  if (c.is_zero()) {
    res.minimal = Complex<S>(inst);
    res.p = zero_map(c, res.minimal);
    res.i = zero_map(res.minimal, c);
    return res;
  }
  const Index bs = inst.block_size();
  const int lo = c.min_degree(), hi = c.max_degree();
  const int n = hi - lo + 1;
  std::vector<std::vector<int>> labels(n);
  // d[k]: C^k -> C^{k+1}; P[k]: orig^k -> cur^k; I[k]: cur^k -> orig^k; H[k]: orig^k -> orig^{k-1}
  std::vector<Matrix<S>> d(n), P(n), I(n), H(n);
  for (int k = 0; k < n; ++k) {
    labels[k] = c.term(lo + k).twists();
    P[k] = I[k] = eye<S>(c.dim(lo + k));
    H[k] = zeros<S>(c.dim(lo + k - 1), c.dim(lo + k));
    d[k] = c.d(lo + k);
  }

  auto eliminate = [&](int k, Index gi, Index gj) {
    const Index ri = gi * bs, cj = gj * bs;
    const Matrix<S> phi_inv = invert_entry<S>(inst, Matrix<S>(d[k].block(ri, cj, bs, bs)));
    const Matrix<S> rows_kept = remove_rows(d[k], ri, bs);
    const Matrix<S> delta = remove_cols(Matrix<S>(d[k].middleRows(ri, bs)), cj, bs);
    const Matrix<S> gamma = rows_kept.middleCols(cj, bs);
    const Matrix<S> eps = remove_cols(rows_kept, cj, bs);
    const Matrix<S> phi_inv_delta = phi_inv * delta;
    const Matrix<S> gamma_phi_inv = gamma * phi_inv;

    H[k + 1] -= I[k].middleCols(cj, bs) * phi_inv * P[k + 1].middleRows(ri, bs);
    d[k] = eps - gamma * phi_inv_delta;
    if (k > 0) d[k - 1] = remove_rows(d[k - 1], cj, bs);
    if (k + 1 < n) d[k + 1] = remove_cols(d[k + 1], ri, bs);
    P[k] = remove_rows(P[k], cj, bs);
    P[k + 1] = Matrix<S>(remove_rows(P[k + 1], ri, bs) - gamma_phi_inv * P[k + 1].middleRows(ri, bs));
    I[k] = Matrix<S>(remove_cols(I[k], cj, bs) - I[k].middleCols(cj, bs) * phi_inv_delta);
    I[k + 1] = remove_cols(I[k + 1], ri, bs);
    labels[k].erase(labels[k].begin() + gj);
    labels[k + 1].erase(labels[k + 1].begin() + gi);
  };

  // lowest degree first, then row-major over generator blocks
  auto find_pivot = [&]() -> std::optional<std::tuple<int, Index, Index>> {
    for (int k = 0; k + 1 < n; ++k) {
      const Index rows = static_cast<Index>(labels[k + 1].size());
      const Index cols = static_cast<Index>(labels[k].size());
      for (Index gi = 0; gi < rows; ++gi)
        for (Index gj = 0; gj < cols; ++gj) {
          if (labels[k + 1][gi] != labels[k][gj]) continue;
          if (is_invertible_entry<S>(inst, Matrix<S>(d[k].block(gi * bs, gj * bs, bs, bs))))
            return std::make_tuple(k, gi, gj);
        }
    }
    return std::nullopt;
  };

  for (;;) {
    if (auto piv = find_pivot()) {
      auto [k, gi, gj] = *piv;
      eliminate(k, gi, gj);
      continue;
    }
    if constexpr (!is_field_v<S>) {
      // no unit entry left; a differential of content 1 still hides a unit in a new basis
      bool changed = false;
      for (int k = 0; k + 1 < n && !changed; ++k) {
        if (is_zero<S>(d[k])) continue;
        auto snf = smith_normal_form(d[k]);
        if (snf.d(0, 0) != 1) continue;
        d[k] = snf.d;
        if (k > 0) d[k - 1] = snf.v_inv * d[k - 1];
        if (k + 1 < n) d[k + 1] = d[k + 1] * snf.u_inv;
        P[k] = snf.v_inv * P[k];
        P[k + 1] = snf.u * P[k + 1];
        I[k] = I[k] * snf.v;
        I[k + 1] = I[k + 1] * snf.u_inv;
        changed = true;
      }
      if (changed) continue;
    }
    break;
  }

  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs, pc, ic;
  for (int k = 0; k < n; ++k) {
    terms[lo + k] = Obj::tate(labels[k]);
    if (k + 1 < n) diffs[lo + k] = d[k];
    if (!labels[k].empty()) {
      pc[lo + k] = P[k];
      ic[lo + k] = I[k];
    }
    if (!is_zero<S>(H[k])) res.h.s[lo + k] = H[k];
  }
  res.minimal = Complex<S>(inst, std::move(terms), std::move(diffs));
  res.p = ChainMap<S>(c, res.minimal, std::move(pc));
  res.i = ChainMap<S>(res.minimal, c, std::move(ic));
  res.h.kind = WitnessKind::Homotopy;
  res.field_minimal = res.minimal.diffs().empty();
  return res;
}

// ---------------------------------------------------------------- duality

template <class S>
Complex<S> dual_complex(const Complex<S>& c, int s) {
  const Instance& inst = c.instance();
  if (!inst.is_tate()) throw DomainError("dual_complex is defined on TateHeart only");
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (const auto& [k, x] : c.terms()) terms[-k] = dualize(inst, x, s);
  for (const auto& [k, m] : c.diffs()) diffs[-k - 1] = m.transpose();
  return Complex<S>(inst, std::move(terms), std::move(diffs));
}

template <class S>
ChainMap<S> dual_map(const ChainMap<S>& f, int s) {
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, m] : f.components()) comps[-k] = m.transpose();
  return ChainMap<S>(dual_complex(f.target, s), dual_complex(f.source, s), std::move(comps));
}

#define WCX_INSTANTIATE(S)                                                                          \
  template class Complex<S>;                                                                        \
  template struct ChainMap<S>;                                                                      \
  template ValidationReport validate(const Complex<S>&);                                            \
  template Complex<S> shift(const Complex<S>&, int);                                                \
  template ChainMap<S> shift(const ChainMap<S>&, int);                                              \
  template Complex<S> direct_sum(const Complex<S>&, const Complex<S>&);                             \
  template ChainMap<S> direct_sum(const ChainMap<S>&, const ChainMap<S>&);                          \
  template Complex<S> brutal_ge(const Complex<S>&, int);                                            \
  template Complex<S> brutal_le(const Complex<S>&, int);                                            \
  template ChainMap<S> canonical_map(const Complex<S>&, const Complex<S>&);                         \
  template ChainMap<S> identity(const Complex<S>&);                                                 \
  template ChainMap<S> zero_map(const Complex<S>&, const Complex<S>&);                              \
  template ChainMap<S> compose(const ChainMap<S>&, const ChainMap<S>&);                             \
  template ChainMap<S> operator+(const ChainMap<S>&, const ChainMap<S>&);                           \
  template ChainMap<S> operator-(const ChainMap<S>&, const ChainMap<S>&);                           \
  template ChainMap<S> operator-(const ChainMap<S>&);                                               \
  template ChainMap<S> operator*(const S&, const ChainMap<S>&);                                     \
  template std::optional<int> chain_map_defect(const ChainMap<S>&);                                 \
  template bool witness_holds(const ChainMap<S>&, const ChainMap<S>&, const HomotopyWitness<S>&);  \
  template ConeResult<S> cone(const ChainMap<S>&);                                                  \
  template std::optional<HomotopyWitness<S>> is_homotopic(const ChainMap<S>&, const ChainMap<S>&);  \
  template std::optional<HomotopyWitness<S>> is_quasi_homotopic(const ChainMap<S>&,                 \
                                                                const ChainMap<S>&);                \
  template GroupPresentation<S> hom_group_K(const Complex<S>&, const Complex<S>&);                  \
  template GroupPresentation<S> hom_group_QK(const Complex<S>&, const Complex<S>&);                 \
  template std::vector<ChainMap<S>> chain_map_basis(const Complex<S>&, const Complex<S>&);          \
  template std::vector<std::pair<ChainMap<S>, HomotopyWitness<S>>> quasi_null_generators(        \
      const Complex<S>&, const Complex<S>&);                                                        \
  template MinimizeResult<S> minimize(const Complex<S>&);                                           \
  template Complex<S> dual_complex(const Complex<S>&, int);                                         \
  template ChainMap<S> dual_map(const ChainMap<S>&, int);

WCX_INSTANTIATE(Rational)
WCX_INSTANTIATE(Integer)

}  // namespace wcx
