#include "wcx/random.hpp"

#include "wcx/exactlinalg.hpp"

#include <algorithm>

namespace wcx {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A random element of the algebra that is not a unit; zero if none is found.
Vector<Rational> random_nonunit_element(const Algebra& alg, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector<Rational> v(alg.dim());
    for (int l = 0; l < alg.dim(); ++l) {
      const bool unit_direction = alg.unit() == Vector<Rational>::Unit(alg.dim(), l);
      v(l) = unit_direction ? Rational(0) : random_scalar<Rational>(rng);
    }
    if (!alg.is_unit(v) && v != Vector<Rational>::Zero(alg.dim())) return v;
  }
  return Vector<Rational>::Zero(alg.dim());
}

Vector<Rational> random_unit_element(const Algebra& alg, Rng& rng) {
  for (;;) {
    Vector<Rational> v(alg.dim());
    for (int l = 0; l < alg.dim(); ++l) v(l) = random_scalar<Rational>(rng);
    v += Rational(rng.uniform(1, 2)) * alg.unit();
    if (alg.is_unit(v)) return v;
  }
}

// A generator-to-generator entry that is not a unit (may be zero).
template <class S>
Matrix<S> random_nonunit_entry(const Instance& inst, Rng& rng) {
  if constexpr (is_field_v<S>) {
    if (inst.kind() == InstanceKind::AlgebraMod)
      return inst.algebra().left_multiplication(random_nonunit_element(inst.algebra(), rng));
    return zeros<S>(1, 1);
  } else {
    Matrix<S> m(1, 1);
    m(0, 0) = S(rng.uniform(2, 4) * (rng.chance(1, 2) ? 1 : -1));
    return m;
  }
}

struct Piece {
  int start;
  int twist;
  int length;
};

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t x = seed;
  std::uint64_t a = splitmix64(x);
  x = a ^ (stream * 0xd1b54a32d192ed03ULL);
  std::uint64_t b = splitmix64(x);
  x = b ^ (index * 0x8cb92ba72f3d8dd7ULL);
  return Rng(splitmix64(x));
}

Instance instance_by_name(std::string_view name) {
  if (name == "q") return Instance::rationals();
  if (name == "z") return Instance::integers();
  if (name == "tate") return Instance::tate();
  if (name == "algebra" || name == "dual") return Instance::algebra(Algebra::dual_numbers());
  throw InstanceMismatch("unknown instance '" + std::string(name) + "'");
}

template <class S>
S random_scalar(Rng& rng, int bound) {
  const int num = rng.uniform(-bound, bound);
  if constexpr (is_field_v<S>) {
    if (num != 0 && rng.chance(1, 6)) return Rational(num) / Rational(2);
  }
  return S(num);
}

template <class S>
Matrix<S> random_morphism(const Instance& inst, const Obj& a, const Obj& b, Rng& rng) {
  Vector<S> c(hom_dimension(inst, a, b));
  for (Index i = 0; i < c.size(); ++i) c(i) = random_scalar<S>(rng);
  return hom_element<S>(inst, a, b, c);
}

template <class S>
Automorphism<S> random_automorphism(const Instance& inst, const Obj& x, Rng& rng) {
  const Index bs = inst.block_size();
  const Index n = scalar_dim(inst, x);
  Matrix<S> g = eye<S>(n), gi = eye<S>(n);
  if (x.size() == 0) return {g, gi};
  const int ops = 2 * x.size();
  for (int op = 0; op < ops; ++op) {
    const int i = rng.uniform(0, x.size() - 1);
    const int j = rng.uniform(0, x.size() - 1);
    Matrix<S> e = eye<S>(n), einv = eye<S>(n);
    if (i == j) {
      // rescale generator i by a unit
      if constexpr (is_field_v<S>) {
        if (bs > 1) {
          const Vector<Rational> u = random_unit_element(inst.algebra(), rng);
          e.block(i * bs, i * bs, bs, bs) = inst.algebra().left_multiplication(u);
          einv.block(i * bs, i * bs, bs, bs) = *inverse(Matrix<S>(e.block(i * bs, i * bs, bs, bs)));
        } else {
          S u = random_scalar<S>(rng);
          if (u == 0) u = S(-1);
          e(i, i) = u;
          einv(i, i) = S(1) / u;
        }
      } else {
        e(i, i) = einv(i, i) = S(-1);
      }
    } else {
      if (x.twist(i) != x.twist(j)) continue;
      // generator i += c * generator j, nilpotent part squares to zero
      Matrix<S> c(bs, bs);
      if constexpr (is_field_v<S>) {
        if (bs > 1) {
          Vector<Rational> v(bs);
          for (Index l = 0; l < bs; ++l) v(l) = random_scalar<Rational>(rng);
          c = inst.algebra().left_multiplication(v);
        } else {
          c(0, 0) = random_scalar<S>(rng);
        }
      } else {
        c(0, 0) = random_scalar<S>(rng);
      }
      e.block(i * bs, j * bs, bs, bs) = c;
      einv.block(i * bs, j * bs, bs, bs) = -c;
    }
    g = e * g;
    gi = gi * einv;
  }
  return {g, gi};
}

Obj random_object(const Instance& inst, Rng& rng, int max_rank, int max_twist) {
  const int r = rng.uniform(1, std::max(1, max_rank));
  if (!inst.is_tate()) return Obj::free(r);
  std::vector<int> t;
  for (int i = 0; i < r; ++i) t.push_back(rng.uniform(-max_twist, max_twist));
  return Obj::tate(std::move(t));
}

template <class S>
Complex<S> random_minimal_complex(const Instance& inst, Rng& rng, const ComplexShape& shape) {
  const Index bs = inst.block_size();
  const int width = rng.uniform(1, shape.max_width);
  const int lo = rng.uniform(shape.min_degree, std::max(shape.min_degree, shape.max_degree - width + 1));
  const bool chains = inst.kind() == InstanceKind::FreeModInt || inst.kind() == InstanceKind::AlgebraMod;
  const int max_len = inst.kind() == InstanceKind::AlgebraMod ? 3 : 2;

  std::vector<Piece> pieces;
  std::vector<int> rank(width, 0);
  for (int k = 0; k < width; ++k) {
    const int count = rng.uniform(k == 0 ? 1 : 0, shape.max_core);
    for (int p = 0; p < count; ++p) {
      int len = chains ? rng.uniform(1, std::min(max_len, width - k)) : 1;
      bool room = true;
      for (int j = 0; j < len; ++j) room = room && rank[k + j] < shape.max_rank - 2;
      if (!room) continue;
      for (int j = 0; j < len; ++j) ++rank[k + j];
      pieces.push_back({k, inst.is_tate() ? rng.uniform(-shape.max_twist, shape.max_twist) : 0, len});
    }
  }

  // generator slots per degree, in piece order
  std::vector<std::vector<int>> labels(width);
  std::vector<std::vector<std::pair<size_t, int>>> owner(width);  // (piece, position)
  for (size_t p = 0; p < pieces.size(); ++p)
    for (int j = 0; j < pieces[p].length; ++j) {
      labels[pieces[p].start + j].push_back(pieces[p].twist);
      owner[pieces[p].start + j].emplace_back(p, j);
    }

  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (int k = 0; k < width; ++k) terms[lo + k] = Obj::tate(labels[k]);
  std::vector<std::vector<Matrix<S>>> entries(pieces.size());
  for (size_t p = 0; p < pieces.size(); ++p)
    for (int j = 0; j + 1 < pieces[p].length; ++j) {
      Matrix<S> a = random_nonunit_entry<S>(inst, rng);
      // consecutive entries compose to zero
      if (j > 0 && !is_zero<S>(Matrix<S>(a * entries[p].back()))) a = zeros<S>(bs, bs);
      entries[p].push_back(a);
    }
  for (int k = 0; k + 1 < width; ++k) {
    Matrix<S> d = zeros<S>(labels[k + 1].size() * bs, labels[k].size() * bs);
    for (size_t c = 0; c < owner[k].size(); ++c) {
      auto [p, j] = owner[k][c];
      if (j + 1 >= pieces[p].length) continue;
      for (size_t r = 0; r < owner[k + 1].size(); ++r)
        if (owner[k + 1][r] == std::make_pair(p, j + 1)) d.block(r * bs, c * bs, bs, bs) = entries[p][j];
    }
    diffs[lo + k] = std::move(d);
  }
  return Complex<S>(inst, std::move(terms), std::move(diffs));
}

template <class S>
Complex<S> random_representative(const Complex<S>& minimal, Rng& rng, const ComplexShape& shape) {
  const Instance& inst = minimal.instance();
  const Index bs = inst.block_size();
  std::map<int, std::vector<int>> labels;
  std::map<int, Matrix<S>> d = minimal.diffs();
  for (const auto& [k, x] : minimal.terms()) labels[k] = x.twists();
  int lo = minimal.is_zero() ? 0 : minimal.min_degree();
  int hi = minimal.is_zero() ? 0 : minimal.max_degree();

  const int count = rng.uniform(0, shape.max_contractible);
  for (int c = 0; c < count; ++c) {
    const int k = rng.uniform(lo - 1, hi);
    if (static_cast<int>(labels[k].size()) >= shape.max_rank ||
        static_cast<int>(labels[k + 1].size()) >= shape.max_rank)
      continue;
    const int twist = inst.is_tate() ? rng.uniform(-shape.max_twist, shape.max_twist) : 0;
    // append one generator to degrees k and k+1, joined by the identity
    auto grow = [&](int deg, bool rows_side) {
      (void)rows_side;
      labels[deg].push_back(twist);
    };
    grow(k, false);
    grow(k + 1, true);
    for (int deg : {k - 1, k, k + 1}) {
      const Index rows = labels[deg + 1].size() * bs, cols = labels[deg].size() * bs;
      Matrix<S> old = d.count(deg) ? d[deg] : zeros<S>(0, 0);
      Matrix<S> nd = zeros<S>(rows, cols);
      nd.topLeftCorner(old.rows(), old.cols()) = old;
      d[deg] = std::move(nd);
    }
    d[k].bottomRightCorner(bs, bs) = eye<S>(bs);
    lo = std::min(lo, k);
    hi = std::max(hi, k + 1);
  }

  std::map<int, Automorphism<S>> autos;
  for (const auto& [k, l] : labels) autos[k] = random_automorphism<S>(inst, Obj::tate(l), rng);
  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (const auto& [k, l] : labels) terms[k] = Obj::tate(l);
  for (auto& [k, m] : d) {
    if (m.size() == 0) continue;
    diffs[k] = autos.at(k + 1).g * m * autos.at(k).g_inv;
  }
  // ranks were bounded above, so shapes agree with the zero padding
  for (auto& [k, m] : diffs)
    if (m.rows() != static_cast<Index>(labels[k + 1].size() * bs) ||
        m.cols() != static_cast<Index>(labels[k].size() * bs))
      throw std::logic_error("random_representative: inconsistent padding");
  return Complex<S>(inst, std::move(terms), std::move(diffs));
}

template <class S>
Complex<S> random_complex(const Instance& inst, Rng& rng, const ComplexShape& shape) {
  return random_representative(random_minimal_complex<S>(inst, rng, shape), rng, shape);
}

template <class S>
ChainMap<S> random_chain_map(const Complex<S>& a, const Complex<S>& b, Rng& rng) {
  ChainMap<S> f = zero_map(a, b);
  for (const auto& g : chain_map_basis(a, b)) {
    const int c = rng.uniform(-2, 2);
    if (c != 0) f = f + S(c) * g;
  }
  return f;
}

template <class S>
std::pair<ChainMap<S>, HomotopyWitness<S>> random_null_homotopic(const Complex<S>& a, const Complex<S>& b,
                                                                 Rng& rng) {
  const Instance& inst = a.instance();
  HomotopyWitness<S> w;
  for (const auto& [k, x] : a.terms()) {
    const Obj& y = b.term(k - 1);
    if (y.is_zero()) continue;
    Matrix<S> s = random_morphism<S>(inst, x, y, rng);
    if (!is_zero<S>(s)) w.s[k] = std::move(s);
  }
  auto at = [&](int k) -> Matrix<S> {
    auto it = w.s.find(k);
    return it == w.s.end() ? zeros<S>(b.dim(k - 1), a.dim(k)) : it->second;
  };
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, x] : a.terms()) {
    if (b.term(k).is_zero()) continue;
    comps[k] = at(k + 1) * a.d(k) + b.d(k - 1) * at(k);
  }
  return {ChainMap<S>(a, b, std::move(comps)), std::move(w)};
}

// ---------------------------------------------------------------- expressions

namespace {

VarietyExpr random_leaf(Rng& rng) {
  switch (rng.uniform(0, 6)) {
    case 0: return VarietyExpr::point();
    case 1: return VarietyExpr::affine(rng.uniform(0, 3));
    case 2: return VarietyExpr::proj(rng.uniform(0, 4));
    case 3: return VarietyExpr::torus(rng.uniform(1, 3));
    case 4: {
      const int n = rng.uniform(1, 3);
      std::vector<VarietyExpr::Cones> fan{{0, 1}};
      for (int d = 1; d <= n; ++d)
        if (rng.chance(3, 4)) fan.push_back({d, rng.uniform(1, 4)});
      return VarietyExpr::toric(n, std::move(fan));
    }
    case 5: {
      // projective-space fan: (n+1 choose d) cones of each dimension d
      const int n = rng.uniform(1, 3);
      std::vector<VarietyExpr::Cones> fan;
      int binom = 1;
      for (int d = 0; d <= n; ++d) {
        fan.push_back({d, binom});
        binom = binom * (n + 1 - d) / (d + 1);
      }
      return VarietyExpr::toric(n, std::move(fan));
    }
    default: {
      const int d = rng.uniform(0, 3);
      std::map<int, Integer> c;
      for (int e = 0; e <= d; ++e) c[e] = rng.uniform(0, 2);
      c[d] = rng.uniform(1, 2);
      return VarietyExpr::smooth_proper(LaurentClass(std::move(c)), d);
    }
  }
}

}  // namespace

VarietyExpr random_closed_sub(const VarietyExpr& x, Rng& rng) {
  const int d = x.dim();
  if (d < 1) throw MalformedExpr("no proper closed subvariety of a point");
  if (rng.chance(1, 4)) return VarietyExpr::point();
  const auto& n = x.node();
  if (std::holds_alternative<VarietyExpr::Proj>(n)) return VarietyExpr::proj(rng.uniform(0, d - 1));
  if (std::holds_alternative<VarietyExpr::Affine>(n)) return VarietyExpr::affine(rng.uniform(0, d - 1));
  if (auto* t = std::get_if<VarietyExpr::Torus>(&n))
    return t->k >= 2 ? VarietyExpr::torus(t->k - 1) : VarietyExpr::point();
  if (auto* p = std::get_if<VarietyExpr::Product>(&n)) {
    if (p->a->dim() >= 1 && (p->b->dim() == 0 || rng.chance(1, 2)))
      return VarietyExpr::product(random_closed_sub(*p->a, rng), *p->b);
    return VarietyExpr::product(*p->a, random_closed_sub(*p->b, rng));
  }
  if (auto* u = std::get_if<VarietyExpr::DisjointUnion>(&n)) {
    for (const auto& part : u->parts)
      if (part.dim() == d) return random_closed_sub(part, rng);
  }
  return VarietyExpr::point();
}

VarietyExpr random_expr(Rng& rng, int depth) {
  if (depth <= 0 || rng.chance(1, 3)) return random_leaf(rng);
  switch (rng.uniform(0, 3)) {
    case 0: {
      std::vector<VarietyExpr> parts;
      const int n = rng.uniform(1, 3);
      for (int i = 0; i < n; ++i) parts.push_back(random_expr(rng, depth - 1));
      return VarietyExpr::disjoint_union(std::move(parts));
    }
    case 1: {
      VarietyExpr a = random_expr(rng, depth - 1);
      VarietyExpr b = random_expr(rng, depth - 1);
      if (a.dim() + b.dim() > 6) return a;
      return VarietyExpr::product(std::move(a), std::move(b));
    }
    case 2: {
      VarietyExpr x = random_expr(rng, depth - 1);
      if (x.dim() < 1) return x;
      VarietyExpr z = random_closed_sub(x, rng);
      return VarietyExpr::open_complement(std::move(x), std::move(z));
    }
    default: {
      VarietyExpr x = random_expr(rng, depth - 1);
      if (x.dim() < 1) return x;
      VarietyExpr z = random_closed_sub(x, rng);
      const int c = x.dim() - z.dim();
      return VarietyExpr::blow_up(std::move(x), std::move(z), c);
    }
  }
}

SquareSpec random_square(Rng& rng) {
  if (rng.chance(1, 2)) {
    // X split into strata P, Q, R; A = P u R and B = Q u R overlap in R
    VarietyExpr p = random_expr(rng, 2), q = random_expr(rng, 2), r = random_expr(rng, 2);
    return {SquareKind::Nisnevich,
            VarietyExpr::disjoint_union({p, q, r}),
            VarietyExpr::disjoint_union({p, r}),
            VarietyExpr::disjoint_union({q, r}),
            r};
  }
  VarietyExpr x = random_expr(rng, 2);
  while (x.dim() < 1) x = random_expr(rng, 2);
  VarietyExpr z = random_closed_sub(x, rng);
  const int c = x.dim() - z.dim();
  return {SquareKind::ProperCdh, x, z, VarietyExpr::blow_up(x, z, c),
          VarietyExpr::product(z, VarietyExpr::proj(c - 1))};
}

#define WCX_INSTANTIATE(S)                                                                         \
  template S random_scalar<S>(Rng&, int);                                                          \
  template Matrix<S> random_morphism<S>(const Instance&, const Obj&, const Obj&, Rng&);           \
  template Automorphism<S> random_automorphism<S>(const Instance&, const Obj&, Rng&);              \
  template Complex<S> random_minimal_complex<S>(const Instance&, Rng&, const ComplexShape&);       \
  template Complex<S> random_representative(const Complex<S>&, Rng&, const ComplexShape&);         \
  template Complex<S> random_complex<S>(const Instance&, Rng&, const ComplexShape&);               \
  template ChainMap<S> random_chain_map(const Complex<S>&, const Complex<S>&, Rng&);               \
  template std::pair<ChainMap<S>, HomotopyWitness<S>> random_null_homotopic(const Complex<S>&,     \
                                                                            const Complex<S>&, Rng&);

WCX_INSTANTIATE(Rational)
WCX_INSTANTIATE(Integer)

}  // namespace wcx
