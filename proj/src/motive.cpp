#include "wcx/motive.hpp"

#include <algorithm>
#include <string>

namespace wcx {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw MalformedExpr(msg);
}

bool palindromic_nonnegative(const LaurentClass& p, int n) {
  for (const auto& [e, c] : p.coeffs())
    if (c < 0 || e < 0 || e > n || p.coeff(n - e) != c) return false;
  return true;
}

// Forward window collapses to degree 0 for smooth proper pieces.
bool is_sharp(const VarietyExpr& e) {
  return std::visit(
      overloaded{
          [](const VarietyExpr::Point&) { return true; },
          [](const VarietyExpr::Proj&) { return true; },
          [](const VarietyExpr::SmoothProper&) { return true; },
          [](const VarietyExpr::Affine& a) { return a.n == 0; },
          [](const VarietyExpr::Torus&) { return false; },
          // completeness read off the class: a complete simplicial fan has a
          // palindromic non-negative h-polynomial
          [&](const VarietyExpr::Toric& t) { return palindromic_nonnegative(chi(e), t.n); },
          [](const VarietyExpr::DisjointUnion& u) {
            return std::all_of(u.parts.begin(), u.parts.end(), [](const auto& p) { return is_sharp(p); });
          },
          [](const VarietyExpr::Product& p) { return is_sharp(*p.a) && is_sharp(*p.b); },
          [](const VarietyExpr::OpenComplement&) { return false; },
          [](const VarietyExpr::BlowUp& b) { return is_sharp(*b.x) && is_sharp(*b.z); },
      },
      e.node());
}

}  // namespace

VarietyExpr VarietyExpr::point() { return VarietyExpr(Point{}, 0); }

VarietyExpr VarietyExpr::affine(int n) {
  require(n >= 0, "affine: n must be >= 0");
  return VarietyExpr(Affine{n}, n);
}

VarietyExpr VarietyExpr::proj(int n) {
  require(n >= 0, "proj: n must be >= 0");
  return VarietyExpr(Proj{n}, n);
}

VarietyExpr VarietyExpr::torus(int k) {
  require(k >= 1, "torus: k must be >= 1");
  return VarietyExpr(Torus{k}, k);
}

VarietyExpr VarietyExpr::toric(int n, std::vector<Cones> fan) {
  require(n >= 0, "toric: n must be >= 0");
  int zero_cones = 0;
  for (const auto& c : fan) {
    require(c.dim >= 0 && c.dim <= n, "toric: cone dimension outside [0, n]");
    require(c.count >= 1, "toric: cone count must be >= 1");
    if (c.dim == 0) zero_cones += c.count;
  }
  require(zero_cones == 1, "toric: fan needs exactly one 0-cone");
  return VarietyExpr(Toric{n, std::move(fan)}, n);
}

VarietyExpr VarietyExpr::disjoint_union(std::vector<VarietyExpr> parts) {
  require(!parts.empty(), "union: needs at least one part");
  int d = 0;
  for (const auto& p : parts) d = std::max(d, p.dim());
  return VarietyExpr(DisjointUnion{std::move(parts)}, d);
}

VarietyExpr VarietyExpr::product(VarietyExpr a, VarietyExpr b) {
  const int d = a.dim() + b.dim();
  return VarietyExpr(Product{std::make_shared<const VarietyExpr>(std::move(a)),
                             std::make_shared<const VarietyExpr>(std::move(b))},
                     d);
}

VarietyExpr VarietyExpr::open_complement(VarietyExpr x, VarietyExpr z) {
  require(z.dim() <= x.dim(), "open_complement: dim z exceeds dim x");
  const int d = x.dim();
  return VarietyExpr(OpenComplement{std::make_shared<const VarietyExpr>(std::move(x)),
                                    std::make_shared<const VarietyExpr>(std::move(z))},
                     d);
}

VarietyExpr VarietyExpr::blow_up(VarietyExpr x, VarietyExpr z, int codim) {
  if (codim < 1) throw NegativeCodim("blowup: codim must be >= 1, got " + std::to_string(codim));
  require(z.dim() + codim == x.dim(), "blowup: dim z + codim must equal dim x");
  const int d = x.dim();
  return VarietyExpr(BlowUp{std::make_shared<const VarietyExpr>(std::move(x)),
                            std::make_shared<const VarietyExpr>(std::move(z)), codim},
                     d);
}

VarietyExpr VarietyExpr::smooth_proper(LaurentClass cls, int dim) {
  require(dim >= 0, "smooth_proper: dim must be >= 0");
  for (const auto& [e, c] : cls.coeffs()) {
    require(e >= 0 && e <= dim, "smooth_proper: exponent outside [0, dim]");
    require(c > 0, "smooth_proper: coefficients must be non-negative");
  }
  require(cls.coeff(dim) > 0, "smooth_proper: class needs a positive top coefficient");
  return VarietyExpr(SmoothProper{std::move(cls), dim}, dim);
}

bool operator==(const VarietyExpr& a, const VarietyExpr& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      overloaded{
          [&](const VarietyExpr::DisjointUnion& u) {
            return u.parts == std::get<VarietyExpr::DisjointUnion>(b.node_).parts;
          },
          [&](const VarietyExpr::Product& p) {
            const auto& q = std::get<VarietyExpr::Product>(b.node_);
            return *p.a == *q.a && *p.b == *q.b;
          },
          [&](const VarietyExpr::OpenComplement& p) {
            const auto& q = std::get<VarietyExpr::OpenComplement>(b.node_);
            return *p.x == *q.x && *p.z == *q.z;
          },
          [&](const VarietyExpr::BlowUp& p) {
            const auto& q = std::get<VarietyExpr::BlowUp>(b.node_);
            return p.codim == q.codim && *p.x == *q.x && *p.z == *q.z;
          },
          [&](const VarietyExpr::SmoothProper& p) {
            const auto& q = std::get<VarietyExpr::SmoothProper>(b.node_);
            return p.dim == q.dim && p.cls == q.cls;
          },
          [&](const auto& p) { return p == std::get<std::decay_t<decltype(p)>>(b.node_); },
      },
      a.node_);
}

LaurentClass chi(const VarietyExpr& e) {
  const LaurentClass t = LaurentClass::lefschetz_minus_one();
  return std::visit(
      overloaded{
          [](const VarietyExpr::Point&) { return LaurentClass::constant(1); },
          [](const VarietyExpr::Affine& a) { return LaurentClass::monomial(a.n); },
          [](const VarietyExpr::Proj& p) { return geometric_sum(p.n); },
          [&](const VarietyExpr::Torus& k) { return t.pow(k.k); },
          [&](const VarietyExpr::Toric& f) {
            LaurentClass s;
            for (const auto& c : f.fan) s += Integer(c.count) * t.pow(f.n - c.dim);
            return s;
          },
          [](const VarietyExpr::DisjointUnion& u) {
            LaurentClass s;
            for (const auto& p : u.parts) s += chi(p);
            return s;
          },
          [](const VarietyExpr::Product& p) { return chi(*p.a) * chi(*p.b); },
          [](const VarietyExpr::OpenComplement& o) { return chi(*o.x) - chi(*o.z); },
          [](const VarietyExpr::BlowUp& b) {
            const LaurentClass cz = chi(*b.z);
            return chi(*b.x) - cz + cz * geometric_sum(b.codim - 1);
          },
          [](const VarietyExpr::SmoothProper& s) { return s.cls; },
      },
      e.node());
}

LaurentClass chi_dual(const VarietyExpr& e, int s) { return dual_class(chi(e), s); }

WindowPair weight_window(const VarietyExpr& e) {
  const int d = e.dim();
  if (is_sharp(e)) return {{0, 0}, {0, 0}};
  return {{0, d}, {-d, 0}};
}

bool check_scissor(const VarietyExpr& x, const VarietyExpr& z) {
  require(z.dim() <= x.dim(), "scissor: dim z exceeds dim x");
  return chi(x) == chi(VarietyExpr::open_complement(x, z)) + chi(z);
}

void require_well_formed(const SquareSpec& sq) {
  const int dx = sq.x.dim(), da = sq.a.dim(), db = sq.b.dim(), dy = sq.y.dim();
  if (sq.kind == SquareKind::Nisnevich) {
    require(da <= dx && db <= dx, "nisnevich square: A and B must not exceed dim X");
    require(dy <= std::min(da, db), "nisnevich square: Y must not exceed dim A or dim B");
  } else {
    require(da <= dx, "cdh square: closed A must not exceed dim X");
    require(dy <= db, "cdh square: Y must not exceed dim B");
    require(db <= dx, "cdh square: B must not exceed dim X");
  }
}

bool check_square(const SquareSpec& sq) {
  require_well_formed(sq);
  const LaurentClass x = chi(sq.x), a = chi(sq.a), b = chi(sq.b), y = chi(sq.y);
  const bool forward = x + y == a + b;
  const bool dual = dual_class(x, 0) + dual_class(y, 0) == dual_class(a, 0) + dual_class(b, 0);
  return forward && dual;
}

}  // namespace wcx
