#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wcx/motive.hpp"
#include "wcx/random.hpp"

using namespace wcx;

namespace {

using VE = VarietyExpr;

LaurentClass poly(std::map<int, int> c) {
  std::map<int, Integer> m;
  for (auto [e, v] : c) m[e] = v;
  return LaurentClass(m);
}

Integer ipow(Integer q, int n) {
  Integer r = 1;
  for (int i = 0; i < n; ++i) r *= q;
  return r;
}

// Point count over a field with q elements, evaluated straight from the AST.
Integer count(const VE& e, const Integer& q) {
  return std::visit(
      [&](const auto& n) -> Integer {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VE::Point>) {
          return 1;
        } else if constexpr (std::is_same_v<T, VE::Affine>) {
          return ipow(q, n.n);
        } else if constexpr (std::is_same_v<T, VE::Proj>) {
          Integer s = 0;
          for (int i = 0; i <= n.n; ++i) s += ipow(q, i);
          return s;
        } else if constexpr (std::is_same_v<T, VE::Torus>) {
          return ipow(q - 1, n.k);
        } else if constexpr (std::is_same_v<T, VE::Toric>) {
          Integer s = 0;
          for (const auto& c : n.fan) s += c.count * ipow(q - 1, n.n - c.dim);
          return s;
        } else if constexpr (std::is_same_v<T, VE::DisjointUnion>) {
          Integer s = 0;
          for (const auto& p : n.parts) s += count(p, q);
          return s;
        } else if constexpr (std::is_same_v<T, VE::Product>) {
          return count(*n.a, q) * count(*n.b, q);
        } else if constexpr (std::is_same_v<T, VE::OpenComplement>) {
          return count(*n.x, q) - count(*n.z, q);
        } else if constexpr (std::is_same_v<T, VE::BlowUp>) {
          // the center is replaced by a P^(c-1) bundle over it
          Integer fibre = 0;
          for (int i = 0; i < n.codim; ++i) fibre += ipow(q, i);
          return count(*n.x, q) - count(*n.z, q) + count(*n.z, q) * fibre;
        } else {
          Integer s = 0;
          for (const auto& [a, c] : n.cls.coeffs()) s += c * ipow(q, a);
          return s;
        }
      },
      e.node());
}

Integer eval(const LaurentClass& p, const Integer& q) {
  Integer s = 0;
  for (const auto& [a, c] : p.coeffs()) s += c * ipow(q, a);
  return s;
}

VE p2_fan() { return VE::toric(2, {{0, 1}, {1, 3}, {2, 3}}); }

}  // namespace

TEST_CASE("dim examples") {
  CHECK(dim(VE::proj(2)) == 2);
  CHECK(dim(VE::product(VE::affine(1), VE::torus(2))) == 3);
  CHECK(dim(VE::blow_up(VE::proj(2), VE::point(), 2)) == 2);
  CHECK(dim(VE::disjoint_union({VE::point(), VE::affine(3)})) == 3);
  CHECK(dim(p2_fan()) == 2);
}

TEST_CASE("malformed expressions") {
  CHECK_THROWS_AS(VE::blow_up(VE::proj(2), VE::point(), 1), MalformedExpr);
  CHECK_THROWS_AS(VE::blow_up(VE::proj(2), VE::point(), 0), NegativeCodim);
  CHECK_THROWS_AS(VE::open_complement(VE::point(), VE::affine(1)), MalformedExpr);
  CHECK_THROWS_AS(VE::affine(-1), MalformedExpr);
  CHECK_THROWS_AS(VE::torus(0), MalformedExpr);
  CHECK_THROWS_AS(VE::smooth_proper(poly({{3, 1}}), 2), MalformedExpr);
  CHECK_THROWS_AS(VE::smooth_proper(poly({{0, -1}}), 2), MalformedExpr);
  CHECK_THROWS_AS(check_scissor(VE::point(), VE::proj(1)), MalformedExpr);
}

TEST_CASE("chi examples") {
  CHECK(chi(VE::proj(2)) == poly({{0, 1}, {1, 1}, {2, 1}}));
  CHECK(chi(VE::torus(1)) == poly({{0, -1}, {1, 1}}));
  CHECK(chi(VE::open_complement(VE::affine(1), VE::point())) == chi(VE::torus(1)));
  CHECK(chi(VE::blow_up(VE::proj(2), VE::point(), 2)) == poly({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(chi(p2_fan()) == chi(VE::proj(2)));
  CHECK(to_string(chi(VE::proj(2))) == "1 + 1*L^1 + 1*L^2");
}

TEST_CASE("chi_dual examples") {
  CHECK(chi_dual(VE::proj(2)) == poly({{0, 1}, {-1, 1}, {-2, 1}}));
  CHECK(chi_dual(VE::point()) == poly({{0, 1}}));
  for (int n = 0; n <= 5; ++n) CHECK(chi_dual(VE::affine(n)) == poly({{-n, 1}}));
  CHECK(chi_dual(VE::proj(1), 1) == poly({{1, 1}, {0, 1}}));
}

TEST_CASE("weight_window examples") {
  auto w = weight_window(VE::proj(3));
  CHECK(w.forward == DegreeInterval{0, 0});
  CHECK(w.dual == DegreeInterval{0, 0});
  w = weight_window(VE::torus(1));
  CHECK(w.forward == DegreeInterval{0, 1});
  CHECK(w.dual == DegreeInterval{-1, 0});
  w = weight_window(VE::point());
  CHECK(w.forward == DegreeInterval{0, 0});
  CHECK(weight_window(p2_fan()).forward == DegreeInterval{0, 0});
  CHECK(weight_window(VE::smooth_proper(poly({{0, 1}, {1, 2}}), 1)).forward == DegreeInterval{0, 0});
  w = weight_window(VE::affine(2));
  CHECK(w.forward.lo == 0);
  CHECK(w.forward.hi <= 2);
}

TEST_CASE("scissor and square examples") {
  CHECK(check_scissor(VE::proj(1), VE::point()));
  CHECK(check_scissor(VE::affine(1), VE::point()));
  CHECK(check_scissor(VE::proj(2), VE::proj(2)));
  CHECK(check_square({SquareKind::ProperCdh, VE::proj(2), VE::point(),
                      VE::blow_up(VE::proj(2), VE::point(), 2), VE::proj(1)}));
  const VE x = VE::proj(3);
  CHECK(check_square({SquareKind::Nisnevich, x, x, x, x}));
  // A^1 = U u V with U = A^1 - 0, V = A^1 - 1 and overlap G_m - 1
  const VE u = VE::torus(1);
  const VE overlap = VE::open_complement(VE::torus(1), VE::point());
  CHECK(check_square({SquareKind::Nisnevich, VE::affine(1), u, u, overlap}));
  // a wrong blow-up square fails
  CHECK_FALSE(check_square({SquareKind::ProperCdh, VE::proj(2), VE::point(), VE::proj(2), VE::proj(1)}));
}

TEST_CASE("chi agrees with point counts") {
  for (int i = 0; i < 150; ++i) {
    Rng rng = Rng::derive(31, 0, i);
    const VE e = random_expr(rng);
    const LaurentClass c = chi(e);
    for (int q : {2, 3, 5, 7}) CHECK(eval(c, q) == count(e, q));
    REQUIRE_FALSE(c.is_zero());
    CHECK(c.min_exponent() >= 0);
    CHECK(c.max_exponent() <= dim(e));
    CHECK(c.coeff(dim(e)) > 0);
    CHECK(chi_dual(e, 0) == dual_class(c, 0));
    const int s = rng.uniform(-2, 2);
    CHECK(chi_dual(e, s) == dual_class(c, s));
  }
}

TEST_CASE("random scissor and square relations") {
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::derive(31, 1, i);
    VE x = random_expr(rng);
    if (dim(x) == 0) x = VE::product(x, VE::proj(1));
    const VE z = random_closed_sub(x, rng);
    CHECK(check_scissor(x, z));
    CHECK(chi(x) == chi(VE::open_complement(x, z)) + chi(z));
    const SquareSpec sq = random_square(rng);
    CHECK_NOTHROW(require_well_formed(sq));
    CHECK(check_square(sq));
  }
}

TEST_CASE("sum and product rules") {
  for (int i = 0; i < 40; ++i) {
    Rng rng = Rng::derive(31, 2, i);
    const VE a = random_expr(rng, 2), b = random_expr(rng, 2);
    CHECK(chi(VE::disjoint_union({a, b})) == chi(a) + chi(b));
    CHECK(chi(VE::product(a, b)) == chi(a) * chi(b));
    CHECK(dim(VE::product(a, b)) == dim(a) + dim(b));
  }
  for (int k = 1; k <= 5; ++k) CHECK(chi(VE::torus(k)).at_one() == 0);
  for (int n = 0; n <= 10; ++n) CHECK(chi(VE::proj(n)).at_one() == n + 1);
}
