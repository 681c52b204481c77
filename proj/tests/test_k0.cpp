#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wcx/k0.hpp"
#include "wcx/random.hpp"

using namespace wcx;

namespace {

LaurentClass poly(std::map<int, int> c) {
  std::map<int, Integer> m;
  for (auto [e, v] : c) m[e] = v;
  return LaurentClass(m);
}

Complex<Rational> tate_complex(std::map<int, std::vector<int>> terms) {
  std::map<int, Obj> t;
  for (auto& [k, v] : terms) t[k] = Obj::tate(v);
  return Complex<Rational>(Instance::tate(), std::move(t), {});
}

// alternating sum over twist lists, computed directly
LaurentClass oracle_euler(const Complex<Rational>& c) {
  std::map<int, Integer> m;
  for (const auto& [k, obj] : c.terms())
    for (int a : obj.twists()) m[a] += (k % 2 == 0) ? 1 : -1;
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return LaurentClass(m);
}

}  // namespace

TEST_CASE("laurent arithmetic") {
  const auto l = LaurentClass::monomial(1);
  CHECK(LaurentClass::lefschetz_minus_one() == l - LaurentClass::constant(1));
  CHECK((l - LaurentClass::constant(1)).pow(2) == poly({{0, 1}, {1, -2}, {2, 1}}));
  CHECK(geometric_sum(2) == poly({{0, 1}, {1, 1}, {2, 1}}));
  CHECK(geometric_sum(-1).is_zero());
  CHECK(geometric_sum(4).at_one() == 5);
  CHECK(LaurentClass::lefschetz_minus_one().pow(3).at_one() == 0);
  CHECK((l + (-l)).is_zero());
  CHECK(poly({{0, 0}, {1, 2}}).coeffs().size() == 1);
}

TEST_CASE("laurent rendering") {
  CHECK(to_string(geometric_sum(2)) == "1 + 1*L^1 + 1*L^2");
  CHECK(to_string(poly({{-1, -1}, {0, 1}})) == "-1*L^-1 + 1");
  CHECK(to_string(LaurentClass()) == "0");
  CHECK(to_string(K0Class(RankClass{3})) == "3");
}

TEST_CASE("class_of examples") {
  CHECK(is_zero(class_of(Instance::tate(), Obj())));
  CHECK(std::get<LaurentClass>(class_of(Instance::tate(), Obj::tate({0, 0, 2}))) == poly({{0, 2}, {2, 1}}));
  CHECK(std::get<RankClass>(class_of(Instance::rationals(), Obj::free(3))).rank == 3);
  CHECK(std::get<RankClass>(class_of(Instance::integers(), Obj::free(2))).rank == 2);
  const Obj a = Obj::tate({1, 2}), b = Obj::tate({2, -1});
  CHECK(class_of(Instance::tate(), direct_sum(a, b)) ==
        class_of(Instance::tate(), a) + class_of(Instance::tate(), b));
}

TEST_CASE("euler_char examples") {
  const auto h = tate_complex({{0, {0, 3}}});
  CHECK(euler_char(h) == class_of(Instance::tate(), Obj::tate({0, 3})));
  CHECK(is_zero(euler_char(cone(identity(h)).cone)));
  const auto x = tate_complex({{0, {1}}, {1, {0}}});
  CHECK(std::get<LaurentClass>(euler_char(x)) == poly({{0, -1}, {1, 1}}));
  const Complex<Integer> z(Instance::integers(), {{0, Obj::free(2)}, {3, Obj::free(5)}}, {});
  CHECK(std::get<RankClass>(euler_char(z)).rank == -3);
}

TEST_CASE("euler_char properties") {
  const std::vector<Instance> insts{Instance::rationals(), Instance::tate(),
                                    Instance::algebra(Algebra::dual_numbers())};
  for (int i = 0; i < 30; ++i) {
    Rng rng = Rng::derive(21, 0, i);
    const Instance inst = insts[i % 3];
    const auto a = random_complex<Rational>(inst, rng), b = random_complex<Rational>(inst, rng);
    if (inst.is_tate()) CHECK(std::get<LaurentClass>(euler_char(a)) == oracle_euler(a));
    CHECK(euler_char(minimize(a).minimal) == euler_char(a));
    CHECK(euler_char(shift(a, 1)) == -euler_char(a));
    const auto f = random_chain_map(a, b, rng);
    CHECK(is_zero(euler_char(a) - euler_char(b) + euler_char(cone(f).cone)));
    if (inst.is_tate()) {
      const int s = rng.uniform(-2, 2);
      CHECK(dual_class(euler_char(a), s) == euler_char(dual_complex(a, s)));
    }
  }
  for (int i = 0; i < 10; ++i) {
    Rng rng = Rng::derive(21, 1, i);
    const auto a = random_complex<Integer>(Instance::integers(), rng);
    CHECK(euler_char(minimize(a).minimal) == euler_char(a));
  }
}

TEST_CASE("dual_class") {
  CHECK(dual_class(poly({{0, 1}, {1, 1}}), 0) == poly({{0, 1}, {-1, 1}}));
  CHECK(dual_class(LaurentClass(), 3).is_zero());
  CHECK_THROWS_AS(dual_class(K0Class(RankClass{2}), 0), DomainError);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    std::map<int, Integer> m;
    for (int j = 0; j < 4; ++j) m[rng.uniform(-5, 5)] += rng.uniform(-3, 3);
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    const LaurentClass p(m);
    const int s = rng.uniform(-3, 3);
    CHECK(dual_class(dual_class(p, s), s) == p);
  }
}
