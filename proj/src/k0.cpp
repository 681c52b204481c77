#include "wcx/k0.hpp"

namespace wcx {

LaurentClass::LaurentClass(std::map<int, Integer> coeffs) {
  for (auto& [e, c] : coeffs)
    if (c != 0) coeffs_.emplace(e, std::move(c));
}

LaurentClass LaurentClass::monomial(int exponent, Integer coeff) {
  return LaurentClass({{exponent, std::move(coeff)}});
}

LaurentClass LaurentClass::lefschetz_minus_one() {
  return LaurentClass({{0, Integer(-1)}, {1, Integer(1)}});
}

Integer LaurentClass::coeff(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

Integer LaurentClass::at_one() const {
  Integer s = 0;
  for (const auto& [e, c] : coeffs_) s += c;
  return s;
}

LaurentClass LaurentClass::pow(int n) const {
  LaurentClass r = constant(1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

LaurentClass& LaurentClass::operator+=(const LaurentClass& o) {
  for (const auto& [e, c] : o.coeffs_) {
    Integer v = coeff(e) + c;
    if (v == 0)
      coeffs_.erase(e);
    else
      coeffs_[e] = v;
  }
  return *this;
}

LaurentClass& LaurentClass::operator-=(const LaurentClass& o) {
  for (const auto& [e, c] : o.coeffs_) {
    Integer v = coeff(e) - c;
    if (v == 0)
      coeffs_.erase(e);
    else
      coeffs_[e] = v;
  }
  return *this;
}

LaurentClass operator*(const LaurentClass& a, const LaurentClass& b) {
  std::map<int, Integer> out;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) out[ea + eb] += ca * cb;
  return LaurentClass(std::move(out));
}

LaurentClass operator*(const Integer& c, const LaurentClass& a) {
  std::map<int, Integer> out;
  for (const auto& [e, x] : a.coeffs_) out[e] = c * x;
  return LaurentClass(std::move(out));
}

LaurentClass geometric_sum(int n) {
  std::map<int, Integer> out;
  for (int i = 0; i <= n; ++i) out[i] = 1;
  return LaurentClass(std::move(out));
}

std::string to_string(const LaurentClass& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.coeffs()) {
    if (!s.empty()) s += " + ";
    s += c.str();
    if (e != 0) s += "*L^" + std::to_string(e);
  }
  return s;
}

K0Class class_of(const Instance& inst, const Obj& x) {
  if (!inst.is_tate()) return RankClass{Integer(x.size())};
  LaurentClass p;
  for (int a : x.twists()) p += LaurentClass::monomial(a);
  return p;
}

template <class S>
K0Class euler_char(const Complex<S>& c) {
  K0Class total = c.instance().is_tate() ? K0Class(LaurentClass()) : K0Class(RankClass{0});
  for (const auto& [k, x] : c.terms()) {
    const K0Class cl = class_of(c.instance(), x);
    total = (k % 2 == 0) ? total + cl : total - cl;
  }
  return total;
}

LaurentClass dual_class(const LaurentClass& c, int s) {
  std::map<int, Integer> out;
  for (const auto& [e, x] : c.coeffs()) out[s - e] = x;
  return LaurentClass(std::move(out));
}

K0Class dual_class(const K0Class& c, int s) {
  if (std::holds_alternative<RankClass>(c)) throw DomainError("dual_class is defined on Tate classes only");
  return dual_class(std::get<LaurentClass>(c), s);
}

namespace {
template <class F>
K0Class combine(const K0Class& a, const K0Class& b, F f) {
  if (a.index() != b.index()) throw InstanceMismatch("mixing rank and Laurent classes");
  if (auto* ra = std::get_if<RankClass>(&a)) return RankClass{f(ra->rank, std::get<RankClass>(b).rank)};
  return f(std::get<LaurentClass>(a), std::get<LaurentClass>(b));
}
}  // namespace

K0Class operator+(const K0Class& a, const K0Class& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

K0Class operator-(const K0Class& a, const K0Class& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}

K0Class operator-(const K0Class& a) {
  if (auto* r = std::get_if<RankClass>(&a)) return RankClass{Integer(-r->rank)};
  return -std::get<LaurentClass>(a);
}

bool is_zero(const K0Class& c) {
  if (auto* r = std::get_if<RankClass>(&c)) return r->rank == 0;
  return std::get<LaurentClass>(c).is_zero();
}

std::string to_string(const K0Class& c) {
  if (auto* r = std::get_if<RankClass>(&c)) return r->rank.str();
  return to_string(std::get<LaurentClass>(c));
}

template K0Class euler_char(const Complex<Rational>&);
template K0Class euler_char(const Complex<Integer>&);

}  // namespace wcx
