#include "wcx/weight.hpp"

#include "wcx/exactlinalg.hpp"
#include "wcx/io.hpp"
#include "wcx/random.hpp"

namespace wcx {

namespace {

void fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
}

template <class S>
bool maps_equal(const ChainMap<S>& f, const ChainMap<S>& g) {
  return f.source == g.source && f.target == g.target && f.components() == g.components();
}

// Degree-0 trace pieces for one k, Y = m[k].
template <class S>
WeightComplexStep<S> build_step(const Complex<S>& m, int k) {
  WeightComplexStep<S> st;
  st.k = k;
  const Complex<S> y = shift(m, k);

  const Complex<S> lm1 = brutal_ge(y, 1), lm = brutal_ge(y, 0);
  st.alpha_minus = canonical_map(lm1, lm);
  const ConeResult<S> cm = cone(st.alpha_minus);
  st.minus_model = minimize(cm.cone);
  st.w = st.minus_model.minimal;
  if (!st.w.is_zero() && (st.w.min_degree() != 0 || st.w.max_degree() != 0))
    throw std::logic_error("weight complex term " + std::to_string(k) + " left the heart");
  st.beta_minus = compose(st.minus_model.p, cm.inclusion);
  st.gamma_minus = -compose(cm.projection, st.minus_model.i);

  const Complex<S> hp = brutal_le(y, 0), hp1 = brutal_le(y, -1);
  st.alpha_plus = canonical_map(hp, hp1);
  const ConeResult<S> cp = cone(st.alpha_plus);
  const MinimizeResult<S> mp = minimize(cp.cone);
  if (!(mp.minimal == shift(st.w, 1)))
    throw std::logic_error("the two triangles disagree on W^" + std::to_string(k));
  st.beta_plus = compose(mp.p, cp.inclusion);
  st.gamma_plus = compose(cp.projection, mp.i);

  const ConeResult<S> cf = cone(canonical_map(lm1, y));
  const MinimizeResult<S> mf = minimize(cf.cone);
  if (!(mf.minimal == hp)) throw std::logic_error("cone of the weight filtration is not w>=0 Y");
  st.phi = compose(cf.projection, mf.i);
  return st;
}

int triangular_sign(int k) {
  const long t = static_cast<long>(k) * (k + 1) / 2;
  return (t % 2 == 0) ? 1 : -1;
}

// Degree support of the minimal model, widened by one for the d^k lookahead.
template <class S>
std::pair<int, int> step_range(const Complex<S>& m) {
  if (m.is_zero()) return {0, -1};
  return {m.min_degree(), m.max_degree() + 1};
}

}  // namespace

std::string to_string(const WeightWindow& w) {
  if (w.zero) return "zero";
  return "[" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
}

template <class S>
WeightWindow weight_bounds(const Complex<S>& x) {
  const Complex<S> m = minimize(x).minimal;
  if (m.is_zero()) return {};
  return {false, -m.max_degree(), -m.min_degree()};
}

template <class S>
bool in_w_le(const Complex<S>& x, int n) {
  const WeightWindow w = weight_bounds(x);
  return w.zero || w.hi <= n;
}

template <class S>
bool in_w_ge(const Complex<S>& x, int n) {
  const WeightWindow w = weight_bounds(x);
  return w.zero || w.lo >= n;
}

template <class S>
WeightTriangle<S> weight_truncate(const Complex<S>& x, int n) {
  WeightTriangle<S> t;
  t.n = n;
  t.model = minimize(x);
  t.whole = t.model.minimal;
  t.low = brutal_ge(t.whole, -n);
  t.high = brutal_le(t.whole, -n - 1);
  t.low_to_whole = canonical_map(t.low, t.whole);
  t.whole_to_high = canonical_map(t.whole, t.high);
  return t;
}

template <class S>
bool certify(const WeightTriangle<S>& t, std::string* why) {
  if (!in_w_le(t.low, t.n)) return fail(why, "low is not in w<=" + std::to_string(t.n)), false;
  if (!in_w_ge(t.high, t.n + 1)) return fail(why, "high is not in w>=" + std::to_string(t.n + 1)), false;
  if (!is_chain_map(t.low_to_whole) || !is_chain_map(t.whole_to_high))
    return fail(why, "triangle maps are not chain maps"), false;

  const ConeResult<S> c = cone(t.low_to_whole);
  const Complex<S>& cn = c.cone;
  const int cut = -t.n - 1;  // top degree of high
  std::map<int, Matrix<S>> qc, rc;
  for (const auto& [j, x] : t.high.terms()) {
    const Index na = t.low.dim(j + 1), nw = t.whole.dim(j);
    Matrix<S> q = zeros<S>(nw, na + nw);
    q.rightCols(nw) = eye<S>(nw);
    qc[j] = std::move(q);
    Matrix<S> r = zeros<S>(na + nw, nw);
    if (j == cut) r.topRows(na) = -t.whole.d(j);
    r.bottomRows(nw) = eye<S>(nw);
    rc[j] = std::move(r);
  }
  const ChainMap<S> q(cn, t.high, std::move(qc));
  const ChainMap<S> r(t.high, cn, std::move(rc));
  if (!is_chain_map(q) || !is_chain_map(r)) return fail(why, "cone comparison maps are not chain maps"), false;
  if (!maps_equal(compose(q, r), identity(t.high))) return fail(why, "q o r is not the identity"), false;
  const ChainMap<S> rq = compose(r, q);
  const auto w = is_homotopic(rq, identity(cn));
  if (!w || !witness_holds(rq, identity(cn), *w))
    return fail(why, "r o q is not homotopic to the identity of the cone"), false;
  return true;
}

template <class S>
WeightComplexResult<S> weight_complex(const Complex<S>& x) {
  WeightComplexResult<S> r;
  const Instance& inst = x.instance();
  r.model = minimize(x);
  const Complex<S>& m = r.model.minimal;

  const auto [first, last] = step_range(m);
  std::map<int, WeightComplexStep<S>> steps;
  for (int k = first; k <= last; ++k) steps.emplace(k, build_step(m, k));

  std::map<int, Obj> terms;
  std::map<int, Matrix<S>> diffs;
  for (int k = first; k < last; ++k) {
    const auto& s = steps.at(k);
    const auto& t = steps.at(k + 1);
    if (s.w.is_zero()) continue;
    terms[k] = s.w.term(0);
    const ChainMap<S> gp = shift(s.gamma_plus, -1);
    const ChainMap<S> r1 = compose(t.beta_minus, compose(s.phi, gp));
    const ChainMap<S> r2 = compose(shift(t.beta_plus, -1), gp);
    const ChainMap<S> r3 = -compose(t.beta_minus, s.gamma_minus);
    r.routes[k] = {r1(0), r2(0), r3(0)};
    if (!t.w.is_zero()) diffs[k] = r3(0);
  }
  r.wc = Complex<S>(inst, std::move(terms), std::move(diffs));

  std::map<int, Matrix<S>> cmp, inv;
  for (const auto& [k, obj] : r.wc.terms()) {
    const Index n = m.dim(k);
    const Matrix<S> block = S(triangular_sign(k)) * Matrix<S>(steps.at(k).minus_model.i(0).bottomRows(n));
    auto bi = inverse(block);
    if (!bi) throw std::logic_error("weight complex comparison is not invertible in degree " + std::to_string(k));
    cmp[k] = block;
    inv[k] = *bi;
  }
  r.compare = ChainMap<S>(r.wc, m, std::move(cmp));
  r.compare_inv = ChainMap<S>(m, r.wc, std::move(inv));
  r.to = compose(r.model.i, r.compare);
  r.from = compose(r.compare_inv, r.model.p);
  r.witness = r.model.h;
  for (auto& [k, st] : steps) r.steps.push_back(std::move(st));
  return r;
}

template <class S>
bool check_sign_law(const WeightComplexResult<S>& r, std::string* why) {
  for (const auto& [k, rt] : r.routes) {
    if (rt[0] != rt[1] || rt[1] != rt[2])
      return fail(why, "route expressions for d^" + std::to_string(k) + " disagree"), false;
    if (rt[2] != r.wc.d(k)) return fail(why, "d^" + std::to_string(k) + " differs from -beta gamma"), false;
  }
  const ValidationReport v = validate(r.wc);
  if (!v.valid) return fail(why, "weight complex: " + v.message), false;
  for (const auto& [k, x] : r.wc.terms())
    if (!r.routes.count(k)) return fail(why, "no trace for degree " + std::to_string(k)), false;
  return true;
}

template <class S>
bool check_equivalence(const WeightComplexResult<S>& r, const Complex<S>& x, std::string* why) {
  if (!is_chain_map(r.compare) || !is_chain_map(r.compare_inv))
    return fail(why, "comparison with the minimal model is not a chain map"), false;
  if (!maps_equal(compose(r.compare_inv, r.compare), identity(r.wc)) ||
      !maps_equal(compose(r.compare, r.compare_inv), identity(r.model.minimal)))
    return fail(why, "comparison is not an isomorphism"), false;
  if (!(r.to.target == x) || !(r.from.source == x)) return fail(why, "equivalence has the wrong ends"), false;
  if (!is_chain_map(r.to) || !is_chain_map(r.from)) return fail(why, "equivalence maps are not chain maps"), false;
  if (!maps_equal(compose(r.from, r.to), identity(r.wc))) return fail(why, "from o to is not the identity"), false;
  if (!witness_holds(compose(r.to, r.from), identity(x), r.witness))
    return fail(why, "homotopy witness for to o from fails"), false;
  return true;
}

template <class S>
ChainMap<S> weight_complex_of_map(const ChainMap<S>& f) {
  const WeightComplexResult<S> ra = weight_complex(f.source);
  const WeightComplexResult<S> rb = weight_complex(f.target);
  const ChainMap<S> fm = compose(rb.model.p, compose(f, ra.model.i));
  const Complex<S>& ma = ra.model.minimal;
  const Complex<S>& mb = rb.model.minimal;
  std::map<int, Matrix<S>> comps;
  for (const auto& [k, x] : ra.wc.terms()) {
    if (rb.wc.term(k).is_zero()) continue;
    const MinimizeResult<S> a = build_step(ma, k).minus_model;
    const MinimizeResult<S> b = build_step(mb, k).minus_model;
    const Matrix<S> mid = block_diag(fm(k + 1), fm(k));
    comps[k] = b.p(0) * mid * a.i(0);
  }
  return ChainMap<S>(ra.wc, rb.wc, std::move(comps));
}

// ---------------------------------------------------------------- axioms

namespace {

template <class S>
Complex<S> heart_object(const Instance& inst, Rng& rng) {
  std::map<int, Obj> t{{0, random_object(inst, rng, 3)}};
  return Complex<S>(inst, std::move(t), {});
}

template <class S>
Complex<S> shifted_to(const Complex<S>& x, int amount) {
  return shift(x, amount);
}

template <class S>
struct SampleCtx {
  const Instance& inst;
  std::uint64_t index;
  AxiomReport& report;

  void record(const std::string& axiom, bool ok, const std::string& msg, std::vector<Complex<S>> data) {
    if (ok) {
      ++report.passed[axiom];
      return;
    }
    AxiomFailure f{axiom, index, msg, {}};
    for (const auto& c : data) f.data.push_back(serialize_complex(c));
    report.failures.push_back(std::move(f));
  }
};

WeightWindow offset(WeightWindow w, int t) {
  if (!w.zero) {
    w.lo += t;
    w.hi += t;
  }
  return w;
}

WeightWindow hull(const WeightWindow& a, const WeightWindow& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  return {false, std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace

template <class S>
void verify_axioms_sample(const Instance& inst, std::uint64_t seed, std::uint64_t index, AxiomReport& report) {
  Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(inst.kind()), index);
  SampleCtx<S> ctx{inst, index, report};
  ComplexShape shape;
  shape.max_rank = 5;
  const Complex<S> x = random_complex<S>(inst, rng, shape);
  const Complex<S> y = random_complex<S>(inst, rng, shape);
  const WeightWindow wx = weight_bounds(x), wy = weight_bounds(y);

  auto guarded = [&](const std::string& axiom, std::vector<Complex<S>> data, auto&& body) {
    std::string msg;
    bool ok = false;
    try {
      ok = body(msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    ctx.record(axiom, ok, msg, std::move(data));
  };

  // SP1: summands of a sum sit inside its window, which is the hull of theirs
  guarded("SP1", {x, y}, [&](std::string& msg) {
    const WeightWindow ws = weight_bounds(direct_sum(x, y));
    if (!(ws == hull(wx, wy))) return msg = "window of x+y is " + to_string(ws), false;
    if (!ws.zero && !(in_w_le(x, ws.hi) && in_w_le(y, ws.hi) && in_w_ge(x, ws.lo) && in_w_ge(y, ws.lo)))
      return msg = "a summand leaves the window of the sum", false;
    return true;
  });

  // SP2: shifts move the window by exactly one
  guarded("SP2", {x}, [&](std::string& msg) {
    const WeightWindow up = weight_bounds(shift(x, 1)), down = weight_bounds(shift(x, -1));
    if (!(up == offset(wx, 1)) || !(down == offset(wx, -1))) return msg = "shift does not move the window", false;
    if (in_w_ge(x, 0) && !in_w_ge(shift(x, 1), 0)) return msg = "w>=0 not stable under [1]", false;
    if (in_w_le(x, 0) && !in_w_le(shift(x, -1), 0)) return msg = "w<=0 not stable under [-1]", false;
    return true;
  });

  // SP3: Hom_K(w>=1, w<=0) = 0
  if (!wx.zero && !wy.zero) {
    const Complex<S> a = shifted_to(x, 1 - wx.lo), b = shifted_to(y, -wy.hi);
    guarded("SP3", {a, b}, [&](std::string& msg) {
      const GroupPresentation<S> g = hom_group_K(a, b);
      if (g.free_rank != 0 || !g.invariant_factors.empty()) return msg = "nonzero Hom_K(w>=1, w<=0)", false;
      return true;
    });
  }

  // SP4: truncation triangles with certificates
  {
    const int n = wx.zero ? 0 : rng.uniform(wx.lo - 1, wx.hi);
    guarded("SP4", {x}, [&](std::string& msg) { return certify(weight_truncate(x, n), &msg); });
  }

  // heart extensions split: cone(w : B[-1] -> A) ~ B + A through [[1,0],[s,1]]
  {
    const Complex<S> a = random_representative(heart_object<S>(inst, rng), rng, shape);
    const Complex<S> b = random_representative(heart_object<S>(inst, rng), rng, shape);
    const Complex<S> b1 = shift(b, -1);
    const ChainMap<S> w = random_chain_map(b1, a, rng);
    guarded("heart-splitting", {a, b}, [&](std::string& msg) {
      const auto h = is_homotopic(w, zero_map(b1, a));
      if (!h) return msg = "connecting map B[-1] -> A is not null-homotopic", false;
      const ConeResult<S> cw = cone(w);
      const ConeResult<S> c0 = cone(zero_map(b1, a));
      if (!(c0.cone == direct_sum(b, a))) return msg = "cone of zero is not B + A", false;
      std::map<int, Matrix<S>> fc, gc;
      for (const auto& [k, obj] : cw.cone.terms()) {
        const Index nb = b1.dim(k + 1), na = a.dim(k);
        Matrix<S> s = zeros<S>(na, nb);
        if (auto it = h->s.find(k + 1); it != h->s.end()) s = it->second;
        Matrix<S> phi = eye<S>(nb + na), psi = eye<S>(nb + na);
        phi.bottomLeftCorner(na, nb) = s;
        psi.bottomLeftCorner(na, nb) = -s;
        fc[k] = std::move(phi);
        gc[k] = std::move(psi);
      }
      const ChainMap<S> phi(cw.cone, c0.cone, std::move(fc));
      const ChainMap<S> psi(c0.cone, cw.cone, std::move(gc));
      if (!is_chain_map(phi) || !is_chain_map(psi)) return msg = "splitting is not a chain map", false;
      if (!maps_equal(compose(psi, phi), identity(cw.cone)) || !maps_equal(compose(phi, psi), identity(c0.cone)))
        return msg = "splitting is not invertible", false;
      const WeightWindow wc = weight_bounds(cw.cone);
      if (!wc.zero && !(wc.lo == 0 && wc.hi == 0)) return msg = "extension left the heart", false;
      return true;
    });
  }

  // extension stability of w<=0 and w>=0
  if (!wx.zero && !wy.zero) {
    const Complex<S> a = shifted_to(x, -wx.hi), b = shifted_to(y, -wy.hi);
    const ChainMap<S> g = random_chain_map(shift(b, -1), a, rng);
    const Complex<S> a2 = shifted_to(x, -wx.lo), b2 = shifted_to(y, -wy.lo);
    const ChainMap<S> g2 = random_chain_map(shift(b2, -1), a2, rng);
    guarded("extension", {a, b, a2, b2}, [&](std::string& msg) {
      if (!in_w_le(cone(g).cone, 0)) return msg = "w<=0 not closed under extensions", false;
      if (!in_w_ge(cone(g2).cone, 0)) return msg = "w>=0 not closed under extensions", false;
      return true;
    });
  }
}

AxiomReport verify_axioms(const Instance& inst, int samples, std::uint64_t seed) {
  AxiomReport report;
  report.instance = std::string(inst.name());
  report.seed = seed;
  report.samples = samples;
  for (int i = 0; i < samples; ++i) {
    if (inst.kind() == InstanceKind::FreeModInt)
      verify_axioms_sample<Integer>(inst, seed, i, report);
    else
      verify_axioms_sample<Rational>(inst, seed, i, report);
  }
  return report;
}

template <class S>
DualityReport weight_reversal_under_duality(const Complex<S>& x, int s) {
  if (!x.instance().is_tate()) throw DomainError("weight reversal is defined on TateHeart only");
  DualityReport r;
  r.window = weight_bounds(x);
  r.dual_window = weight_bounds(dual_complex(x, s));
  if (r.window.zero)
    r.ok = r.dual_window.zero;
  else
    r.ok = !r.dual_window.zero && r.dual_window.lo == -r.window.hi && r.dual_window.hi == -r.window.lo;
  return r;
}

#define WCX_INSTANTIATE(S)                                                                         \
  template WeightWindow weight_bounds(const Complex<S>&);                                          \
  template bool in_w_le(const Complex<S>&, int);                                                   \
  template bool in_w_ge(const Complex<S>&, int);                                                   \
  template WeightTriangle<S> weight_truncate(const Complex<S>&, int);                              \
  template bool certify(const WeightTriangle<S>&, std::string*);                                   \
  template WeightComplexResult<S> weight_complex(const Complex<S>&);                               \
  template bool check_sign_law(const WeightComplexResult<S>&, std::string*);                       \
  template bool check_equivalence(const WeightComplexResult<S>&, const Complex<S>&, std::string*); \
  template ChainMap<S> weight_complex_of_map(const ChainMap<S>&);                                  \
  template void verify_axioms_sample<S>(const Instance&, std::uint64_t, std::uint64_t, AxiomReport&); \
  template DualityReport weight_reversal_under_duality(const Complex<S>&, int);

WCX_INSTANTIATE(Rational)
WCX_INSTANTIATE(Integer)

}  // namespace wcx
