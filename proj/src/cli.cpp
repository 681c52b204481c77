#include "wcx/cli.hpp"

#include "wcx/io.hpp"
#include "wcx/k0.hpp"
#include "wcx/random.hpp"
#include "wcx/weight.hpp"

#include <CLI11.hpp>

#include <algorithm>

namespace wcx {

namespace {

std::string set_string(const std::set<int>& s) {
  std::string out = "{";
  for (int k : s) out += (out.size() > 1 ? ", " : "") + std::to_string(k);
  return out + "}";
}

std::string factors_string(const std::vector<Integer>& f) {
  std::string out = "[";
  for (size_t i = 0; i < f.size(); ++i) out += (i ? ", " : "") + f[i].str();
  return out + "]";
}

void dump_block(std::ostream& out, const std::string& name, const std::string& json) {
  out << "BEGIN " << name << "\n" << json << "END " << name << "\n";
}

template <class S>
int cmd_validate(const Complex<S>& c, std::ostream& out) {
  const ValidationReport r = validate(c);
  out << "INSTANCE: " << c.instance().name() << "\n";
  out << "VALID: " << (r.valid ? "true" : "false") << "\n";
  out << "SUPPORT: " << set_string(r.support) << "\n";
  if (!r.valid) {
    out << "FAILING_DEGREE: " << *r.failing_degree << "\n";
    out << "MESSAGE: " << r.message << "\n";
    dump_block(out, "COUNTEREXAMPLE", serialize_complex(c));
    return kCheckFailed;
  }
  return kOk;
}

template <class S>
int require_valid(const Complex<S>& c, const std::string& which, std::ostream& err) {
  const ValidationReport r = validate(c);
  if (r.valid) return kOk;
  err << "error: " << which << " is not a complex: " << r.message << "\n";
  return kInputError;
}

template <class S>
int cmd_minimize(const Complex<S>& c, std::ostream& out, std::ostream& err) {
  if (int rc = require_valid(c, "input", err)) return rc;
  const MinimizeResult<S> m = minimize(c);
  const bool ok = m.p.source == c && is_chain_map(m.p) && is_chain_map(m.i) &&
                  compose(m.p, m.i).components() == identity(m.minimal).components() &&
                  witness_holds(compose(m.i, m.p), identity(c), m.h);
  out << "SUPPORT: " << set_string(c.support()) << "\n";
  out << "MINIMAL_SUPPORT: " << set_string(m.minimal.support()) << "\n";
  out << "FIELD_MINIMAL: " << (m.field_minimal ? "true" : "false") << "\n";
  out << "EQUIVALENCE: " << (ok ? "verified" : "FAILED") << "\n";
  dump_block(out, "MINIMAL", serialize_complex(m.minimal));
  if (!ok) dump_block(out, "COUNTEREXAMPLE", serialize_complex(c));
  return ok ? kOk : kCheckFailed;
}

template <class S>
int cmd_hom(const Complex<S>& a, const Complex<S>& b, const std::string& cat, std::ostream& out,
            std::ostream& err) {
  if (int rc = require_valid(a, "source", err)) return rc;
  if (int rc = require_valid(b, "target", err)) return rc;
  if (!(a.instance() == b.instance())) {
    err << "error: instance mismatch: " << a.instance().name() << " vs " << b.instance().name() << "\n";
    return kInputError;
  }
  const GroupPresentation<S> g = cat == "K" ? hom_group_K(a, b) : hom_group_QK(a, b);
  out << "CATEGORY: " << cat << "\n";
  out << "FREE_RANK: " << g.free_rank << "\n";
  out << "INVARIANT_FACTORS: " << factors_string(g.invariant_factors) << "\n";
  out << "GENERATORS: " << g.generators.size() << "\n";
  return kOk;
}

template <class S>
int cmd_weight_complex(const Complex<S>& x, std::ostream& out, std::ostream& err) {
  if (int rc = require_valid(x, "input", err)) return rc;
  const WeightComplexResult<S> r = weight_complex(x);
  std::string why_sign, why_eq;
  const bool sign = check_sign_law(r, &why_sign);
  const bool eq = check_equivalence(r, x, &why_eq);
  out << "WINDOW: " << to_string(weight_bounds(x)) << "\n";
  out << "SUPPORT: " << set_string(r.wc.support()) << "\n";
  out << "SIGN_LAW: " << (sign ? "verified" : "FAILED " + why_sign) << "\n";
  out << "EQUIVALENCE: " << (eq ? "verified" : "FAILED " + why_eq) << "\n";
  out << "EULER: " << to_string(euler_char(r.wc)) << "\n";
  dump_block(out, "WEIGHT_COMPLEX", serialize_complex(r.wc));
  if (!(sign && eq)) dump_block(out, "COUNTEREXAMPLE", serialize_complex(x));
  return sign && eq ? kOk : kCheckFailed;
}

template <class S>
int cmd_truncate(const Complex<S>& x, int n, std::ostream& out, std::ostream& err) {
  if (int rc = require_valid(x, "input", err)) return rc;
  const WeightTriangle<S> t = weight_truncate(x, n);
  std::string why;
  const bool ok = certify(t, &why);
  out << "N: " << n << "\n";
  out << "WINDOW: " << to_string(weight_bounds(x)) << "\n";
  out << "LOW_SUPPORT: " << set_string(t.low.support()) << "\n";
  out << "HIGH_SUPPORT: " << set_string(t.high.support()) << "\n";
  out << "CERTIFIED: " << (ok ? "true" : "false " + why) << "\n";
  dump_block(out, "LOW", serialize_complex(t.low));
  dump_block(out, "HIGH", serialize_complex(t.high));
  if (!ok) dump_block(out, "COUNTEREXAMPLE", serialize_complex(x));
  return ok ? kOk : kCheckFailed;
}

int cmd_verify_axioms(const std::string& name, int samples, std::uint64_t seed, int sample, std::ostream& out) {
  const Instance inst = instance_by_name(name);
  AxiomReport r;
  if (sample >= 0) {
    r.instance = std::string(inst.name());
    r.seed = seed;
    r.samples = 1;
    if (inst.kind() == InstanceKind::FreeModInt)
      verify_axioms_sample<Integer>(inst, seed, sample, r);
    else
      verify_axioms_sample<Rational>(inst, seed, sample, r);
  } else {
    r = verify_axioms(inst, samples, seed);
  }
  out << "INSTANCE: " << r.instance << "\n";
  out << "SEED: " << r.seed << "\n";
  out << "SAMPLES: " << r.samples << "\n";
  for (const auto& [axiom, n] : r.passed) out << "PASSED_" << axiom << ": " << n << "\n";
  out << "FAILURES: " << r.failures.size() << "\n";
  for (const auto& f : r.failures) {
    out << "FAILURE: " << f.axiom << " sample " << f.sample << ": " << f.message << "\n";
    out << "REPRODUCE: verify-axioms --instance " << name << " --seed " << seed << " --sample " << f.sample << "\n";
    for (size_t i = 0; i < f.data.size(); ++i) dump_block(out, "COMPLEX " + std::to_string(i), f.data[i]);
  }
  out << "RESULT: " << (r.ok() ? "pass" : "fail") << "\n";
  return r.ok() ? kOk : kCheckFailed;
}

template <class F>
auto with_complex(const std::string& path, F&& f) {
  AnyComplex c = parse_complex(read_text_file(path));
  return std::visit(f, c);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact weight-complex engine"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string path, path2, cat = "K", instance = "tate";
  int n = 0, s = 0, samples = 200, sample = -1;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check d o d = 0 and report the support");
  validate_cmd->add_option("complex", path, "complex file")->required();
  auto* minimize_cmd = app.add_subcommand("minimize", "minimal model with homotopy equivalence");
  minimize_cmd->add_option("complex", path, "complex file")->required();
  auto* hom_cmd = app.add_subcommand("hom", "hom group in K or QK");
  hom_cmd->add_option("--cat", cat, "K or QK")->check(CLI::IsMember({"K", "QK"}));
  hom_cmd->add_option("source", path, "source complex")->required();
  hom_cmd->add_option("target", path2, "target complex")->required();
  auto* wc_cmd = app.add_subcommand("weight-complex", "weight complex with its trace checks");
  wc_cmd->add_option("complex", path, "complex file")->required();
  auto* trunc_cmd = app.add_subcommand("truncate", "weight truncation triangle");
  trunc_cmd->add_option("complex", path, "complex file")->required();
  trunc_cmd->add_option("--n", n, "cut weight");
  auto* axioms_cmd = app.add_subcommand("verify-axioms", "randomized weight-structure axiom suite");
  axioms_cmd->add_option("--instance", instance, "q, z, tate or algebra")
      ->check(CLI::IsMember({"q", "z", "tate", "algebra", "dual"}));
  axioms_cmd->add_option("--samples", samples, "number of samples")->check(CLI::NonNegativeNumber);
  axioms_cmd->add_option("--seed", seed, "generator seed");
  axioms_cmd->add_option("--sample", sample, "rerun a single sample index")->check(CLI::NonNegativeNumber);
  auto* chi_cmd = app.add_subcommand("chi", "motivic Euler characteristic of an expression");
  chi_cmd->add_option("expr", path, "expression file")->required();
  auto* chi_dual_cmd = app.add_subcommand("chi-dual", "dual characteristic of an expression");
  chi_dual_cmd->add_option("expr", path, "expression file")->required();
  chi_dual_cmd->add_option("--s", s, "duality twist");
  auto* square_cmd = app.add_subcommand("check-square", "additivity on a distinguished square");
  square_cmd->add_option("square", path, "square file")->required();
  auto* windows_cmd = app.add_subcommand("windows", "weight windows of an expression");
  windows_cmd->add_option("expr", path, "expression file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (validate_cmd->parsed())
      return with_complex(path, [&](const auto& c) { return cmd_validate(c, out); });
    if (minimize_cmd->parsed())
      return with_complex(path, [&](const auto& c) { return cmd_minimize(c, out, err); });
    if (hom_cmd->parsed()) {
      AnyComplex a = parse_complex(read_text_file(path));
      AnyComplex b = parse_complex(read_text_file(path2));
      if (a.index() != b.index()) throw InstanceMismatch("source and target use different instances");
      return std::visit(
          [&](const auto& x) {
            using C = std::decay_t<decltype(x)>;
            return cmd_hom(x, std::get<C>(b), cat, out, err);
          },
          a);
    }
    if (wc_cmd->parsed())
      return with_complex(path, [&](const auto& c) { return cmd_weight_complex(c, out, err); });
    if (trunc_cmd->parsed())
      return with_complex(path, [&](const auto& c) { return cmd_truncate(c, n, out, err); });
    if (axioms_cmd->parsed()) return cmd_verify_axioms(instance, samples, seed, sample, out);
    if (chi_cmd->parsed()) {
      out << to_string(chi(parse_expr(read_text_file(path)))) << "\n";
      return kOk;
    }
    if (chi_dual_cmd->parsed()) {
      out << to_string(chi_dual(parse_expr(read_text_file(path)), s)) << "\n";
      return kOk;
    }
    if (square_cmd->parsed()) {
      const SquareSpec sq = parse_square(read_text_file(path));
      require_well_formed(sq);
      const bool ok = check_square(sq);
      out << "KIND: " << (sq.kind == SquareKind::Nisnevich ? "nisnevich" : "cdh") << "\n";
      out << "CHI_X: " << to_string(chi(sq.x)) << "\n";
      out << "CHI_A: " << to_string(chi(sq.a)) << "\n";
      out << "CHI_B: " << to_string(chi(sq.b)) << "\n";
      out << "CHI_Y: " << to_string(chi(sq.y)) << "\n";
      out << "RESULT: " << (ok ? "pass" : "fail") << "\n";
      if (!ok) dump_block(out, "SQUARE", serialize_square(sq));
      return ok ? kOk : kCheckFailed;
    }
    if (windows_cmd->parsed()) {
      const VarietyExpr e = parse_expr(read_text_file(path));
      const WindowPair w = weight_window(e);
      out << "DIM: " << e.dim() << "\n";
      out << "FORWARD: [" << w.forward.lo << ", " << w.forward.hi << "]\n";
      out << "DUAL: [" << w.dual.lo << ", " << w.dual.hi << "]\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const MalformedExpr& e) {
    err << "error: malformed expression: " << e.what() << "\n";
    return kInputError;
  } catch (const InstanceMismatch& e) {
    err << "error: instance mismatch: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    err << "error: shape: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace wcx
