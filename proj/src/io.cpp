#include "wcx/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wcx {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -(1LL << 30) || v > (1LL << 30)) schema_error(path, "integer out of range");
  return static_cast<int>(v);
}

int as_degree(const std::string& key, const std::string& path) {
  try {
    size_t used = 0;
    const int k = std::stoi(key, &used);
    if (used != key.size() || std::to_string(k) != key) throw std::invalid_argument("");
    return k;
  } catch (const std::exception&) {
    schema_error(path, "degree key '" + key + "' is not a canonical integer");
  }
}

template <class S>
S as_scalar(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a number string such as \"3/2\"");
  try {
    return parse_scalar<S>(j.get<std::string>());
  } catch (const ParseError& e) {
    schema_error(path, e.what());
  }
}

// ---------------------------------------------------------------- instances

Json algebra_to_json(const Algebra& a) {
  Json unit = Json::array();
  for (Index l = 0; l < a.dim(); ++l) unit.push_back(to_string(a.unit()(l)));
  Json table = Json::array();
  for (const auto& row : a.table()) {
    Json r = Json::array();
    for (const auto& v : row) {
      Json e = Json::array();
      for (Index l = 0; l < v.size(); ++l) e.push_back(to_string(v(l)));
      r.push_back(std::move(e));
    }
    table.push_back(std::move(r));
  }
  return Json{{"unit", std::move(unit)}, {"table", std::move(table)}};
}

Algebra algebra_from_json(const Json& j, const std::string& path) {
  const Json& unit = field(j, path, "unit");
  const Json& table = field(j, path, "table");
  if (!unit.is_array() || unit.empty()) schema_error(path + ".unit", "expected a non-empty array");
  const size_t n = unit.size();
  Vector<Rational> u(n);
  for (size_t l = 0; l < n; ++l) u(l) = as_scalar<Rational>(unit[l], path + ".unit[" + std::to_string(l) + "]");
  if (!table.is_array() || table.size() != n) schema_error(path + ".table", "expected " + std::to_string(n) + " rows");
  Algebra::Table t(n);
  for (size_t i = 0; i < n; ++i) {
    const std::string pi = path + ".table[" + std::to_string(i) + "]";
    if (!table[i].is_array() || table[i].size() != n) schema_error(pi, "expected " + std::to_string(n) + " entries");
    for (size_t jj = 0; jj < n; ++jj) {
      const std::string pj = pi + "[" + std::to_string(jj) + "]";
      const Json& v = table[i][jj];
      if (!v.is_array() || v.size() != n) schema_error(pj, "expected " + std::to_string(n) + " coordinates");
      Vector<Rational> e(n);
      for (size_t l = 0; l < n; ++l) e(l) = as_scalar<Rational>(v[l], pj + "[" + std::to_string(l) + "]");
      t[i].push_back(std::move(e));
    }
  }
  try {
    return Algebra(std::move(t), std::move(u));
  } catch (const DomainError& e) {
    schema_error(path, e.what());
  }
}

Instance instance_from_json(const Json& j, const std::string& path) {
  const Json& name = field(j, path, "instance");
  if (!name.is_string()) schema_error(path + ".instance", "expected a string");
  const std::string s = name.get<std::string>();
  if (s == "q") return Instance::rationals();
  if (s == "z") return Instance::integers();
  if (s == "tate") return Instance::tate();
  if (s == "algebra") {
    auto it = j.find("algebra");
    if (it == j.end()) return Instance::algebra(Algebra::dual_numbers());
    return Instance::algebra(algebra_from_json(*it, path + ".algebra"));
  }
  schema_error(path + ".instance", "unknown instance '" + s + "' (expected q, z, tate or algebra)");
}

// ---------------------------------------------------------------- complexes

Json obj_to_json(const Instance& inst, const Obj& x) {
  if (inst.is_tate()) return Json(x.twists());
  return Json(x.size());
}

Obj obj_from_json(const Instance& inst, const Json& j, const std::string& path) {
  if (inst.is_tate()) {
    if (!j.is_array()) schema_error(path, "expected an array of twists");
    std::vector<int> t;
    for (size_t i = 0; i < j.size(); ++i) t.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    return Obj::tate(std::move(t));
  }
  const int r = as_int(j, path);
  if (r < 0) schema_error(path, "rank must be non-negative");
  return Obj::free(r);
}

template <class S>
Json matrix_to_json(const Instance& inst, const Matrix<S>& m) {
  const Index bs = inst.block_size();
  Json rows = Json::array();
  for (Index i = 0; i < m.rows() / bs; ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols() / bs; ++j) {
      if (bs == 1) {
        row.push_back(to_string(m(i, j)));
      } else if constexpr (is_field_v<S>) {
        // coordinates of the entry a, read off as L_a applied to the unit
        const Vector<S> a = m.block(i * bs, j * bs, bs, bs) * inst.algebra().unit();
        Json e = Json::array();
        for (Index l = 0; l < bs; ++l) e.push_back(to_string(a(l)));
        row.push_back(std::move(e));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Matrix<S> matrix_from_json(const Instance& inst, const Json& j, Index rows, Index cols, const std::string& path) {
  const Index bs = inst.block_size();
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    schema_error(path, "expected " + std::to_string(rows) + " rows");
  Matrix<S> m = zeros<S>(rows * bs, cols * bs);
  for (Index i = 0; i < rows; ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    const Json& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      schema_error(pi, "expected " + std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c) {
      const std::string pc = pi + "[" + std::to_string(c) + "]";
      if (bs == 1) {
        m(i, c) = as_scalar<S>(row[c], pc);
        continue;
      }
      if constexpr (is_field_v<S>) {
        const Json& e = row[c];
        if (!e.is_array() || static_cast<Index>(e.size()) != bs)
          schema_error(pc, "expected " + std::to_string(bs) + " algebra coordinates");
        Vector<Rational> a(bs);
        for (Index l = 0; l < bs; ++l) a(l) = as_scalar<Rational>(e[l], pc + "[" + std::to_string(l) + "]");
        m.block(i * bs, c * bs, bs, bs) = inst.algebra().left_multiplication(a);
      }
    }
  }
  return m;
}

template <class S>
Json complex_to_json(const Complex<S>& c) {
  const Instance& inst = c.instance();
  Json j;
  j["instance"] = std::string(inst.name());
  if (inst.kind() == InstanceKind::AlgebraMod) j["algebra"] = algebra_to_json(inst.algebra());
  Json terms = Json::object();
  for (const auto& [k, x] : c.terms()) terms[std::to_string(k)] = obj_to_json(inst, x);
  Json diffs = Json::object();
  for (const auto& [k, m] : c.diffs()) diffs[std::to_string(k)] = matrix_to_json(inst, m);
  j["terms"] = std::move(terms);
  j["diffs"] = std::move(diffs);
  return j;
}

template <class S>
Complex<S> complex_from_json(const Instance& inst, const Json& j, const std::string& path) {
  const Json& terms = field(j, path, "terms");
  if (!terms.is_object()) schema_error(path + ".terms", "expected an object keyed by degree");
  std::map<int, Obj> objs;
  for (const auto& [key, v] : terms.items()) {
    const std::string p = path + ".terms." + key;
    objs[as_degree(key, p)] = obj_from_json(inst, v, p);
  }
  auto gens = [&](int k) {
    auto it = objs.find(k);
    return it == objs.end() ? Index(0) : Index(it->second.size());
  };
  std::map<int, Matrix<S>> diffs;
  auto it = j.find("diffs");
  if (it != j.end()) {
    if (!it->is_object()) schema_error(path + ".diffs", "expected an object keyed by degree");
    for (const auto& [key, v] : it->items()) {
      const std::string p = path + ".diffs." + key;
      const int k = as_degree(key, p);
      diffs[k] = matrix_from_json<S>(inst, v, gens(k + 1), gens(k), p);
    }
  }
  try {
    return Complex<S>(inst, std::move(objs), std::move(diffs));
  } catch (const std::invalid_argument& e) {
    schema_error(path, e.what());
  }
}

AnyComplex any_complex_from_json(const Json& j, const std::string& path) {
  const Instance inst = instance_from_json(j, path);
  if (inst.kind() == InstanceKind::FreeModInt) return complex_from_json<Integer>(inst, j, path);
  return complex_from_json<Rational>(inst, j, path);
}

// ---------------------------------------------------------------- expressions

Json expr_to_json(const VarietyExpr& e) {
  using V = VarietyExpr;
  return std::visit(
      [&](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, V::Point>) {
          return Json{{"op", "point"}};
        } else if constexpr (std::is_same_v<T, V::Affine>) {
          return Json{{"op", "affine"}, {"n", n.n}};
        } else if constexpr (std::is_same_v<T, V::Proj>) {
          return Json{{"op", "proj"}, {"n", n.n}};
        } else if constexpr (std::is_same_v<T, V::Torus>) {
          return Json{{"op", "torus"}, {"k", n.k}};
        } else if constexpr (std::is_same_v<T, V::Toric>) {
          Json fan = Json::array();
          for (const auto& c : n.fan) fan.push_back(Json{{"dim", c.dim}, {"count", c.count}});
          return Json{{"op", "toric"}, {"n", n.n}, {"fan", std::move(fan)}};
        } else if constexpr (std::is_same_v<T, V::DisjointUnion>) {
          Json parts = Json::array();
          for (const auto& p : n.parts) parts.push_back(expr_to_json(p));
          return Json{{"op", "union"}, {"parts", std::move(parts)}};
        } else if constexpr (std::is_same_v<T, V::Product>) {
          return Json{{"op", "product"}, {"parts", Json::array({expr_to_json(*n.a), expr_to_json(*n.b)})}};
        } else if constexpr (std::is_same_v<T, V::OpenComplement>) {
          return Json{{"op", "open_complement"}, {"x", expr_to_json(*n.x)}, {"z", expr_to_json(*n.z)}};
        } else if constexpr (std::is_same_v<T, V::BlowUp>) {
          return Json{{"op", "blowup"}, {"x", expr_to_json(*n.x)}, {"z", expr_to_json(*n.z)}, {"codim", n.codim}};
        } else {
          Json cls = Json::array();
          for (const auto& [exp, c] : n.cls.coeffs()) cls.push_back(Json::array({exp, c.str()}));
          return Json{{"op", "smooth_proper"}, {"class", std::move(cls)}, {"dim", n.dim}};
        }
      },
      e.node());
}

Integer coeff_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const ParseError& e) {
      schema_error(path, e.what());
    }
  }
  schema_error(path, "expected an integer coefficient");
}

VarietyExpr expr_from_json(const Json& j, const std::string& path) {
  const Json& opj = field(j, path, "op");
  if (!opj.is_string()) schema_error(path + ".op", "expected a string");
  const std::string op = opj.get<std::string>();
  auto sub = [&](const char* key) { return expr_from_json(field(j, path, key), path + "." + key); };
  auto parts = [&]() {
    const Json& ps = field(j, path, "parts");
    if (!ps.is_array()) schema_error(path + ".parts", "expected an array");
    std::vector<VarietyExpr> out;
    for (size_t i = 0; i < ps.size(); ++i) out.push_back(expr_from_json(ps[i], path + ".parts[" + std::to_string(i) + "]"));
    return out;
  };
  auto num = [&](const char* key) { return as_int(field(j, path, key), path + "." + key); };

  if (op == "point") return VarietyExpr::point();
  if (op == "affine") return VarietyExpr::affine(num("n"));
  if (op == "proj") return VarietyExpr::proj(num("n"));
  if (op == "torus") return VarietyExpr::torus(num("k"));
  if (op == "toric") {
    const Json& fan = field(j, path, "fan");
    if (!fan.is_array()) schema_error(path + ".fan", "expected an array");
    std::vector<VarietyExpr::Cones> cones;
    for (size_t i = 0; i < fan.size(); ++i) {
      const std::string p = path + ".fan[" + std::to_string(i) + "]";
      cones.push_back({as_int(field(fan[i], p, "dim"), p + ".dim"), as_int(field(fan[i], p, "count"), p + ".count")});
    }
    return VarietyExpr::toric(num("n"), std::move(cones));
  }
  if (op == "union") return VarietyExpr::disjoint_union(parts());
  if (op == "product") {
    auto ps = parts();
    if (ps.size() != 2) schema_error(path + ".parts", "product takes exactly two factors");
    return VarietyExpr::product(std::move(ps[0]), std::move(ps[1]));
  }
  if (op == "open_complement") return VarietyExpr::open_complement(sub("x"), sub("z"));
  if (op == "blowup") return VarietyExpr::blow_up(sub("x"), sub("z"), num("codim"));
  if (op == "smooth_proper") {
    const Json& cls = field(j, path, "class");
    if (!cls.is_array()) schema_error(path + ".class", "expected an array of [exponent, coefficient] pairs");
    std::map<int, Integer> coeffs;
    for (size_t i = 0; i < cls.size(); ++i) {
      const std::string p = path + ".class[" + std::to_string(i) + "]";
      if (!cls[i].is_array() || cls[i].size() != 2) schema_error(p, "expected [exponent, coefficient]");
      const int e = as_int(cls[i][0], p + "[0]");
      if (coeffs.count(e)) schema_error(p, "repeated exponent " + std::to_string(e));
      coeffs[e] = coeff_from_json(cls[i][1], p + "[1]");
    }
    return VarietyExpr::smooth_proper(LaurentClass(std::move(coeffs)), num("dim"));
  }
  schema_error(path + ".op", "unknown op '" + op + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyComplex parse_complex(std::string_view text) { return any_complex_from_json(parse_json(text), "$"); }

template <class S>
std::string serialize_complex(const Complex<S>& c) {
  return dump(complex_to_json(c));
}

AnyChainMap parse_chain_map(std::string_view text) {
  const Json j = parse_json(text);
  AnyComplex src = any_complex_from_json(field(j, "$", "source"), "$.source");
  AnyComplex tgt = any_complex_from_json(field(j, "$", "target"), "$.target");
  if (src.index() != tgt.index()) throw ParseError("$: source and target use different instances");
  const Json& comps = field(j, "$", "components");
  if (!comps.is_object()) schema_error("$.components", "expected an object keyed by degree");
  return std::visit(
      [&](auto& a) -> AnyChainMap {
        using C = std::decay_t<decltype(a)>;
        using S = std::conditional_t<std::is_same_v<C, Complex<Rational>>, Rational, Integer>;
        const C& b = std::get<C>(tgt);
        if (!(a.instance() == b.instance())) throw ParseError("$: source and target use different instances");
        std::map<int, Matrix<S>> m;
        for (const auto& [key, v] : comps.items()) {
          const std::string p = "$.components." + key;
          const int k = as_degree(key, p);
          m[k] = matrix_from_json<S>(a.instance(), v, b.term(k).size(), a.term(k).size(), p);
        }
        try {
          return ChainMap<S>(a, b, std::move(m));
        } catch (const std::invalid_argument& e) {
          schema_error("$.components", e.what());
        }
      },
      src);
}

template <class S>
std::string serialize_chain_map(const ChainMap<S>& f) {
  Json comps = Json::object();
  for (const auto& [k, m] : f.components()) comps[std::to_string(k)] = matrix_to_json(f.source.instance(), m);
  Json j;
  j["source"] = complex_to_json(f.source);
  j["target"] = complex_to_json(f.target);
  j["components"] = std::move(comps);
  return dump(j);
}

VarietyExpr parse_expr(std::string_view text) { return expr_from_json(parse_json(text), "$"); }

std::string serialize_expr(const VarietyExpr& e) { return dump(expr_to_json(e)); }

SquareSpec parse_square(std::string_view text) {
  const Json j = parse_json(text);
  const Json& kind = field(j, "$", "kind");
  if (!kind.is_string()) schema_error("$.kind", "expected a string");
  SquareKind k;
  if (kind == "nisnevich")
    k = SquareKind::Nisnevich;
  else if (kind == "cdh")
    k = SquareKind::ProperCdh;
  else
    schema_error("$.kind", "expected \"nisnevich\" or \"cdh\"");
  auto e = [&](const char* key) { return expr_from_json(field(j, "$", key), std::string("$.") + key); };
  SquareSpec sq{k, e("x"), e("a"), e("b"), e("y")};
  return sq;
}

std::string serialize_square(const SquareSpec& sq) {
  Json j;
  j["kind"] = sq.kind == SquareKind::Nisnevich ? "nisnevich" : "cdh";
  j["x"] = expr_to_json(sq.x);
  j["a"] = expr_to_json(sq.a);
  j["b"] = expr_to_json(sq.b);
  j["y"] = expr_to_json(sq.y);
  return dump(j);
}

template std::string serialize_complex(const Complex<Rational>&);
template std::string serialize_complex(const Complex<Integer>&);
template std::string serialize_chain_map(const ChainMap<Rational>&);
template std::string serialize_chain_map(const ChainMap<Integer>&);

}  // namespace wcx
