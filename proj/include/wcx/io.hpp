#pragma once

#include "wcx/complex.hpp"
#include "wcx/motive.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace wcx {

// JSON file formats. Numbers are exact strings ("3/2"); objects are ranks,
// or twist arrays on the Tate instance; algebra matrix entries are arrays of
// algebra coordinates. Parse failures throw ParseError naming the field path
// (or line and column for syntax errors).

using AnyComplex = std::variant<Complex<Rational>, Complex<Integer>>;
using AnyChainMap = std::variant<ChainMap<Rational>, ChainMap<Integer>>;

std::string read_text_file(const std::string& path);

AnyComplex parse_complex(std::string_view text);
template <class S>
std::string serialize_complex(const Complex<S>& c);

/// {"source": complex, "target": complex, "components": {"<degree>": matrix}}
AnyChainMap parse_chain_map(std::string_view text);
template <class S>
std::string serialize_chain_map(const ChainMap<S>& f);

VarietyExpr parse_expr(std::string_view text);
std::string serialize_expr(const VarietyExpr& e);

/// {"kind": "nisnevich"|"cdh", "x": expr, "a": expr, "b": expr, "y": expr}
SquareSpec parse_square(std::string_view text);
std::string serialize_square(const SquareSpec& sq);

}  // namespace wcx
