#pragma once

#include "wcx/k0.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace wcx {

/// Tate-type variety expression. Constructors validate well-formedness
/// (MalformedExpr, NegativeCodim), so every value is a well-formed AST.
class VarietyExpr {
 public:
  using Ptr = std::shared_ptr<const VarietyExpr>;

  struct Point {
    bool operator==(const Point&) const = default;
  };
  struct Affine {
    int n;
    bool operator==(const Affine&) const = default;
  };
  struct Proj {
    int n;
    bool operator==(const Proj&) const = default;
  };
  struct Torus {
    int k;
    bool operator==(const Torus&) const = default;
  };
  struct Cones {
    int dim;
    int count;
    bool operator==(const Cones&) const = default;
  };
  struct Toric {
    int n;
    std::vector<Cones> fan;
    bool operator==(const Toric&) const = default;
  };
  struct DisjointUnion {
    std::vector<VarietyExpr> parts;
  };
  struct Product {
    Ptr a, b;
  };
  struct OpenComplement {
    Ptr x, z;
  };
  struct BlowUp {
    Ptr x, z;
    int codim;
  };
  struct SmoothProper {
    LaurentClass cls;
    int dim;
  };
  using Node = std::variant<Point, Affine, Proj, Torus, Toric, DisjointUnion, Product, OpenComplement, BlowUp,
                            SmoothProper>;

  static VarietyExpr point();
  static VarietyExpr affine(int n);
  static VarietyExpr proj(int n);
  static VarietyExpr torus(int k);
  static VarietyExpr toric(int n, std::vector<Cones> fan);
  static VarietyExpr disjoint_union(std::vector<VarietyExpr> parts);
  static VarietyExpr product(VarietyExpr a, VarietyExpr b);
  static VarietyExpr open_complement(VarietyExpr x, VarietyExpr z);
  static VarietyExpr blow_up(VarietyExpr x, VarietyExpr z, int codim);
  static VarietyExpr smooth_proper(LaurentClass cls, int dim);

  const Node& node() const { return node_; }
  int dim() const { return dim_; }

  friend bool operator==(const VarietyExpr& a, const VarietyExpr& b);

 private:
  VarietyExpr(Node n, int d) : node_(std::move(n)), dim_(d) {}
  Node node_;
  int dim_;
};

inline int dim(const VarietyExpr& e) { return e.dim(); }
LaurentClass chi(const VarietyExpr& e);
LaurentClass chi_dual(const VarietyExpr& e, int s = 0);

struct DegreeInterval {
  int lo, hi;
  bool operator==(const DegreeInterval&) const = default;
};
struct WindowPair {
  DegreeInterval forward, dual;
};
/// Guaranteed degree support of the weight complex and of its dual.
WindowPair weight_window(const VarietyExpr& e);

/// chi(x) == chi(x - z) + chi(z). MalformedExpr if dim z > dim x.
bool check_scissor(const VarietyExpr& x, const VarietyExpr& z);

enum class SquareKind { Nisnevich, ProperCdh };
struct SquareSpec {
  SquareKind kind;
  VarietyExpr x, a, b, y;
};
/// Dimension compatibilities of the square; throws MalformedExpr.
void require_well_formed(const SquareSpec& sq);
/// chi(X) + chi(Y) == chi(A) + chi(B), and the same for the dual characteristic.
bool check_square(const SquareSpec& sq);

}  // namespace wcx
