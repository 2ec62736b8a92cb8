#pragma once

// Small expression language for scene files. Three comma-separated coordinate
// expressions compile to a map that evaluates either as a surface jet (two
// parameters) or a curve jet (one parameter).
//
// Grammar (LL(1), hand-written recursive descent):
//   triple  := expr "," expr "," expr
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := ("-") factor | power
//   power   := atom ("^" factor)?
//   atom    := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
// Functions: sin, cos, sqrt, exp. Constant: pi. "^" requires a constant
// integer exponent. U+2212 is accepted as a minus sign.

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "invsurf/jet.hpp"

namespace invsurf {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryOp { Neg };

struct Expr {
    enum class Kind { Number, Variable, Unary, Binary, Call };

    Kind kind;
    std::size_t offset = 0; // byte offset of this node in the source text
    double number = 0.0;    // Number
    std::string name;       // Variable / Call
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    int pow_exponent = 0;   // folded integer exponent for Pow nodes
    std::vector<std::shared_ptr<const Expr>> children;
};

using ExprPtr = std::shared_ptr<const Expr>;

bool structurally_equal(const Expr& a, const Expr& b);

// Canonical fully parenthesized rendering; reparsing it reproduces the tree.
std::string print_expr(const Expr& e);

enum class MapKind { Auto, Curve, Surface };

// Three coordinate expressions plus their declared parameters. Immutable and
// shareable across threads.
class CompiledMap {
public:
    int arity() const noexcept { return arity_; }
    const std::array<std::string, 2>& params() const noexcept { return params_; }
    const std::array<ExprPtr, 3>& components() const noexcept { return comps_; }
    const std::string& source() const noexcept { return source_; }

    std::string canonical() const;

    // Jet evaluation by structural recursion over jet_apply primitives.
    SurfaceJet2 eval_surface(double a, double b) const; // arity 2
    CurveJet3 eval_curve(double t) const;               // arity 1

    Vec3 point(double a, double b = 0.0) const;

private:
    friend CompiledMap parse(std::string_view, MapKind);
    std::array<ExprPtr, 3> comps_;
    std::array<std::string, 2> params_;
    int arity_ = 1;
    std::string source_;
};

// Parses "expr, expr, expr". With MapKind::Auto the parameter set is inferred
// from the identifiers used: {t} or {s} declare a curve, subsets of {s,u} or
// {u,v} declare a surface; an all-constant triple defaults to a curve in t.
CompiledMap parse(std::string_view text, MapKind kind = MapKind::Auto);

} // namespace invsurf
