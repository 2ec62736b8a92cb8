#pragma once

// Truncated Taylor jets. Arithmetic propagates exact derivatives through the
// elementary functions the geometry formulas use, so the production pipeline
// carries no truncation error. Finite differences (finite_diff.hpp) exist
// separately as the independent cross-check.
//
// Two flavours:
//   ScalarJet2 - two variables (s,u), derivatives to order 2 (surfaces)
//   ScalarJet3 - one variable, derivatives to order 3 (curves; torsion needs
//                the third derivative)

#include <cmath>
#include <span>

#include "invsurf/errors.hpp"
#include "invsurf/vec.hpp"

namespace invsurf {

// Denominators smaller than this raise DivisionByZero.
inline constexpr double kDivisionFloor = 1e-300;

// --- two-variable jet to order 2 ----------------------------------------------

struct ScalarJet2 {
    double f = 0.0;
    double fs = 0.0, fu = 0.0;
    double fss = 0.0, fsu = 0.0, fuu = 0.0; // fsu stored once (mixed partials commute)

    static ScalarJet2 constant(double v) { return {v, 0.0, 0.0, 0.0, 0.0, 0.0}; }
    static ScalarJet2 var_s(double v) { return {v, 1.0, 0.0, 0.0, 0.0, 0.0}; }
    static ScalarJet2 var_u(double v) { return {v, 0.0, 1.0, 0.0, 0.0, 0.0}; }
};

inline ScalarJet2 operator+(const ScalarJet2& a, const ScalarJet2& b) {
    return {a.f + b.f, a.fs + b.fs, a.fu + b.fu, a.fss + b.fss, a.fsu + b.fsu, a.fuu + b.fuu};
}

inline ScalarJet2 operator-(const ScalarJet2& a, const ScalarJet2& b) {
    return {a.f - b.f, a.fs - b.fs, a.fu - b.fu, a.fss - b.fss, a.fsu - b.fsu, a.fuu - b.fuu};
}

inline ScalarJet2 operator-(const ScalarJet2& a) {
    return {-a.f, -a.fs, -a.fu, -a.fss, -a.fsu, -a.fuu};
}

inline ScalarJet2 operator*(const ScalarJet2& a, const ScalarJet2& b) {
    ScalarJet2 r;
    r.f = a.f * b.f;
    r.fs = a.fs * b.f + a.f * b.fs;
    r.fu = a.fu * b.f + a.f * b.fu;
    r.fss = a.fss * b.f + 2.0 * a.fs * b.fs + a.f * b.fss;
    r.fsu = a.fsu * b.f + a.fs * b.fu + a.fu * b.fs + a.f * b.fsu;
    r.fuu = a.fuu * b.f + 2.0 * a.fu * b.fu + a.f * b.fuu;
    return r;
}

inline ScalarJet2 operator*(const ScalarJet2& a, double c) {
    return {a.f * c, a.fs * c, a.fu * c, a.fss * c, a.fsu * c, a.fuu * c};
}
inline ScalarJet2 operator*(double c, const ScalarJet2& a) { return a * c; }
inline ScalarJet2 operator+(const ScalarJet2& a, double c) {
    return {a.f + c, a.fs, a.fu, a.fss, a.fsu, a.fuu};
}
inline ScalarJet2 operator+(double c, const ScalarJet2& a) { return a + c; }
inline ScalarJet2 operator-(const ScalarJet2& a, double c) { return a + (-c); }
inline ScalarJet2 operator-(double c, const ScalarJet2& a) { return (-a) + c; }

// h(g) by the chain rule; h0,h1,h2 are h and its derivatives at g.f.
inline ScalarJet2 compose(const ScalarJet2& g, double h0, double h1, double h2) {
    ScalarJet2 r;
    r.f = h0;
    r.fs = h1 * g.fs;
    r.fu = h1 * g.fu;
    r.fss = h2 * g.fs * g.fs + h1 * g.fss;
    r.fsu = h2 * g.fs * g.fu + h1 * g.fsu;
    r.fuu = h2 * g.fu * g.fu + h1 * g.fuu;
    return r;
}

inline ScalarJet2 reciprocal(const ScalarJet2& a) {
    if (std::abs(a.f) < kDivisionFloor) throw DivisionByZero("jet division by zero");
    const double inv = 1.0 / a.f;
    return compose(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline ScalarJet2 operator/(const ScalarJet2& a, const ScalarJet2& b) { return a * reciprocal(b); }
inline ScalarJet2 operator/(const ScalarJet2& a, double c) {
    if (std::abs(c) < kDivisionFloor) throw DivisionByZero("jet division by zero");
    return a * (1.0 / c);
}
inline ScalarJet2 operator/(double c, const ScalarJet2& a) { return reciprocal(a) * c; }

inline ScalarJet2 sin(const ScalarJet2& a) {
    return compose(a, std::sin(a.f), std::cos(a.f), -std::sin(a.f));
}

inline ScalarJet2 cos(const ScalarJet2& a) {
    return compose(a, std::cos(a.f), -std::sin(a.f), -std::cos(a.f));
}

inline ScalarJet2 exp(const ScalarJet2& a) {
    const double v = std::exp(a.f);
    return compose(a, v, v, v);
}

inline ScalarJet2 sqrt(const ScalarJet2& a) {
    if (a.f < 0.0) throw DomainError("jet sqrt of negative value");
    if (a.f < kDivisionFloor) throw DomainError("jet sqrt at zero is not differentiable");
    const double rt = std::sqrt(a.f);
    return compose(a, rt, 0.5 / rt, -0.25 / (rt * a.f));
}

// Integer power by repeated multiplication; exact at zero for n >= 0.
inline ScalarJet2 pow_int(const ScalarJet2& base, int n) {
    if (n < 0) return reciprocal(pow_int(base, -n));
    ScalarJet2 r = ScalarJet2::constant(1.0);
    ScalarJet2 b = base;
    unsigned k = static_cast<unsigned>(n);
    while (k != 0) {
        if (k & 1u) r = r * b;
        k >>= 1u;
        if (k != 0) b = b * b;
    }
    return r;
}

// --- one-variable jet to order 3 ----------------------------------------------

struct ScalarJet3 {
    double f = 0.0;
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;

    static ScalarJet3 constant(double v) { return {v, 0.0, 0.0, 0.0}; }
    static ScalarJet3 variable(double v) { return {v, 1.0, 0.0, 0.0}; }
};

inline ScalarJet3 operator+(const ScalarJet3& a, const ScalarJet3& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline ScalarJet3 operator-(const ScalarJet3& a, const ScalarJet3& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline ScalarJet3 operator-(const ScalarJet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline ScalarJet3 operator*(const ScalarJet3& a, const ScalarJet3& b) {
    ScalarJet3 r;
    r.f = a.f * b.f;
    r.d1 = a.d1 * b.f + a.f * b.d1;
    r.d2 = a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2;
    r.d3 = a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3;
    return r;
}

inline ScalarJet3 operator*(const ScalarJet3& a, double c) {
    return {a.f * c, a.d1 * c, a.d2 * c, a.d3 * c};
}
inline ScalarJet3 operator*(double c, const ScalarJet3& a) { return a * c; }
inline ScalarJet3 operator+(const ScalarJet3& a, double c) { return {a.f + c, a.d1, a.d2, a.d3}; }
inline ScalarJet3 operator+(double c, const ScalarJet3& a) { return a + c; }
inline ScalarJet3 operator-(const ScalarJet3& a, double c) { return a + (-c); }
inline ScalarJet3 operator-(double c, const ScalarJet3& a) { return (-a) + c; }

// Faa di Bruno to order 3.
inline ScalarJet3 compose(const ScalarJet3& g, double h0, double h1, double h2, double h3) {
    ScalarJet3 r;
    r.f = h0;
    r.d1 = h1 * g.d1;
    r.d2 = h2 * g.d1 * g.d1 + h1 * g.d2;
    r.d3 = h3 * g.d1 * g.d1 * g.d1 + 3.0 * h2 * g.d1 * g.d2 + h1 * g.d3;
    return r;
}

inline ScalarJet3 reciprocal(const ScalarJet3& a) {
    if (std::abs(a.f) < kDivisionFloor) throw DivisionByZero("jet division by zero");
    const double inv = 1.0 / a.f;
    const double inv2 = inv * inv;
    return compose(a, inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2);
}

inline ScalarJet3 operator/(const ScalarJet3& a, const ScalarJet3& b) { return a * reciprocal(b); }
inline ScalarJet3 operator/(const ScalarJet3& a, double c) {
    if (std::abs(c) < kDivisionFloor) throw DivisionByZero("jet division by zero");
    return a * (1.0 / c);
}
inline ScalarJet3 operator/(double c, const ScalarJet3& a) { return reciprocal(a) * c; }

inline ScalarJet3 sin(const ScalarJet3& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return compose(a, s, c, -s, -c);
}

inline ScalarJet3 cos(const ScalarJet3& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return compose(a, c, -s, -c, s);
}

inline ScalarJet3 exp(const ScalarJet3& a) {
    const double v = std::exp(a.f);
    return compose(a, v, v, v, v);
}

inline ScalarJet3 sqrt(const ScalarJet3& a) {
    if (a.f < 0.0) throw DomainError("jet sqrt of negative value");
    if (a.f < kDivisionFloor) throw DomainError("jet sqrt at zero is not differentiable");
    const double rt = std::sqrt(a.f);
    return compose(a, rt, 0.5 / rt, -0.25 / (rt * a.f), 0.375 / (rt * a.f * a.f));
}

inline ScalarJet3 pow_int(const ScalarJet3& base, int n) {
    if (n < 0) return reciprocal(pow_int(base, -n));
    ScalarJet3 r = ScalarJet3::constant(1.0);
    ScalarJet3 b = base;
    unsigned k = static_cast<unsigned>(n);
    while (k != 0) {
        if (k & 1u) r = r * b;
        k >>= 1u;
        if (k != 0) b = b * b;
    }
    return r;
}

// --- vector-valued jets ---------------------------------------------------------

// Position and all partials of an immersion up to order 2 at one parameter point.
struct SurfaceJet2 {
    Vec3 p = Vec3::Zero();
    Vec3 ps = Vec3::Zero(), pu = Vec3::Zero();
    Vec3 pss = Vec3::Zero(), psu = Vec3::Zero(), puu = Vec3::Zero();

    ScalarJet2 component(int i) const {
        return {p[i], ps[i], pu[i], pss[i], psu[i], puu[i]};
    }

    static SurfaceJet2 from_components(const ScalarJet2& x, const ScalarJet2& y,
                                       const ScalarJet2& z) {
        SurfaceJet2 j;
        j.p = Vec3(x.f, y.f, z.f);
        j.ps = Vec3(x.fs, y.fs, z.fs);
        j.pu = Vec3(x.fu, y.fu, z.fu);
        j.pss = Vec3(x.fss, y.fss, z.fss);
        j.psu = Vec3(x.fsu, y.fsu, z.fsu);
        j.puu = Vec3(x.fuu, y.fuu, z.fuu);
        return j;
    }
};

// Curve position and derivatives to order 3 at one parameter value.
struct CurveJet3 {
    Vec3 p = Vec3::Zero();
    Vec3 d1 = Vec3::Zero(), d2 = Vec3::Zero(), d3 = Vec3::Zero();

    ScalarJet3 component(int i) const { return {p[i], d1[i], d2[i], d3[i]}; }

    static CurveJet3 from_components(const ScalarJet3& x, const ScalarJet3& y,
                                     const ScalarJet3& z) {
        CurveJet3 j;
        j.p = Vec3(x.f, y.f, z.f);
        j.d1 = Vec3(x.d1, y.d1, z.d1);
        j.d2 = Vec3(x.d2, y.d2, z.d2);
        j.d3 = Vec3(x.d3, y.d3, z.d3);
        return j;
    }
};

// --- uniform primitive dispatch --------------------------------------------------

enum class JetOp { Add, Sub, Mul, Div, Neg, PowInt, Sqrt, Sin, Cos, Exp };

namespace detail {

template <typename Jet>
Jet jet_apply_impl(JetOp op, std::span<const Jet> args, int exponent) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw ArityError("jet primitive arity mismatch");
    };
    switch (op) {
        case JetOp::Add: need(2); return args[0] + args[1];
        case JetOp::Sub: need(2); return args[0] - args[1];
        case JetOp::Mul: need(2); return args[0] * args[1];
        case JetOp::Div: need(2); return args[0] / args[1];
        case JetOp::Neg: need(1); return -args[0];
        case JetOp::PowInt: need(1); return pow_int(args[0], exponent);
        case JetOp::Sqrt: need(1); return sqrt(args[0]);
        case JetOp::Sin: need(1); return sin(args[0]);
        case JetOp::Cos: need(1); return cos(args[0]);
        case JetOp::Exp: need(1); return exp(args[0]);
    }
    throw ArityError("unknown jet primitive");
}

} // namespace detail

inline ScalarJet2 jet_apply(JetOp op, std::span<const ScalarJet2> args, int exponent = 0) {
    return detail::jet_apply_impl(op, args, exponent);
}

inline ScalarJet3 jet_apply(JetOp op, std::span<const ScalarJet3> args, int exponent = 0) {
    return detail::jet_apply_impl(op, args, exponent);
}

} // namespace invsurf
