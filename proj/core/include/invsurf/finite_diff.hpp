#pragma once

// Central finite differences over user-supplied point maps. This is the
// independent derivative oracle: it never touches jet arithmetic, so the two
// paths can be compared against each other. Every stencil here has truncation
// error O(h^2).

#include <cmath>
#include <functional>

#include "invsurf/errors.hpp"
#include "invsurf/jet.hpp"
#include "invsurf/vec.hpp"

namespace invsurf {

using CurvePointFn = std::function<Vec3(double)>;
using SurfacePointFn = std::function<Vec3(double, double)>;

// Default steps: truncation/rounding balance for double precision.
inline double fd_step_order12(double t) { return 1e-4 * std::max(1.0, std::abs(t)); }
inline double fd_step_order3(double t) { return 1e-3 * std::max(1.0, std::abs(t)); }

namespace detail {

inline void check_finite(const Vec3& v) {
    if (!v.allFinite()) throw NonFiniteSample("finite-difference stencil hit a non-finite sample");
}

} // namespace detail

// Derivatives of a space curve to order 3 from a 5-point stencil on [t-2h, t+2h].
inline CurveJet3 fd_jet_curve(const CurvePointFn& map, double t, double h) {
    if (!(h > 0.0)) throw InvalidParam("finite-difference step must be positive");
    const Vec3 m2 = map(t - 2.0 * h);
    const Vec3 m1 = map(t - h);
    const Vec3 p0 = map(t);
    const Vec3 p1 = map(t + h);
    const Vec3 p2 = map(t + 2.0 * h);
    for (const Vec3* v : {&m2, &m1, &p0, &p1, &p2}) detail::check_finite(*v);

    CurveJet3 j;
    j.p = p0;
    j.d1 = (p1 - m1) / (2.0 * h);
    j.d2 = (p1 - 2.0 * p0 + m1) / (h * h);
    j.d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
    return j;
}

// Default-step variant: h = 1e-4*max(1,|t|) for orders 1-2, 1e-3*max(1,|t|) for order 3.
inline CurveJet3 fd_jet_curve(const CurvePointFn& map, double t) {
    CurveJet3 j = fd_jet_curve(map, t, fd_step_order12(t));
    j.d3 = fd_jet_curve(map, t, fd_step_order3(t)).d3;
    return j;
}

// Two-variable stencil including the cross term.
inline SurfaceJet2 fd_jet_surface(const SurfacePointFn& map, double s, double u, double h) {
    if (!(h > 0.0)) throw InvalidParam("finite-difference step must be positive");
    const Vec3 c00 = map(s, u);
    const Vec3 sp = map(s + h, u);
    const Vec3 sm = map(s - h, u);
    const Vec3 up = map(s, u + h);
    const Vec3 um = map(s, u - h);
    const Vec3 pp = map(s + h, u + h);
    const Vec3 pm = map(s + h, u - h);
    const Vec3 mp = map(s - h, u + h);
    const Vec3 mm = map(s - h, u - h);
    for (const Vec3* v : {&c00, &sp, &sm, &up, &um, &pp, &pm, &mp, &mm}) detail::check_finite(*v);

    SurfaceJet2 j;
    j.p = c00;
    j.ps = (sp - sm) / (2.0 * h);
    j.pu = (up - um) / (2.0 * h);
    j.pss = (sp - 2.0 * c00 + sm) / (h * h);
    j.puu = (up - 2.0 * c00 + um) / (h * h);
    j.psu = (pp - pm - mp + mm) / (4.0 * h * h);
    return j;
}

inline SurfaceJet2 fd_jet_surface(const SurfacePointFn& map, double s, double u) {
    const double h = 1e-4 * std::max({1.0, std::abs(s), std::abs(u)});
    return fd_jet_surface(map, s, u, h);
}

} // namespace invsurf
