#pragma once

// Space curves with the full Frenet apparatus. Builtins carry exact analytic
// jets; user curves evaluate through the expression language.

#include <functional>
#include <span>
#include <string>

#include "invsurf/expr.hpp"
#include "invsurf/jet.hpp"

namespace invsurf {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Frenet frame plus curvature data at one parameter value.
// kappa_s is the derivative of kappa with respect to arc length.
struct FrenetData {
    Vec3 T = Vec3::Zero();
    Vec3 N = Vec3::Zero();
    Vec3 B = Vec3::Zero();
    double kappa = 0.0;
    double tau = 0.0;
    double kappa_s = 0.0;
};

class CurveModel {
public:
    using JetFn = std::function<CurveJet3(double)>;
    using KappaSFn = std::function<double(double)>; // analytic kappa_s when available

    CurveModel(JetFn jets, Interval domain, bool arc_length, KappaSFn kappa_s = {},
               std::string description = "curve");

    CurveJet3 jet(double t) const { return jets_(t); }
    Vec3 point(double t) const { return jets_(t).p; }
    bool arc_length() const noexcept { return arc_length_; }
    const Interval& domain() const noexcept { return domain_; }
    const KappaSFn& kappa_s_fn() const noexcept { return kappa_s_; }
    const std::string& description() const noexcept { return description_; }

private:
    JetFn jets_;
    Interval domain_;
    bool arc_length_;
    KappaSFn kappa_s_;
    std::string description_;
};

// Builtins: helix(a,b) and circle(R) are arc-length parametrized;
// twisted_cubic is (t, t^2, t^3) and is not.
CurveModel builtin_curve(const std::string& name, std::span<const double> params,
                         Interval domain = {0.0, 6.283185307179586});

// User curve from a compiled arity-1 map. If arc_length_flag is set, the unit
// speed condition is checked at sample points (CurveNotArcLength otherwise).
CurveModel curve_from_map(const CompiledMap& map, Interval domain, bool arc_length_flag);

// General-parameter Frenet data:
//   kappa = |g' x g''| / |g'|^3,  tau = det(g',g'',g''') / |g' x g''|^2,
//   T = g'/|g'|,  B = (g' x g'')/|g' x g''|,  N = B x T,
//   kappa_s = (dkappa/dt) / |g'|.
FrenetData frenet(const CurveModel& curve, double t);

} // namespace invsurf
