#pragma once

// The generic pipeline: fundamental forms, normal, curvatures, Weingarten
// matrix and Christoffel symbols of any parametric surface, straight from its
// order-2 jet. Everything here is pure; models are immutable.

#include <functional>
#include <optional>
#include <string>

#include "invsurf/expr.hpp"
#include "invsurf/jet.hpp"

namespace invsurf {

struct ParamDomain {
    double s0 = 0.0, s1 = 1.0;
    double u0 = 0.0, u1 = 1.0;
};

// First/second fundamental form coefficients and the unit normal. Predictor
// output (inversion module) carries coefficients only, normal absent.
struct FundForms {
    double E = 0.0, F = 0.0, G = 0.0;
    double e = 0.0, f = 0.0, g = 0.0;
    std::optional<Vec3> normal;
};

struct CurvatureData {
    double K = 0.0; // Gaussian curvature
    double H = 0.0; // mean curvature
};

// Shape operator in the coordinate basis (d_s, d_u); trace = 2H, det = K.
struct Weingarten {
    Mat2 m = Mat2::Zero();
};

// Six Christoffel symbols of the induced metric, lower indices symmetric.
struct Christoffels {
    double g1_11 = 0.0, g2_11 = 0.0;
    double g1_12 = 0.0, g2_12 = 0.0;
    double g1_22 = 0.0, g2_22 = 0.0;
};

class SurfaceModel {
public:
    using JetFn = std::function<SurfaceJet2(double, double)>;
    using ExcludeFn = std::function<bool(double, double)>;

    SurfaceModel(JetFn jets, ParamDomain domain, ExcludeFn excluded = {},
                 std::string description = "surface");

    // Throws ExcludedPoint when the exclusion predicate fires.
    SurfaceJet2 jet(double s, double u) const;
    Vec3 point(double s, double u) const { return jet(s, u).p; }
    bool excluded(double s, double u) const;
    const ParamDomain& domain() const noexcept { return domain_; }
    const std::string& description() const noexcept { return description_; }

private:
    JetFn jets_;
    ParamDomain domain_;
    ExcludeFn excluded_;
    std::string description_;
};

SurfaceModel surface_from_map(const CompiledMap& map, ParamDomain domain);

// E=<x_s,x_s>, F=<x_s,x_u>, G=<x_u,x_u>; U=(x_s X x_u)/|x_s X x_u|;
// e=<x_ss,U>, f=<x_su,U>, g=<x_uu,U>. Throws SingularPoint if EG-F^2 <= 1e-12.
FundForms fund_forms(const SurfaceJet2& jet);
FundForms fund_forms(const SurfaceModel& surface, double s, double u);

// K=(eg-f^2)/(EG-F^2), H=(eG-2fF+gE)/(2(EG-F^2)).
CurvatureData curvatures(const FundForms& forms);

// First-form inverse times second form.
Weingarten weingarten(const FundForms& forms);

// Gamma^k_ij = sum_l g^{kl} <x_ij, x_l>; needs only order-2 jets.
Christoffels christoffel(const SurfaceJet2& jet);
Christoffels christoffel(const SurfaceModel& surface, double s, double u);

} // namespace invsurf
