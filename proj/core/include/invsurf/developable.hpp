#pragma once

// Tangent developable M(s,u) = gamma(s) + u T(s) of an arc-length curve and
// its inverse surface N = Phi o M: closed-form fundamental forms, curvatures,
// shape operators, Christoffel symbols, and the flat/minimal classification
// predicates. Every quantity here has an independent counterpart in the
// generic pipeline (surface.hpp applied to exact jets), which is how the
// formulas are cross-verified.

#include "invsurf/curve.hpp"
#include "invsurf/inversion.hpp"
#include "invsurf/surface.hpp"

namespace invsurf {

class TangentDevelopableModel {
public:
    // The curve must be arc-length parametrized; |u| >= u_min keeps the domain
    // away from the edge of regression (u = 0). Negative u (second sheet) is
    // allowed.
    TangentDevelopableModel(CurveModel curve, ParamDomain domain, double u_min = 1e-3);

    const CurveModel& curve() const noexcept { return curve_; }
    const ParamDomain& domain() const noexcept { return domain_; }
    double u_min() const noexcept { return u_min_; }

private:
    CurveModel curve_;
    ParamDomain domain_;
    double u_min_;
};

// gamma(s) + u T(s).
Vec3 td_point(const TangentDevelopableModel& model, double s, double u);

// Exact order-2 jet from the Frenet apparatus:
//   M_s = T + u k N, M_u = T, M_ss = -u k^2 T + (k + u k_s) N + u k tau B,
//   M_su = k N, M_uu = 0.
SurfaceJet2 td_jet(const TangentDevelopableModel& model, double s, double u);

// The model as a generic surface (exact jets, |u| < u_min excluded).
SurfaceModel as_surface(const TangentDevelopableModel& model);

// E = 1+(uk)^2, F = G = 1, e = -sgn(uk) u k tau, f = g = 0,
// U = -sgn(uk) B.
FundForms td_forms(const TangentDevelopableModel& model, double s, double u);

struct TdCurvatures {
    CurvatureData curv;      // K = 0, H = -sgn(uk) tau / (2 u k)
    Weingarten standard;     // first-form inverse times second form
    // alternative closed form (-sgn(uk) tau/(2uk)) * [[1,1],[0,0]]; reported
    // for comparison, never used downstream
    Weingarten stated;
};
TdCurvatures td_curvatures(const TangentDevelopableModel& model, double s, double u);

Christoffels td_christoffel(const TangentDevelopableModel& model, double s, double u);

// Closed forms for the inverse surface N; lambda/delta evaluated at
// (M(s,u), U_M). The delta coefficient follows predict_forms.
FundForms inv_td_forms(const TangentDevelopableModel& model, const InversionSpec& spec,
                       double s, double u);

// K_N = (4/r^2) eta (-sgn(uk) tau/(2 lambda u k) + eta/r^2),
// H_N = sgn(uk) tau/(2 lambda u k) - 2 eta/r^2.
CurvatureData inv_td_curvatures(const TangentDevelopableModel& model, const InversionSpec& spec,
                                double s, double u);

struct InvTdWeingarten {
    Weingarten predicted;     // -lambda^{-1} S_M - (2 eta/r^2) I
    // alternative closed form with the rulings-direction entry in the
    // top-right corner; same trace and det as predicted
    Weingarten stated;
};
InvTdWeingarten inv_td_weingarten(const TangentDevelopableModel& model,
                                  const InversionSpec& spec, double s, double u);

// Christoffel symbols of N from those of M plus the conformal correction;
// d(lambda^2)/ds and d(lambda^2)/du evaluated analytically as
// -4 r^4 <M-c, M_s> / |M-c|^6 and -4 r^4 <M-c, M_u> / |M-c|^6.
Christoffels inv_td_christoffel(const TangentDevelopableModel& model, const InversionSpec& spec,
                                double s, double u);

enum class FlatReason { NotFlat, TangentPlaneThroughCenter, NormalFactorVanishes, Both };

struct ClassificationResult {
    FlatReason flat_reason = FlatReason::NotFlat;
    bool minimal = false;
    bool normal_line_through_center = false; // independent geometric test
    double K_N = 0.0;
    double H_N = 0.0;
};

const char* to_string(FlatReason reason);

// flat_reason is NotFlat exactly when |K_N| >= tol. When flat, the reason is
// attributed by which factor of K_N = -(4/r^2) eta F2 sits below the derived
// per-factor tolerance (F2 = sgn(uk) tau/(2 lambda u k) - eta/r^2; at least
// one always does). Minimality is |H_N| < tol. The normal-line test is
// geometric and independent: |U_M x (M-c)| < tol * |M-c|.
ClassificationResult classify_point(const TangentDevelopableModel& model,
                                    const InversionSpec& spec, double s, double u, double tol);

} // namespace invsurf
