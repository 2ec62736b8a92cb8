#pragma once

// Sphere inversion: the point map, its tangent map, the conformal scalars
// lambda/eta/delta, surface pullback by jet composition, and the predictors
// that transport fundamental forms, curvatures and the shape operator from a
// surface to its inverse surface.

#include "invsurf/jet.hpp"
#include "invsurf/surface.hpp"

namespace invsurf {

struct InversionSpec {
    Vec3 center = Vec3::Zero();
    double radius = 1.0;
};

// lambda = r^2/|X-c|^2, eta = <U_X, X-c>, delta = 2 r^2 eta / |X-c|^4.
// The three satisfy delta = 2 eta lambda^2 / r^2.
struct ConformalFactors {
    double lambda = 1.0;
    double eta = 0.0;
    double delta = 0.0;
};

// p -> c + (r^2/|p-c|^2)(p-c). Involution; fixes the sphere |p-c| = r.
Vec3 invert_point(const InversionSpec& spec, const Vec3& p);

// Tangent map at p: v -> r^2 v/|p-c|^2 - (2 r^2 <p-c,v>/|p-c|^4)(p-c).
// Conformal: |result| = lambda |v|.
Vec3 pushforward(const InversionSpec& spec, const Vec3& p, const Vec3& v);

// Order-2 jet of the composed immersion Phi o X, via jet arithmetic.
SurfaceJet2 invert_jet(const InversionSpec& spec, const SurfaceJet2& jet);

// Composed surface; exclusion augmented with |X - c| < 1e-9.
SurfaceModel invert_surface(const InversionSpec& spec, const SurfaceModel& surface);

ConformalFactors conformal_factors(const InversionSpec& spec, const Vec3& point,
                                   const Vec3& unit_normal);

// Transformation laws for the fundamental forms:
//   I_Y  = lambda^2 I_X
//   II_Y = -lambda II_X - delta I_X
// Differentiating the inversion map twice gives the single factor of delta in
// the second line; it is also the unique coefficient consistent with the
// curvature laws below (S_Y needs delta/lambda^2 = 2 eta/r^2). Output carries
// coefficients only (normal absent). The predicted second form is taken with
// respect to the geometric normal of the composed immersion, which
// anti-aligns with the pushed-forward base normal.
FundForms predict_forms(const FundForms& forms_x, const ConformalFactors& factors);

// K_Y = K/lambda^2 + (4/r^2) eta H/lambda + (4/r^4) eta^2,
// H_Y = -H/lambda - 2 eta/r^2.
CurvatureData predict_curvatures(const CurvatureData& c, const ConformalFactors& factors,
                                 double radius);

// S_Y = -lambda^{-1} S_X - (2 eta / r^2) I.
Weingarten predict_weingarten(const Weingarten& s_x, const ConformalFactors& factors,
                              double radius);

} // namespace invsurf
