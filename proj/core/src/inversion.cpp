#include "invsurf/inversion.hpp"

#include <cmath>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

double center_hit_tolerance(const InversionSpec& spec) {
    return 1e-12 * std::max(1.0, spec.center.norm());
}

void require_away_from_center(const InversionSpec& spec, const Vec3& p) {
    if (!(spec.radius > 0.0) || !spec.center.allFinite())
        throw InvalidParam("inversion needs a positive radius and a finite center");
    if ((p - spec.center).norm() <= center_hit_tolerance(spec))
        throw CenterHit("point coincides with the inversion center");
}

} // namespace

Vec3 invert_point(const InversionSpec& spec, const Vec3& p) {
    require_away_from_center(spec, p);
    const Vec3 w = p - spec.center;
    const double scale = spec.radius * spec.radius / w.squaredNorm();
    return spec.center + scale * w;
}

Vec3 pushforward(const InversionSpec& spec, const Vec3& p, const Vec3& v) {
    require_away_from_center(spec, p);
    const Vec3 w = p - spec.center;
    const double q = w.squaredNorm();
    const double r2 = spec.radius * spec.radius;
    return r2 * v / q - (2.0 * r2 * w.dot(v) / (q * q)) * w;
}

SurfaceJet2 invert_jet(const InversionSpec& spec, const SurfaceJet2& jet) {
    require_away_from_center(spec, jet.p);
    const double r2 = spec.radius * spec.radius;

    ScalarJet2 w[3];
    for (int i = 0; i < 3; ++i) w[i] = jet.component(i) - spec.center[i];
    const ScalarJet2 q = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    const ScalarJet2 scale = ScalarJet2::constant(r2) / q;

    ScalarJet2 y[3];
    for (int i = 0; i < 3; ++i) y[i] = spec.center[i] + w[i] * scale;
    return SurfaceJet2::from_components(y[0], y[1], y[2]);
}

SurfaceModel invert_surface(const InversionSpec& spec, const SurfaceModel& surface) {
    auto jets = [spec, surface](double s, double u) {
        return invert_jet(spec, surface.jet(s, u));
    };
    auto excluded = [spec, surface](double s, double u) {
        if (surface.excluded(s, u)) return true;
        return (surface.jet(s, u).p - spec.center).norm() < 1e-9;
    };
    return SurfaceModel(std::move(jets), surface.domain(), std::move(excluded),
                        "inverse(" + surface.description() + ")");
}

ConformalFactors conformal_factors(const InversionSpec& spec, const Vec3& point,
                                   const Vec3& unit_normal) {
    require_away_from_center(spec, point);
    if (std::abs(unit_normal.norm() - 1.0) > 1e-9)
        throw InvalidParam("conformal factors require a unit normal");
    const Vec3 w = point - spec.center;
    const double q = w.squaredNorm();
    const double r2 = spec.radius * spec.radius;
    ConformalFactors out;
    out.lambda = r2 / q;
    out.eta = unit_normal.dot(w);
    out.delta = 2.0 * r2 * out.eta / (q * q);
    return out;
}

FundForms predict_forms(const FundForms& forms_x, const ConformalFactors& factors) {
    const double l2 = factors.lambda * factors.lambda;
    FundForms out;
    out.E = l2 * forms_x.E;
    out.F = l2 * forms_x.F;
    out.G = l2 * forms_x.G;
    out.e = -factors.lambda * forms_x.e - factors.delta * forms_x.E;
    out.f = -factors.lambda * forms_x.f - factors.delta * forms_x.F;
    out.g = -factors.lambda * forms_x.g - factors.delta * forms_x.G;
    out.normal.reset(); // predictor yields coefficients only
    return out;
}

CurvatureData predict_curvatures(const CurvatureData& c, const ConformalFactors& factors,
                                 double radius) {
    const double r2 = radius * radius;
    const double l = factors.lambda;
    const double eta = factors.eta;
    CurvatureData out;
    out.K = c.K / (l * l) + (4.0 / r2) * (eta / l) * c.H + (4.0 / (r2 * r2)) * eta * eta;
    out.H = -c.H / l - 2.0 * eta / r2;
    return out;
}

Weingarten predict_weingarten(const Weingarten& s_x, const ConformalFactors& factors,
                              double radius) {
    const double r2 = radius * radius;
    Weingarten out;
    out.m = -(1.0 / factors.lambda) * s_x.m - (2.0 * factors.eta / r2) * Mat2::Identity();
    return out;
}

} // namespace invsurf
