#include "invsurf/developable.hpp"

#include <cmath>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_off_edge(const TangentDevelopableModel& model, double u) {
    if (std::abs(u) < model.u_min())
        throw DomainError("point is on or too close to the edge of regression (u = 0)");
}

struct TdLocal {
    FrenetData fr;
    Vec3 point;   // M(s,u)
    Vec3 m_s;     // T + u k N
    Vec3 m_u;     // T
    double uk;    // u * kappa
    double sg;    // sgn(u kappa)
};

TdLocal local_frame(const TangentDevelopableModel& model, double s, double u) {
    require_off_edge(model, u);
    TdLocal loc;
    loc.fr = frenet(model.curve(), s); // throws DegenerateCurvature below threshold
    loc.point = model.curve().point(s) + u * loc.fr.T;
    loc.m_s = loc.fr.T + u * loc.fr.kappa * loc.fr.N;
    loc.m_u = loc.fr.T;
    loc.uk = u * loc.fr.kappa;
    loc.sg = sgn(loc.uk);
    return loc;
}

} // namespace

TangentDevelopableModel::TangentDevelopableModel(CurveModel curve, ParamDomain domain,
                                                 double u_min)
    : curve_(std::move(curve)), domain_(domain), u_min_(u_min) {
    if (!curve_.arc_length())
        throw CurveNotArcLength("tangent developable requires an arc-length curve");
    if (!(u_min_ > 0.0)) throw InvalidParam("u_min must be positive");
}

Vec3 td_point(const TangentDevelopableModel& model, double s, double u) {
    require_off_edge(model, u);
    const FrenetData fr = frenet(model.curve(), s);
    return model.curve().point(s) + u * fr.T;
}

SurfaceJet2 td_jet(const TangentDevelopableModel& model, double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const FrenetData& fr = loc.fr;

    SurfaceJet2 j;
    j.p = loc.point;
    j.ps = loc.m_s;
    j.pu = loc.m_u;
    j.pss = -u * fr.kappa * fr.kappa * fr.T + (fr.kappa + u * fr.kappa_s) * fr.N +
            u * fr.kappa * fr.tau * fr.B;
    j.psu = fr.kappa * fr.N;
    j.puu = Vec3::Zero();
    return j;
}

SurfaceModel as_surface(const TangentDevelopableModel& model) {
    const double u_min = model.u_min();
    auto jets = [model](double s, double u) { return td_jet(model, s, u); };
    auto excluded = [u_min](double, double u) { return std::abs(u) < u_min; };
    return SurfaceModel(std::move(jets), model.domain(), std::move(excluded),
                        "tangent_developable(" + model.curve().description() + ")");
}

FundForms td_forms(const TangentDevelopableModel& model, double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    FundForms out;
    out.E = 1.0 + loc.uk * loc.uk;
    out.F = 1.0;
    out.G = 1.0;
    out.e = -loc.sg * loc.uk * loc.fr.tau;
    out.f = 0.0;
    out.g = 0.0;
    out.normal = (-loc.sg * loc.fr.B).eval();
    return out;
}

TdCurvatures td_curvatures(const TangentDevelopableModel& model, double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    TdCurvatures out;
    out.curv.K = 0.0;
    out.curv.H = -loc.sg * loc.fr.tau / (2.0 * loc.uk);
    out.standard = weingarten(td_forms(model, s, u));
    out.stated.m << 1.0, 1.0, 0.0, 0.0;
    out.stated.m *= -loc.sg * loc.fr.tau / (2.0 * loc.uk);
    return out;
}

Christoffels td_christoffel(const TangentDevelopableModel& model, double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const double k = loc.fr.kappa;
    const double ks = loc.fr.kappa_s;
    const double uk = loc.uk;

    Christoffels out;
    out.g1_11 = (u * ks + k) / uk;
    out.g2_11 = (-k * (1.0 + uk * uk) - u * ks) / uk;
    out.g1_12 = 1.0 / u;
    out.g2_12 = -1.0 / u;
    out.g1_22 = 0.0;
    out.g2_22 = 0.0;
    return out;
}

FundForms inv_td_forms(const TangentDevelopableModel& model, const InversionSpec& spec,
                       double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const Vec3 normal = -loc.sg * loc.fr.B;
    const ConformalFactors fac = conformal_factors(spec, loc.point, normal);
    const double l2 = fac.lambda * fac.lambda;
    const double uk2 = loc.uk * loc.uk;

    FundForms out;
    out.E = l2 * (1.0 + uk2);
    out.F = l2;
    out.G = l2;
    out.e = loc.sg * fac.lambda * loc.uk * loc.fr.tau - fac.delta * (1.0 + uk2);
    out.f = -fac.delta;
    out.g = -fac.delta;
    out.normal.reset();
    return out;
}

CurvatureData inv_td_curvatures(const TangentDevelopableModel& model, const InversionSpec& spec,
                                double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const Vec3 normal = -loc.sg * loc.fr.B;
    const ConformalFactors fac = conformal_factors(spec, loc.point, normal);
    const double r2 = spec.radius * spec.radius;
    const double half = loc.sg * loc.fr.tau / (2.0 * fac.lambda * loc.uk);

    CurvatureData out;
    out.K = (4.0 / r2) * fac.eta * (-half + fac.eta / r2);
    out.H = half - 2.0 * fac.eta / r2;
    return out;
}

InvTdWeingarten inv_td_weingarten(const TangentDevelopableModel& model,
                                  const InversionSpec& spec, double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const Vec3 normal = -loc.sg * loc.fr.B;
    const ConformalFactors fac = conformal_factors(spec, loc.point, normal);
    const double r2 = spec.radius * spec.radius;

    InvTdWeingarten out;
    out.predicted = predict_weingarten(td_curvatures(model, s, u).standard, fac, spec.radius);
    const double full = loc.sg * loc.fr.tau / (fac.lambda * loc.uk);
    out.stated.m << full - 2.0 * fac.eta / r2, full, 0.0, -2.0 * fac.eta / r2;
    return out;
}

Christoffels inv_td_christoffel(const TangentDevelopableModel& model, const InversionSpec& spec,
                                double s, double u) {
    const TdLocal loc = local_frame(model, s, u);
    const Vec3 normal = -loc.sg * loc.fr.B;
    const ConformalFactors fac = conformal_factors(spec, loc.point, normal);

    const Vec3 w = loc.point - spec.center;
    const double q = w.squaredNorm();
    const double r4 = std::pow(spec.radius, 4);
    const double lam2 = fac.lambda * fac.lambda;
    const double dl2_ds = -4.0 * r4 * w.dot(loc.m_s) / (q * q * q);
    const double dl2_du = -4.0 * r4 * w.dot(loc.m_u) / (q * q * q);

    const double uk2 = loc.uk * loc.uk;
    const double den = 2.0 * lam2 * uk2;
    const Christoffels base = td_christoffel(model, s, u);

    Christoffels out;
    out.g1_11 = base.g1_11 + ((uk2 - 1.0) * dl2_ds + (uk2 + 1.0) * dl2_du) / den;
    // the (uk^2+1)^2 du term carries a minus sign: the conformal change of
    // the metric contributes -g_11 g^{2l} d_l lambda^2 = (E L1 - E^2 L2)/W
    out.g2_11 = base.g2_11 + ((uk2 + 1.0) * dl2_ds - (uk2 + 1.0) * (uk2 + 1.0) * dl2_du) / den;
    out.g1_12 = base.g1_12 + ((uk2 + 1.0) * dl2_du - dl2_ds) / den;
    out.g2_12 = base.g2_12 + (uk2 + 1.0) * (dl2_ds - dl2_du) / den;
    out.g1_22 = base.g1_22 + (dl2_du - dl2_ds) / den;
    out.g2_22 = base.g2_22 + ((uk2 - 1.0) * dl2_du + dl2_ds) / den;
    return out;
}

const char* to_string(FlatReason reason) {
    switch (reason) {
        case FlatReason::NotFlat: return "not_flat";
        case FlatReason::TangentPlaneThroughCenter: return "tangent_plane_through_center";
        case FlatReason::NormalFactorVanishes: return "normal_factor_vanishes";
        case FlatReason::Both: return "both";
    }
    return "not_flat";
}

ClassificationResult classify_point(const TangentDevelopableModel& model,
                                    const InversionSpec& spec, double s, double u, double tol) {
    const TdLocal loc = local_frame(model, s, u);
    const Vec3 normal = -loc.sg * loc.fr.B;
    const ConformalFactors fac = conformal_factors(spec, loc.point, normal);
    const double r2 = spec.radius * spec.radius;

    // K_N = (4/r^2) * eta * f2
    const double f2 = loc.sg * loc.fr.tau / (2.0 * fac.lambda * loc.uk) - fac.eta / r2;

    ClassificationResult out;
    out.K_N = (4.0 / r2) * fac.eta * (-loc.sg * loc.fr.tau / (2.0 * fac.lambda * loc.uk) +
                                      fac.eta / r2);
    out.H_N = loc.sg * loc.fr.tau / (2.0 * fac.lambda * loc.uk) - 2.0 * fac.eta / r2;

    // |K_N| < tol iff the dimensionless product |(eta/r)(f2 r)| < tol r^2/4.
    // When flat, at least one factor is below sqrt of that bound (the bound on
    // the product forces the smaller factor under its square root), which is
    // what attributes the reason.
    const bool flat = std::abs(out.K_N) < tol;
    if (!flat) {
        out.flat_reason = FlatReason::NotFlat;
    } else {
        const double factor_tol = std::sqrt(tol * r2 / 4.0);
        const bool eta_vanishes = std::abs(fac.eta / spec.radius) < factor_tol;
        const bool factor_vanishes = std::abs(f2 * spec.radius) < factor_tol;
        if (eta_vanishes && factor_vanishes)
            out.flat_reason = FlatReason::Both;
        else if (factor_vanishes)
            out.flat_reason = FlatReason::NormalFactorVanishes;
        else
            out.flat_reason = FlatReason::TangentPlaneThroughCenter;
    }

    out.minimal = std::abs(out.H_N) < tol;

    const Vec3 w = loc.point - spec.center;
    out.normal_line_through_center = normal.cross(w).norm() < tol * w.norm();
    return out;
}

} // namespace invsurf
