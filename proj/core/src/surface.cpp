#include "invsurf/surface.hpp"

#include <cmath>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

constexpr double kSingularTol = 1e-12; // scale of rounding after jet arithmetic

} // namespace

SurfaceModel::SurfaceModel(JetFn jets, ParamDomain domain, ExcludeFn excluded,
                           std::string description)
    : jets_(std::move(jets)),
      domain_(domain),
      excluded_(std::move(excluded)),
      description_(std::move(description)) {}

SurfaceJet2 SurfaceModel::jet(double s, double u) const {
    if (excluded(s, u)) throw ExcludedPoint("parameter point is excluded");
    return jets_(s, u);
}

bool SurfaceModel::excluded(double s, double u) const {
    return excluded_ && excluded_(s, u);
}

SurfaceModel surface_from_map(const CompiledMap& map, ParamDomain domain) {
    if (map.arity() != 2) throw ArityError("surface map must have two parameters");
    auto jets = [map](double s, double u) { return map.eval_surface(s, u); };
    return SurfaceModel(std::move(jets), domain, {}, "expr(" + map.source() + ")");
}

FundForms fund_forms(const SurfaceJet2& jet) {
    FundForms out;
    out.E = jet.ps.dot(jet.ps);
    out.F = jet.ps.dot(jet.pu);
    out.G = jet.pu.dot(jet.pu);
    const double w = out.E * out.G - out.F * out.F;
    if (w <= kSingularTol) throw SingularPoint("EG - F^2 below singularity tolerance");

    const Vec3 n = jet.ps.cross(jet.pu);
    const Vec3 unit = n / n.norm();
    out.normal = unit;
    out.e = jet.pss.dot(unit);
    out.f = jet.psu.dot(unit);
    out.g = jet.puu.dot(unit);
    return out;
}

FundForms fund_forms(const SurfaceModel& surface, double s, double u) {
    return fund_forms(surface.jet(s, u));
}

CurvatureData curvatures(const FundForms& forms) {
    const double w = forms.E * forms.G - forms.F * forms.F;
    if (w <= 0.0) throw SingularPoint("EG - F^2 must be positive");
    CurvatureData out;
    out.K = (forms.e * forms.g - forms.f * forms.f) / w;
    out.H = (forms.e * forms.G - 2.0 * forms.f * forms.F + forms.g * forms.E) / (2.0 * w);
    return out;
}

Weingarten weingarten(const FundForms& forms) {
    const double w = forms.E * forms.G - forms.F * forms.F;
    if (w <= 0.0) throw SingularPoint("EG - F^2 must be positive");
    Weingarten out;
    out.m(0, 0) = (forms.G * forms.e - forms.F * forms.f) / w;
    out.m(0, 1) = (forms.G * forms.f - forms.F * forms.g) / w;
    out.m(1, 0) = (forms.E * forms.f - forms.F * forms.e) / w;
    out.m(1, 1) = (forms.E * forms.g - forms.F * forms.f) / w;
    return out;
}

Christoffels christoffel(const SurfaceJet2& jet) {
    const double E = jet.ps.dot(jet.ps);
    const double F = jet.ps.dot(jet.pu);
    const double G = jet.pu.dot(jet.pu);
    const double w = E * G - F * F;
    if (w <= kSingularTol) throw SingularPoint("EG - F^2 below singularity tolerance");

    auto contract = [&](const Vec3& xij, double& up1, double& up2) {
        const double a = xij.dot(jet.ps);
        const double b = xij.dot(jet.pu);
        up1 = (G * a - F * b) / w;
        up2 = (-F * a + E * b) / w;
    };

    Christoffels out;
    contract(jet.pss, out.g1_11, out.g2_11);
    contract(jet.psu, out.g1_12, out.g2_12);
    contract(jet.puu, out.g1_22, out.g2_22);
    return out;
}

Christoffels christoffel(const SurfaceModel& surface, double s, double u) {
    return christoffel(surface.jet(s, u));
}

} // namespace invsurf
