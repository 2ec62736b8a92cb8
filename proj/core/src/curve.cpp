#include "invsurf/curve.hpp"

#include <cmath>
#include <cstdio>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

constexpr double kSpeedFloor = 1e-12;       // below this the point is irregular
constexpr double kKappaFloor = 1e-9;        // below this N and tau are meaningless
constexpr double kArcLengthTol = 1e-9;
constexpr int kArcLengthSamples = 64;

double curvature_at(const CurveJet3& j) {
    const Vec3 w = j.d1.cross(j.d2);
    const double speed = j.d1.norm();
    if (speed < kSpeedFloor) throw IrregularPoint("curve has vanishing speed");
    return w.norm() / (speed * speed * speed);
}

} // namespace

CurveModel::CurveModel(JetFn jets, Interval domain, bool arc_length, KappaSFn kappa_s,
                       std::string description)
    : jets_(std::move(jets)),
      domain_(domain),
      arc_length_(arc_length),
      kappa_s_(std::move(kappa_s)),
      description_(std::move(description)) {}

CurveModel builtin_curve(const std::string& name, std::span<const double> params,
                         Interval domain) {
    if (name == "helix") {
        if (params.size() != 2) throw InvalidParam("helix takes parameters (a, b)");
        const double a = params[0], b = params[1];
        if (!(a > 0.0) || !(b > 0.0)) throw InvalidParam("helix parameters must be positive");
        const double c = std::sqrt(a * a + b * b);
        auto jets = [a, b, c](double s) {
            const double th = s / c;
            const double sn = std::sin(th), cs = std::cos(th);
            CurveJet3 j;
            j.p = Vec3(a * cs, a * sn, b * th);
            j.d1 = Vec3(-a * sn, a * cs, b) / c;
            j.d2 = Vec3(-a * cs, -a * sn, 0.0) / (c * c);
            j.d3 = Vec3(a * sn, -a * cs, 0.0) / (c * c * c);
            return j;
        };
        char desc[64];
        std::snprintf(desc, sizeof(desc), "helix(a=%g,b=%g)", a, b);
        return CurveModel(jets, domain, /*arc_length=*/true, [](double) { return 0.0; }, desc);
    }
    if (name == "circle") {
        if (params.size() != 1) throw InvalidParam("circle takes parameter (R)");
        const double R = params[0];
        if (!(R > 0.0)) throw InvalidParam("circle radius must be positive");
        auto jets = [R](double s) {
            const double th = s / R;
            const double sn = std::sin(th), cs = std::cos(th);
            CurveJet3 j;
            j.p = Vec3(R * cs, R * sn, 0.0);
            j.d1 = Vec3(-sn, cs, 0.0);
            j.d2 = Vec3(-cs, -sn, 0.0) / R;
            j.d3 = Vec3(sn, -cs, 0.0) / (R * R);
            return j;
        };
        char desc[64];
        std::snprintf(desc, sizeof(desc), "circle(R=%g)", R);
        return CurveModel(jets, domain, /*arc_length=*/true, [](double) { return 0.0; }, desc);
    }
    if (name == "twisted_cubic") {
        if (!params.empty()) throw InvalidParam("twisted_cubic takes no parameters");
        auto jets = [](double t) {
            CurveJet3 j;
            j.p = Vec3(t, t * t, t * t * t);
            j.d1 = Vec3(1.0, 2.0 * t, 3.0 * t * t);
            j.d2 = Vec3(0.0, 2.0, 6.0 * t);
            j.d3 = Vec3(0.0, 0.0, 6.0);
            return j;
        };
        return CurveModel(jets, domain, /*arc_length=*/false, {}, "twisted_cubic");
    }
    throw UnknownCurve("unknown builtin curve '" + name + "'");
}

CurveModel curve_from_map(const CompiledMap& map, Interval domain, bool arc_length_flag) {
    if (map.arity() != 1) throw ArityError("curve map must have one parameter");
    auto jets = [map](double t) { return map.eval_curve(t); };

    for (int i = 0; i < kArcLengthSamples; ++i) {
        const double t =
            domain.lo + (domain.hi - domain.lo) * (i + 0.5) / kArcLengthSamples;
        const double speed = jets(t).d1.norm();
        if (speed < kSpeedFloor)
            throw IrregularPoint("curve is not regular on its interval");
        if (arc_length_flag && std::abs(speed - 1.0) > kArcLengthTol)
            throw CurveNotArcLength("curve declared arc-length but |gamma'| != 1");
    }
    return CurveModel(jets, domain, arc_length_flag, {}, "expr(" + map.source() + ")");
}

FrenetData frenet(const CurveModel& curve, double t) {
    const CurveJet3 j = curve.jet(t);
    const double speed = j.d1.norm();
    if (speed < kSpeedFloor) throw IrregularPoint("curve has vanishing speed");

    const Vec3 w = j.d1.cross(j.d2);
    const double wn = w.norm();
    const double kappa = wn / (speed * speed * speed);
    if (kappa < kKappaFloor)
        throw DegenerateCurvature("curvature below threshold; Frenet frame undefined");

    FrenetData fr;
    fr.kappa = kappa;
    fr.tau = j.d1.cross(j.d2).dot(j.d3) / (wn * wn);
    fr.T = j.d1 / speed;
    fr.B = w / wn;
    fr.N = fr.B.cross(fr.T);

    if (curve.kappa_s_fn()) {
        fr.kappa_s = curve.kappa_s_fn()(t);
    } else {
        // Guarded central difference on kappa, chain rule to arc length.
        const double h = 1e-4 * std::max(1.0, std::abs(t));
        const double kp = curvature_at(curve.jet(t + h));
        const double km = curvature_at(curve.jet(t - h));
        fr.kappa_s = (kp - km) / (2.0 * h) / speed;
    }
    return fr;
}

} // namespace invsurf
