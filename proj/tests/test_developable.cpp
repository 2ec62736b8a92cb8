#include <doctest.h>

#include <cmath>

#include "invsurf/developable.hpp"
#include "invsurf/errors.hpp"
#include "invsurf/finite_diff.hpp"

using namespace invsurf;

namespace {

TangentDevelopableModel helix_developable(double s0 = 0.0, double s1 = 6.28, double u0 = 0.2,
                                          double u1 = 1.5) {
    const double params[2] = {1.0, 1.0};
    return TangentDevelopableModel(builtin_curve("helix", params), {s0, s1, u0, u1});
}

InversionSpec unit_sphere() { return InversionSpec{Vec3::Zero(), 1.0}; }

double rel(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("model construction requires an arc-length curve") {
    const CurveModel cubic = builtin_curve("twisted_cubic", {});
    CHECK_THROWS_AS(TangentDevelopableModel(cubic, {0, 1, 0.2, 1.0}), CurveNotArcLength);
}

TEST_CASE("td_point: helix spot value, circle spot value, edge exclusion") {
    const TangentDevelopableModel dev = helix_developable();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vec3 p = td_point(dev, 0.0, 1.0);
    CHECK((p - Vec3(1.0, inv_sqrt2, inv_sqrt2)).norm() < 1e-12);

    const double R[1] = {2.0};
    const TangentDevelopableModel circle_dev(builtin_curve("circle", R), {0, 6.0, 0.2, 1.5});
    const Vec3 q = td_point(circle_dev, 0.0, 1.0);
    CHECK((q - Vec3(2.0, 1.0, 0.0)).norm() < 1e-12);

    CHECK_THROWS_AS(td_point(dev, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(td_point(dev, 1.0, 1e-4), DomainError);
    CHECK_NOTHROW(td_point(dev, 1.0, -0.5)); // second sheet is allowed
}

TEST_CASE("td_forms: closed forms at (0,1) and the f=g=0 identity") {
    const TangentDevelopableModel dev = helix_developable();
    const FundForms f = td_forms(dev, 0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    CHECK(f.E == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(f.F == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.e == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(f.f == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.g == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((*f.normal - Vec3(0.0, inv_sqrt2, -inv_sqrt2)).norm() < 1e-12);

    for (double s : {0.4, 2.2, 5.0}) {
        for (double u : {-1.2, 0.3, 1.4}) {
            const FundForms forms = td_forms(dev, s, u);
            CHECK(forms.f == 0.0);
            CHECK(forms.g == 0.0);
            const double uk = u * 0.5;
            CHECK(forms.E == doctest::Approx(1.0 + uk * uk).epsilon(1e-12));
        }
    }
}

TEST_CASE("td_curvatures: K=0, H closed form, Weingarten matrices at (0,1)") {
    const TangentDevelopableModel dev = helix_developable();
    const TdCurvatures c = td_curvatures(dev, 0.0, 1.0);

    CHECK(c.curv.K == 0.0);
    CHECK(c.curv.H == doctest::Approx(-0.5).epsilon(1e-12));

    CHECK(c.standard.m(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.standard.m(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.standard.m(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.standard.m(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.standard.m.trace() == doctest::Approx(2.0 * c.curv.H).epsilon(1e-12));
    CHECK(c.standard.m.determinant() == doctest::Approx(0.0).epsilon(1e-12));

    // stated matrix: (-1/2) [[1,1],[0,0]]; its trace is H, not 2H
    CHECK(c.stated.m(0, 0) == doctest::Approx(-0.5));
    CHECK(c.stated.m(0, 1) == doctest::Approx(-0.5));
    CHECK(c.stated.m(1, 0) == doctest::Approx(0.0));
    CHECK(c.stated.m(1, 1) == doctest::Approx(0.0));
    CHECK(c.stated.m.trace() == doctest::Approx(c.curv.H));
}

TEST_CASE("td_christoffel: closed forms at (0,1) and the 1/u law") {
    const TangentDevelopableModel dev = helix_developable();
    const Christoffels chr = td_christoffel(dev, 0.0, 1.0);
    CHECK(chr.g1_11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chr.g2_11 == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(chr.g1_12 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chr.g2_12 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(chr.g1_22 == 0.0);
    CHECK(chr.g2_22 == 0.0);

    const Christoffels at_u2 = td_christoffel(dev, 1.1, 2.0);
    CHECK(at_u2.g1_12 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at_u2.g2_12 == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("td jets agree with the finite-difference oracle (independent route)") {
    const TangentDevelopableModel dev = helix_developable();
    auto point_map = [&](double s, double u) { return td_point(dev, s, u); };
    for (double s : {0.3, 1.9}) {
        for (double u : {0.4, 1.2}) {
            const SurfaceJet2 exact = td_jet(dev, s, u);
            const SurfaceJet2 fd = fd_jet_surface(point_map, s, u);
            CHECK((exact.ps - fd.ps).norm() < 1e-5);
            CHECK((exact.pu - fd.pu).norm() < 1e-5);
            CHECK((exact.pss - fd.pss).norm() < 1e-3);
            CHECK((exact.psu - fd.psu).norm() < 1e-3);
            CHECK((exact.puu - fd.puu).norm() < 1e-3);
        }
    }
}

TEST_CASE("inv_td_forms: spot values at (0,1) and consistency with predict_forms") {
    const TangentDevelopableModel dev = helix_developable();
    const InversionSpec spec = unit_sphere();

    const FundForms f = inv_td_forms(dev, spec, 0.0, 1.0);
    CHECK(f.E == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(f.F == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(f.e == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(f.f == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.g == doctest::Approx(0.0).epsilon(1e-12));

    // coefficients equal predict_forms applied to td_forms (algebraic identity)
    for (double s : {0.0, 1.2, 3.1}) {
        for (double u : {0.3, 0.8, 1.5}) {
            const FundForms base = td_forms(dev, s, u);
            const ConformalFactors fac =
                conformal_factors(spec, td_point(dev, s, u), *base.normal);
            const FundForms via_predict = predict_forms(base, fac);
            const FundForms closed = inv_td_forms(dev, spec, s, u);
            CHECK(rel(closed.E, via_predict.E) < 1e-12);
            CHECK(rel(closed.F, via_predict.F) < 1e-12);
            CHECK(rel(closed.G, via_predict.G) < 1e-12);
            CHECK(rel(closed.e, via_predict.e) < 1e-12);
            CHECK(rel(closed.f, via_predict.f) < 1e-12);
            CHECK(rel(closed.g, via_predict.g) < 1e-12);
            if (std::abs(fac.eta) < 1e-12) {
                CHECK(closed.f == doctest::Approx(0.0));
                CHECK(closed.g == doctest::Approx(0.0));
            }
        }
    }
}

TEST_CASE("inv_td_curvatures: eta=0 gives K_N=0, spot values at (0,1) and (2,1)") {
    const TangentDevelopableModel dev = helix_developable();
    const InversionSpec spec = unit_sphere();

    const CurvatureData c01 = inv_td_curvatures(dev, spec, 0.0, 1.0);
    CHECK(c01.K == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c01.H == doctest::Approx(1.0).epsilon(1e-12));

    const CurvatureData c21 = inv_td_curvatures(dev, spec, 2.0, 1.0);
    CHECK(c21.K == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(c21.H == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("inv_td_weingarten: predicted and stated matrices at (0,1)") {
    const TangentDevelopableModel dev = helix_developable();
    const InvTdWeingarten w = inv_td_weingarten(dev, unit_sphere(), 0.0, 1.0);

    CHECK(w.predicted.m(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.predicted.m(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.predicted.m(1, 0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(w.predicted.m(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(w.stated.m(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.stated.m(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.stated.m(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.stated.m(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // entry-wise structures differ, but trace and det agree
    const CurvatureData c = inv_td_curvatures(dev, unit_sphere(), 0.0, 1.0);
    CHECK(w.predicted.m.trace() == doctest::Approx(2.0 * c.H).epsilon(1e-12));
    CHECK(w.stated.m.trace() == doctest::Approx(2.0 * c.H).epsilon(1e-12));
    CHECK(w.predicted.m.determinant() == doctest::Approx(c.K).epsilon(1e-12));
    CHECK(w.stated.m.determinant() == doctest::Approx(c.K).epsilon(1e-12));
}

TEST_CASE("inv_td_christoffel: spot values at (0,1)") {
    const TangentDevelopableModel dev = helix_developable();
    const Christoffels chr = inv_td_christoffel(dev, unit_sphere(), 0.0, 1.0);
    CHECK(chr.g1_11 == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(chr.g1_22 == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("inv_td_christoffel reduces to the base symbols when grad(lambda^2)=0") {
    // A synthetic check through the formula: with the center far away the
    // gradient terms shrink like 1/|c|^2; verify convergence to the base case.
    const TangentDevelopableModel dev = helix_developable();
    const Christoffels base = td_christoffel(dev, 1.0, 0.7);
    InversionSpec far;
    far.center = Vec3(0.0, 0.0, 1e6);
    far.radius = 1.0;
    const Christoffels inv = inv_td_christoffel(dev, far, 1.0, 0.7);
    CHECK(std::abs(inv.g1_11 - base.g1_11) < 1e-4);
    CHECK(std::abs(inv.g2_11 - base.g2_11) < 1e-4);
    CHECK(std::abs(inv.g1_12 - base.g1_12) < 1e-4);
    CHECK(std::abs(inv.g2_12 - base.g2_12) < 1e-4);
    CHECK(std::abs(inv.g1_22 - base.g1_22) < 1e-4);
    CHECK(std::abs(inv.g2_22 - base.g2_22) < 1e-4);
}

TEST_CASE("closed forms match the generic pipeline over the acceptance grid") {
    // Verifies the closed forms for forms, curvatures, Christoffels on both the base and
    // inverse surface over a 20x20 grid, s in [0, 2pi], u in [0.2, 1.5].
    const TangentDevelopableModel dev = helix_developable(0.0, 2.0 * M_PI, 0.2, 1.5);
    const InversionSpec spec = unit_sphere();

    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double s = 2.0 * M_PI * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double u = 0.2 + (1.5 - 0.2) * j / 19.0;

            const SurfaceJet2 jet = td_jet(dev, s, u);
            const FundForms closed = td_forms(dev, s, u);
            const FundForms generic = fund_forms(jet);
            worst = std::max({worst, rel(closed.E, generic.E), rel(closed.F, generic.F),
                              rel(closed.G, generic.G), rel(closed.e, generic.e),
                              rel(closed.f, generic.f), rel(closed.g, generic.g)});

            const TdCurvatures tc = td_curvatures(dev, s, u);
            const CurvatureData gc = curvatures(generic);
            worst = std::max({worst, std::abs(gc.K), rel(tc.curv.H, gc.H)});

            const Christoffels cc = td_christoffel(dev, s, u);
            const Christoffels gchr = christoffel(jet);
            worst = std::max({worst, rel(cc.g1_11, gchr.g1_11), rel(cc.g2_11, gchr.g2_11),
                              rel(cc.g1_12, gchr.g1_12), rel(cc.g2_12, gchr.g2_12),
                              rel(cc.g1_22, gchr.g1_22), rel(cc.g2_22, gchr.g2_22)});

            const SurfaceJet2 inv_jet = invert_jet(spec, jet);
            const FundForms inv_closed = inv_td_forms(dev, spec, s, u);
            const FundForms inv_generic = fund_forms(inv_jet);
            worst = std::max({worst, rel(inv_closed.E, inv_generic.E),
                              rel(inv_closed.F, inv_generic.F),
                              rel(inv_closed.G, inv_generic.G),
                              rel(inv_closed.e, inv_generic.e),
                              rel(inv_closed.f, inv_generic.f),
                              rel(inv_closed.g, inv_generic.g)});

            const CurvatureData inv_closed_c = inv_td_curvatures(dev, spec, s, u);
            const CurvatureData inv_generic_c = curvatures(inv_generic);
            worst = std::max({worst, rel(inv_closed_c.K, inv_generic_c.K),
                              rel(inv_closed_c.H, inv_generic_c.H)});

            const Christoffels inv_cc = inv_td_christoffel(dev, spec, s, u);
            const Christoffels inv_gchr = christoffel(inv_jet);
            worst = std::max({worst, rel(inv_cc.g1_11, inv_gchr.g1_11),
                              rel(inv_cc.g2_11, inv_gchr.g2_11),
                              rel(inv_cc.g1_12, inv_gchr.g1_12),
                              rel(inv_cc.g2_12, inv_gchr.g2_12),
                              rel(inv_cc.g1_22, inv_gchr.g1_22),
                              rel(inv_cc.g2_22, inv_gchr.g2_22)});
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("classify_point: flat locus, generic point, constructed normal-line center") {
    const TangentDevelopableModel dev = helix_developable();
    const InversionSpec spec = unit_sphere();

    // eta = 0 along s = 0: flat via the tangent-plane branch
    const ClassificationResult flat = classify_point(dev, spec, 0.0, 1.0, 1e-9);
    CHECK(flat.flat_reason == FlatReason::TangentPlaneThroughCenter);
    CHECK(std::abs(flat.K_N) < 1e-9);
    CHECK_FALSE(flat.minimal);
    CHECK_FALSE(flat.normal_line_through_center);

    const ClassificationResult generic = classify_point(dev, spec, 2.0, 1.0, 1e-9);
    CHECK(generic.flat_reason == FlatReason::NotFlat);
    CHECK_FALSE(generic.minimal);
    CHECK(generic.K_N == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(generic.H_N == doctest::Approx(5.0).epsilon(1e-12));

    // center placed on the normal line at (1,1): c = M - 2 U_M
    const FundForms f11 = td_forms(dev, 1.0, 1.0);
    InversionSpec on_normal;
    on_normal.center = td_point(dev, 1.0, 1.0) - 2.0 * (*f11.normal);
    on_normal.radius = 1.0;
    const ClassificationResult constructed = classify_point(dev, on_normal, 1.0, 1.0, 1e-9);
    CHECK(constructed.normal_line_through_center);
    // the distance-2 construction also makes the second factor of K_N vanish
    CHECK(constructed.flat_reason == FlatReason::NormalFactorVanishes);
}

TEST_CASE("second sheet (u < 0) closed forms still match the generic pipeline") {
    const TangentDevelopableModel dev = helix_developable(0.0, 6.28, -1.5, -0.2);
    const InversionSpec spec = unit_sphere();
    for (double s : {0.5, 2.5}) {
        for (double u : {-1.2, -0.4}) {
            const SurfaceJet2 jet = td_jet(dev, s, u);
            const FundForms closed = td_forms(dev, s, u);
            const FundForms generic = fund_forms(jet);
            CHECK(rel(closed.E, generic.E) < 1e-10);
            CHECK(rel(closed.e, generic.e) < 1e-10);
            CHECK((*closed.normal - *generic.normal).norm() < 1e-10);

            const CurvatureData inv_closed = inv_td_curvatures(dev, spec, s, u);
            const CurvatureData inv_generic = curvatures(fund_forms(invert_jet(spec, jet)));
            CHECK(rel(inv_closed.K, inv_generic.K) < 1e-10);
            CHECK(rel(inv_closed.H, inv_generic.H) < 1e-10);
        }
    }
}
