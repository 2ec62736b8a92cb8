#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "invsurf/errors.hpp"
#include "invsurf/verify.hpp"

using namespace invsurf;

namespace {

const CheckResult* find_check(const VerificationReport& report, const std::string& name) {
    for (const CheckResult& c : report.checks)
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("compare_matrices: equal, trace anomaly, trace/det agreement") {
    Weingarten a, b;
    a.m << -1.0, 0.0, 1.0, 0.0;
    b = a;
    const CheckResult equal = compare_matrices("equal", a, b, 1e-12, MatrixCompareMode::Strict);
    CHECK(equal.status == CheckStatus::Pass);
    CHECK(equal.max_abs_residual == 0.0);

    // standard vs the stated base matrix: trace residual is |H| = 0.5
    Weingarten literal;
    literal.m << 1.0, 1.0, 0.0, 0.0;
    literal.m *= -0.5;
    const CheckResult strict =
        compare_matrices("strict", a, literal, 1e-9, MatrixCompareMode::Strict);
    CHECK(strict.status == CheckStatus::Fail);
    const CheckResult trace_det =
        compare_matrices("trace_det", a, literal, 1e-9, MatrixCompareMode::TraceDetOnly);
    CHECK(trace_det.status == CheckStatus::Fail);
    CHECK(trace_det.max_abs_residual == doctest::Approx(0.5));

    // the two inverse-surface matrices agree on trace and det
    Weingarten predicted, stated;
    predicted.m << 2.0, 0.0, -2.0, 0.0;
    stated.m << 2.0, 2.0, 0.0, 0.0;
    const CheckResult inv_strict =
        compare_matrices("inv_strict", predicted, stated, 1e-9, MatrixCompareMode::Strict);
    CHECK(inv_strict.status == CheckStatus::Fail);
    CHECK(inv_strict.max_abs_residual == doctest::Approx(2.0));
    const CheckResult inv_td =
        compare_matrices("inv_td", predicted, stated, 1e-9, MatrixCompareMode::TraceDetOnly);
    CHECK(inv_td.status == CheckStatus::Pass);
}

TEST_CASE("run_suite on the default scene passes with exactly two flagged rows") {
    const VerificationReport report = run_suite(default_scene());
    CHECK(report.overall_pass);

    int flagged = 0;
    for (const CheckResult& c : report.checks) {
        CHECK(c.status != CheckStatus::Fail);
        if (c.status == CheckStatus::FlaggedConventionMismatch) ++flagged;
        if (c.status == CheckStatus::Pass) CHECK(c.max_abs_residual <= c.tolerance);
    }
    CHECK(flagged == 2);

    const CheckResult* base = find_check(report, "stated_weingarten_base_entrywise");
    REQUIRE(base != nullptr);
    CHECK(base->status == CheckStatus::FlaggedConventionMismatch);
    const CheckResult* inv = find_check(report, "stated_weingarten_inverse_entrywise");
    REQUIRE(inv != nullptr);
    CHECK(inv->status == CheckStatus::FlaggedConventionMismatch);
    const CheckResult* inv_td = find_check(report, "stated_weingarten_inverse_trace_det");
    REQUIRE(inv_td != nullptr);
    CHECK(inv_td->status == CheckStatus::Pass);
    const CheckResult* trace_det = find_check(report, "weingarten_trace_det");
    REQUIRE(trace_det != nullptr);
    CHECK(trace_det->status == CheckStatus::Pass);

    // order follows the specified run order
    const auto index = [&](const char* name) {
        for (std::size_t i = 0; i < report.checks.size(); ++i)
            if (report.checks[i].name == name) return i;
        return static_cast<std::size_t>(-1);
    };
    CHECK(index("frenet_orthonormality") < index("td_first_forms_vs_generic"));
    CHECK(index("td_christoffel_vs_generic") < index("inversion_transform_first_forms"));
    CHECK(index("inv_td_christoffel_vs_generic") < index("weingarten_trace_det"));
    CHECK(index("weingarten_trace_det") < index("flat_iff_factor_vanishes"));
    CHECK(index("minimal_iff_expression_vanishes") <
          index("stated_weingarten_base_entrywise"));
}

TEST_CASE("run_suite passes with an off-center inversion (eta != 0 everywhere)") {
    SceneConfig scene = default_scene();
    scene.inversion.center = Vec3(0.3, -0.2, 4.0);
    scene.inversion.radius = 1.7;
    const VerificationReport report = run_suite(scene);
    CHECK(report.overall_pass);
    for (const CheckResult& c : report.checks) CHECK(c.status != CheckStatus::Fail);
}

TEST_CASE("run_suite passes on the second sheet (u < 0)") {
    SceneConfig scene = default_scene();
    scene.grid.u_min = -1.5;
    scene.grid.u_max = -0.2;
    const VerificationReport report = run_suite(scene);
    CHECK(report.overall_pass);
    int flagged = 0;
    for (const CheckResult& c : report.checks)
        if (c.status == CheckStatus::FlaggedConventionMismatch) ++flagged;
    CHECK(flagged == 2);
}

TEST_CASE("torsion-free curve: stated matrices coincide, nothing is flagged") {
    // The tangent developable of a circle is flat and minimal after inversion
    // about a center in its plane's normal line through the origin: eta = 0
    // identically, so both stated matrices equal the standard/predicted ones.
    SceneConfig scene = default_scene();
    scene.curve_name = "circle";
    scene.curve_params = {2.0};
    const VerificationReport report = run_suite(scene);
    CHECK(report.overall_pass);
    for (const CheckResult& c : report.checks) {
        CAPTURE(c.name);
        CHECK(c.status == CheckStatus::Pass);
    }

    const CheckResult* flat = find_check(report, "flat_iff_factor_vanishes");
    REQUIRE(flat != nullptr);
    CHECK(flat->max_abs_residual == 0.0); // flat everywhere, iff holds everywhere
}

TEST_CASE("run_suite counts skipped points for a grid crossing u=0") {
    SceneConfig scene = default_scene();
    scene.grid.u_min = 0.0; // first u row sits on the edge of regression
    scene.grid.u_count = 4;
    const VerificationReport report = run_suite(scene);
    CHECK(report.overall_pass);
    const CheckResult* forms = find_check(report, "td_first_forms_vs_generic");
    REQUIRE(forms != nullptr);
    CHECK(forms->points_skipped == static_cast<std::size_t>(scene.grid.s_count));
    CHECK(forms->points_evaluated ==
          static_cast<std::size_t>(scene.grid.s_count) * 3);
}

TEST_CASE("run_suite raises EmptyGrid and CurveNotArcLength") {
    SceneConfig empty = default_scene();
    empty.grid.s_count = 0;
    CHECK_THROWS_AS(run_suite(empty), EmptyGrid);

    SceneConfig no_dev = default_scene();
    no_dev.curve_kind = SceneConfig::CurveKind::None;
    no_dev.surface_kind = SceneConfig::SurfaceKind::Expression;
    no_dev.surface_components = "u*cos(v), u*sin(v), 2*v";
    no_dev.grid.s_min = 0.5;
    no_dev.grid.s_max = 2.0;
    no_dev.grid.u_min = -1.5;
    no_dev.grid.u_max = 1.5;
    CHECK_THROWS_AS(run_suite(no_dev), CurveNotArcLength);
}

TEST_CASE("report determinism: identical scenes give bit-identical residuals") {
    const VerificationReport a = run_suite(default_scene());
    const VerificationReport b = run_suite(default_scene());
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].max_abs_residual == b.checks[i].max_abs_residual);
        CHECK(a.checks[i].points_evaluated == b.checks[i].points_evaluated);
        CHECK(a.checks[i].points_skipped == b.checks[i].points_skipped);
    }
}

TEST_CASE("monotonicity: refining the grid never decreases the max residual") {
    SceneConfig coarse = default_scene();
    coarse.grid.s_count = 10;
    coarse.grid.u_count = 10;

    // 19x19 points contain the 10x10 points (odd refinement keeps endpoints
    // and midpoints aligned)
    SceneConfig fine = coarse;
    fine.grid.s_count = 19;
    fine.grid.u_count = 19;

    const VerificationReport a = run_suite(coarse);
    const VerificationReport b = run_suite(fine);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        CHECK(b.checks[i].max_abs_residual >= a.checks[i].max_abs_residual);
}

TEST_CASE("format_report carries all rows, the overall verdict and 17-digit residuals") {
    const VerificationReport report = run_suite(default_scene());
    const std::string text = format_report(report);
    CHECK(text.find("verification report") != std::string::npos);
    CHECK(text.find("scene: curve=helix(1,1)") != std::string::npos);
    for (const CheckResult& c : report.checks) CHECK(text.find(c.name) != std::string::npos);
    CHECK(text.find("overall: pass") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') >
          static_cast<long>(report.checks.size()));
    CHECK(text.find("flagged_convention_mismatch") != std::string::npos);
}
