#include "invsurf/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "invsurf/errors.hpp"
#include "invsurf/inversion.hpp"

namespace invsurf {

namespace {

// Residual relative to max(1, |a|, |b|); plain absolute difference for
// quantities of order one or below.
double rel_residual(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double grid_coord(double lo, double hi, int i, int count) {
    if (count <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

class Check {
public:
    Check(std::string name, double tol) {
        result_.name = std::move(name);
        result_.tolerance = tol;
    }

    void add(double residual) {
        result_.max_abs_residual = std::max(result_.max_abs_residual, residual);
        ++fresh_;
    }

    void point_done() {
        if (fresh_ > 0) ++result_.points_evaluated;
        fresh_ = 0;
    }

    void skip() { ++result_.points_skipped; }

    // Convention-audit rows: a mismatch is documented, never fatal. When the
    // matrices happen to coincide (e.g. torsion-free curves) the row passes.
    CheckResult finish_flagged(std::string detail = {}) {
        result_.status = result_.max_abs_residual <= result_.tolerance
                             ? CheckStatus::Pass
                             : CheckStatus::FlaggedConventionMismatch;
        result_.detail = std::move(detail);
        return result_;
    }

    CheckResult finish(std::string detail = {}) {
        result_.status = result_.max_abs_residual <= result_.tolerance ? CheckStatus::Pass
                                                                       : CheckStatus::Fail;
        result_.detail = std::move(detail);
        return result_;
    }

private:
    CheckResult result_;
    int fresh_ = 0;
};

bool is_skip_error(const std::exception& ex) {
    return dynamic_cast<const ExcludedPoint*>(&ex) || dynamic_cast<const SingularPoint*>(&ex) ||
           dynamic_cast<const DegenerateCurvature*>(&ex) ||
           dynamic_cast<const CenterHit*>(&ex) || dynamic_cast<const DomainError*>(&ex) ||
           dynamic_cast<const IrregularPoint*>(&ex);
}

double max_entry_diff(const Mat2& a, const Mat2& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Everything the per-point checks need, computed once per (s,u).
struct PointData {
    FrenetData fr;
    Vec3 m_point;
    Vec3 normal_m;                 // closed-form U_M
    FundForms closed_forms;        // closed forms for the base surface
    TdCurvatures closed_curv;
    Christoffels closed_chr;
    FundForms generic_forms;       // generic pipeline on the exact jet
    CurvatureData generic_curv;
    Christoffels generic_chr;
    ConformalFactors factors;
    FundForms predicted_forms;     // transformation-law predictors
    CurvatureData predicted_curv;
    FundForms closed_inv_forms;    // closed forms for the inverse surface
    CurvatureData closed_inv_curv;
    InvTdWeingarten inv_weingarten;
    Christoffels closed_inv_chr;
    FundForms generic_inv_forms;   // generic pipeline on the composed jet
    CurvatureData generic_inv_curv;
    Christoffels generic_inv_chr;
    double flip = 1.0;             // orientation alignment sign
};

PointData evaluate_point(const TangentDevelopableModel& model, const InversionSpec& spec,
                         double s, double u) {
    PointData d;
    d.fr = frenet(model.curve(), s);
    const SurfaceJet2 jet = td_jet(model, s, u);
    d.m_point = jet.p;
    d.closed_forms = td_forms(model, s, u);
    d.normal_m = *d.closed_forms.normal;
    d.closed_curv = td_curvatures(model, s, u);
    d.closed_chr = td_christoffel(model, s, u);
    d.generic_forms = fund_forms(jet);
    d.generic_curv = curvatures(d.generic_forms);
    d.generic_chr = christoffel(jet);

    d.factors = conformal_factors(spec, d.m_point, d.normal_m);
    d.predicted_forms = predict_forms(d.closed_forms, d.factors);
    d.predicted_curv =
        predict_curvatures(curvatures(d.closed_forms), d.factors, spec.radius);
    d.closed_inv_forms = inv_td_forms(model, spec, s, u);
    d.closed_inv_curv = inv_td_curvatures(model, spec, s, u);
    d.inv_weingarten = inv_td_weingarten(model, spec, s, u);
    d.closed_inv_chr = inv_td_christoffel(model, spec, s, u);

    const SurfaceJet2 inv_jet = invert_jet(spec, jet);
    d.generic_inv_forms = fund_forms(inv_jet);
    d.generic_inv_curv = curvatures(d.generic_inv_forms);
    d.generic_inv_chr = christoffel(inv_jet);

    // The predictors' second form is taken with respect to -Phi_*(U_M); align
    // the generic result by the sign of <U_Y, Phi_*(U_M)>.
    const Vec3 pushed = pushforward(spec, d.m_point, d.normal_m);
    d.flip = d.generic_inv_forms.normal->dot(pushed) > 0.0 ? -1.0 : 1.0;
    return d;
}

} // namespace

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::FlaggedConventionMismatch: return "flagged_convention_mismatch";
    }
    return "fail";
}

CheckResult compare_matrices(const std::string& name, const Weingarten& a, const Weingarten& b,
                             double tol, MatrixCompareMode mode) {
    Check check(name, tol);
    if (mode == MatrixCompareMode::Strict) {
        check.add(max_entry_diff(a.m, b.m));
    } else {
        check.add(std::abs(a.m.trace() - b.m.trace()));
        check.add(std::abs(a.m.determinant() - b.m.determinant()));
    }
    check.point_done();
    return check.finish();
}

VerificationReport run_suite(const SceneConfig& scene) {
    const auto t0 = std::chrono::steady_clock::now();

    if (scene.grid.s_count < 1 || scene.grid.u_count < 1)
        throw EmptyGrid("scene grid has no points");

    SceneObjects objects = realize_scene(scene);
    if (!objects.developable)
        throw CurveNotArcLength("closed-form checks require a tangent-developable scene");
    const TangentDevelopableModel& model = *objects.developable;
    const CurveModel& curve = model.curve();
    const InversionSpec& spec = objects.inversion;
    const GridSpec& grid = objects.grid;

    VerificationReport report;
    report.scene = scene.description();

    // --- Frenet residuals -------------------------------------------------------
    {
        Check ortho("frenet_orthonormality", 1e-9);
        Check system("frenet_system_residual", 1e-4);
        for (int i = 0; i < grid.s_count; ++i) {
            const double s = grid_coord(grid.s_min, grid.s_max, i, grid.s_count);
            try {
                const FrenetData fr = frenet(curve, s);
                ortho.add(std::abs(fr.T.norm() - 1.0));
                ortho.add(std::abs(fr.N.norm() - 1.0));
                ortho.add(std::abs(fr.B.norm() - 1.0));
                ortho.add(std::abs(fr.T.dot(fr.N)));
                ortho.add(std::abs(fr.T.dot(fr.B)));
                ortho.add(std::abs(fr.N.dot(fr.B)));
                ortho.add((fr.B - fr.T.cross(fr.N)).norm());
                ortho.point_done();

                const double h = 1e-4 * std::max(1.0, std::abs(s));
                const FrenetData fp = frenet(curve, s + h);
                const FrenetData fm = frenet(curve, s - h);
                const Vec3 dT = (fp.T - fm.T) / (2.0 * h);
                const Vec3 dN = (fp.N - fm.N) / (2.0 * h);
                const Vec3 dB = (fp.B - fm.B) / (2.0 * h);
                system.add((dT - fr.kappa * fr.N).norm());
                system.add((dN + fr.kappa * fr.T - fr.tau * fr.B).norm());
                system.add((dB + fr.tau * fr.N).norm());
                system.point_done();
            } catch (const Error& ex) {
                if (!is_skip_error(ex)) throw;
                ortho.skip();
                system.skip();
            }
        }
        report.checks.push_back(ortho.finish());
        report.checks.push_back(system.finish());
    }

    // --- closed forms vs generic pipeline on the base surface --------------------
    {
        Check first("td_first_forms_vs_generic", 1e-8);
        Check second("td_second_forms_vs_generic", 1e-8);
        Check curv("td_curvatures_vs_generic", 1e-8);
        Check chr("td_christoffel_vs_generic", 1e-8);
        Check inv_first("inversion_transform_first_forms", 1e-6);
        Check inv_second("inversion_transform_second_forms", 1e-6);
        Check inv_curv("inversion_transform_curvatures", 1e-6);
        Check cf_inv_forms("inv_td_forms_vs_generic", 1e-8);
        Check cf_inv_curv("inv_td_curvatures_vs_generic", 1e-8);
        Check cf_inv_chr("inv_td_christoffel_vs_generic", 1e-8);
        Check trace_det("weingarten_trace_det", 1e-9);
        Check flat_iff("flat_iff_factor_vanishes", 0.5);
        Check minimal_iff("minimal_iff_expression_vanishes", 0.5);
        Check lit_base("stated_weingarten_base_entrywise", 1e-8);
        Check lit_inv("stated_weingarten_inverse_entrywise", 1e-8);
        Check lit_inv_td("stated_weingarten_inverse_trace_det", 1e-9);
        double max_base_trace_anomaly = 0.0;

        std::vector<Check*> all = {&first,       &second,     &curv,       &chr,
                                   &inv_first,   &inv_second, &inv_curv,   &cf_inv_forms,
                                   &cf_inv_curv, &cf_inv_chr, &trace_det,  &flat_iff,
                                   &minimal_iff, &lit_base,   &lit_inv,    &lit_inv_td};

        for (int i = 0; i < grid.s_count; ++i) {
            const double s = grid_coord(grid.s_min, grid.s_max, i, grid.s_count);
            for (int j = 0; j < grid.u_count; ++j) {
                const double u = grid_coord(grid.u_min, grid.u_max, j, grid.u_count);
                PointData d;
                try {
                    d = evaluate_point(model, spec, s, u);
                } catch (const Error& ex) {
                    if (!is_skip_error(ex)) throw;
                    for (Check* c : all) c->skip();
                    continue;
                }

                first.add(rel_residual(d.closed_forms.E, d.generic_forms.E));
                first.add(rel_residual(d.closed_forms.F, d.generic_forms.F));
                first.add(rel_residual(d.closed_forms.G, d.generic_forms.G));

                second.add(rel_residual(d.closed_forms.e, d.generic_forms.e));
                second.add(rel_residual(d.closed_forms.f, d.generic_forms.f));
                second.add(rel_residual(d.closed_forms.g, d.generic_forms.g));
                second.add((d.normal_m - *d.generic_forms.normal).norm());

                curv.add(std::abs(d.generic_curv.K)); // K_M = 0
                curv.add(rel_residual(d.closed_curv.curv.H, d.generic_curv.H));

                chr.add(rel_residual(d.closed_chr.g1_11, d.generic_chr.g1_11));
                chr.add(rel_residual(d.closed_chr.g2_11, d.generic_chr.g2_11));
                chr.add(rel_residual(d.closed_chr.g1_12, d.generic_chr.g1_12));
                chr.add(rel_residual(d.closed_chr.g2_12, d.generic_chr.g2_12));
                chr.add(rel_residual(d.closed_chr.g1_22, d.generic_chr.g1_22));
                chr.add(rel_residual(d.closed_chr.g2_22, d.generic_chr.g2_22));

                // transformation-law predictors against direct evaluation of Phi o M
                const double flip = d.flip;
                inv_first.add(rel_residual(d.predicted_forms.E, d.generic_inv_forms.E));
                inv_first.add(rel_residual(d.predicted_forms.F, d.generic_inv_forms.F));
                inv_first.add(rel_residual(d.predicted_forms.G, d.generic_inv_forms.G));
                inv_second.add(rel_residual(d.predicted_forms.e, flip * d.generic_inv_forms.e));
                inv_second.add(rel_residual(d.predicted_forms.f, flip * d.generic_inv_forms.f));
                inv_second.add(rel_residual(d.predicted_forms.g, flip * d.generic_inv_forms.g));

                inv_curv.add(rel_residual(d.predicted_curv.K, d.generic_inv_curv.K));
                inv_curv.add(rel_residual(d.predicted_curv.H, flip * d.generic_inv_curv.H));

                cf_inv_forms.add(rel_residual(d.closed_inv_forms.E, d.generic_inv_forms.E));
                cf_inv_forms.add(rel_residual(d.closed_inv_forms.F, d.generic_inv_forms.F));
                cf_inv_forms.add(rel_residual(d.closed_inv_forms.G, d.generic_inv_forms.G));
                cf_inv_forms.add(
                    rel_residual(d.closed_inv_forms.e, flip * d.generic_inv_forms.e));
                cf_inv_forms.add(
                    rel_residual(d.closed_inv_forms.f, flip * d.generic_inv_forms.f));
                cf_inv_forms.add(
                    rel_residual(d.closed_inv_forms.g, flip * d.generic_inv_forms.g));

                cf_inv_curv.add(rel_residual(d.closed_inv_curv.K, d.generic_inv_curv.K));
                cf_inv_curv.add(
                    rel_residual(d.closed_inv_curv.H, flip * d.generic_inv_curv.H));

                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g1_11, d.generic_inv_chr.g1_11));
                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g2_11, d.generic_inv_chr.g2_11));
                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g1_12, d.generic_inv_chr.g1_12));
                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g2_12, d.generic_inv_chr.g2_12));
                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g1_22, d.generic_inv_chr.g1_22));
                cf_inv_chr.add(rel_residual(d.closed_inv_chr.g2_22, d.generic_inv_chr.g2_22));

                // trace = 2H and det = K for the standard and predicted matrices
                const Mat2& sm = d.closed_curv.standard.m;
                trace_det.add(rel_residual(sm.trace(), 2.0 * d.closed_curv.curv.H));
                trace_det.add(rel_residual(sm.determinant(), d.closed_curv.curv.K));
                const Mat2& sn = d.inv_weingarten.predicted.m;
                trace_det.add(rel_residual(sn.trace(), 2.0 * d.closed_inv_curv.H));
                trace_det.add(rel_residual(sn.determinant(), d.closed_inv_curv.K));

                // flatness: |K_N| < tol exactly when a factor of its product form
                // K_N = -(4/r^2) eta f2 vanishes at the derived tolerance
                {
                    const double tol = 1e-9;
                    const double r2 = spec.radius * spec.radius;
                    const double eta = d.factors.eta;
                    const double sg = u * d.fr.kappa < 0.0 ? -1.0 : 1.0;
                    const double f2 = sg * d.fr.tau /
                                          (2.0 * d.factors.lambda * u * d.fr.kappa) -
                                      eta / r2;
                    const bool flat = std::abs(d.closed_inv_curv.K) < tol;
                    const double product_tol = tol * r2 / 4.0;
                    constexpr double kFloor = 1e-30;
                    const bool factor_vanishes =
                        std::abs(eta) < product_tol / std::max(std::abs(f2), kFloor) ||
                        std::abs(f2) < product_tol / std::max(std::abs(eta), kFloor);
                    flat_iff.add(flat == factor_vanishes ? 0.0 : 1.0);
                }
                // minimality: |H_N| < tol exactly when its defining expression
                // vanishes
                {
                    const double tol = 1e-9;
                    const double r2 = spec.radius * spec.radius;
                    const double sg = u * d.fr.kappa < 0.0 ? -1.0 : 1.0;
                    const double h_expression =
                        sg * d.fr.tau / (2.0 * d.factors.lambda * u * d.fr.kappa) -
                        2.0 * d.factors.eta / r2;
                    const bool minimal = std::abs(d.closed_inv_curv.H) < tol;
                    minimal_iff.add(minimal == (std::abs(h_expression) < tol) ? 0.0 : 1.0);
                }

                // alternative stated matrices (convention audit)
                lit_base.add(
                    max_entry_diff(d.closed_curv.standard.m, d.closed_curv.stated.m));
                max_base_trace_anomaly =
                    std::max(max_base_trace_anomaly,
                             std::abs(d.closed_curv.stated.m.trace() -
                                      2.0 * d.closed_curv.curv.H));
                lit_inv.add(max_entry_diff(d.inv_weingarten.predicted.m,
                                           d.inv_weingarten.stated.m));
                const Mat2& lit = d.inv_weingarten.stated.m;
                lit_inv_td.add(rel_residual(lit.trace(), 2.0 * d.closed_inv_curv.H));
                lit_inv_td.add(rel_residual(lit.determinant(), d.closed_inv_curv.K));

                for (Check* c : all) c->point_done();
            }
        }

        report.checks.push_back(first.finish());
        report.checks.push_back(second.finish());
        report.checks.push_back(curv.finish());
        report.checks.push_back(chr.finish());
        report.checks.push_back(inv_first.finish());
        report.checks.push_back(inv_second.finish());
        report.checks.push_back(inv_curv.finish());
        report.checks.push_back(cf_inv_forms.finish());
        report.checks.push_back(cf_inv_curv.finish());
        report.checks.push_back(cf_inv_chr.finish());
        report.checks.push_back(trace_det.finish());
        report.checks.push_back(
            flat_iff.finish("residual counts points where the iff breaks"));
        report.checks.push_back(
            minimal_iff.finish("residual counts points where the iff breaks"));

        char detail[160];
        std::snprintf(detail, sizeof(detail),
                      "stated matrix has trace H, not 2H (max |tr - 2H| = %.3g); det matches K",
                      max_base_trace_anomaly);
        report.checks.push_back(lit_base.finish_flagged(detail));
        report.checks.push_back(lit_inv.finish_flagged(
            "off-diagonal structure differs from the standard operator; trace and det agree"));
        report.checks.push_back(lit_inv_td.finish());
    }

    report.overall_pass = true;
    for (const CheckResult& c : report.checks)
        if (c.status == CheckStatus::Fail) report.overall_pass = false;

    const auto t1 = std::chrono::steady_clock::now();
    report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    return report;
}

std::string format_report(const VerificationReport& report) {
    std::string out;
    out += "verification report\n";
    out += "scene: " + report.scene + "\n";
    out += "checks:\n";
    char line[512];
    std::snprintf(line, sizeof(line), "  %-45s %8s %8s %-26s %-26s %s\n", "name", "points",
                  "skipped", "max_abs_residual", "tolerance", "status");
    out += line;
    for (const CheckResult& c : report.checks) {
        std::snprintf(line, sizeof(line), "  %-45s %8zu %8zu %-26.17g %-26.17g %s\n",
                      c.name.c_str(), c.points_evaluated, c.points_skipped, c.max_abs_residual,
                      c.tolerance, to_string(c.status));
        out += line;
        if (!c.detail.empty()) {
            std::snprintf(line, sizeof(line), "    note: %s\n", c.detail.c_str());
            out += line;
        }
    }
    out += std::string("overall: ") + (report.overall_pass ? "pass" : "fail") + "\n";
    std::snprintf(line, sizeof(line), "elapsed_seconds: %.17g\n", report.elapsed_seconds);
    out += line;
    return out;
}

} // namespace invsurf
