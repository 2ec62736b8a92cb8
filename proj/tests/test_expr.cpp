#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "invsurf/expr.hpp"
#include "invsurf/finite_diff.hpp"

using namespace invsurf;

TEST_CASE("helicoid parses as an arity-2 map over (u,v)") {
    const CompiledMap map = parse("u*cos(v), u*sin(v), 2*v");
    CHECK(map.arity() == 2);
    CHECK(map.params()[0] == "u");
    CHECK(map.params()[1] == "v");
    const Vec3 p = map.point(1.0, 0.0);
    CHECK(p.x() == doctest::Approx(1.0));
    CHECK(p.y() == doctest::Approx(0.0));
    CHECK(p.z() == doctest::Approx(0.0));
}

TEST_CASE("arity-1 curve map in s") {
    const CompiledMap map = parse("cos(s), sin(s), 0");
    CHECK(map.arity() == 1);
    CHECK(map.params()[0] == "s");
}

TEST_CASE("dangling input is a syntax error at the end of the text") {
    const std::string text = "1/(s \xE2\x88\x92"; // trailing U+2212 minus
    CHECK_THROWS_AS(parse(text), SyntaxError);
    try {
        parse(text);
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == text.size());
    }
}

TEST_CASE("eval_jet: s*u has unit cross derivative") {
    const CompiledMap map = parse("s*u, 0, 0");
    const SurfaceJet2 j = map.eval_surface(2.3, -1.1);
    CHECK(j.psu.x() == doctest::Approx(1.0));
    CHECK(j.pss.x() == doctest::Approx(0.0));
}

TEST_CASE("eval_jet: sin(s) at 0") {
    const CompiledMap map = parse("sin(s), 0, 0", MapKind::Surface);
    const SurfaceJet2 j = map.eval_surface(0.0, 0.0);
    CHECK(j.p.x() == doctest::Approx(0.0));
    CHECK(j.ps.x() == doctest::Approx(1.0));
    CHECK(j.pss.x() == doctest::Approx(0.0));
}

TEST_CASE("eval_jet: s^2*u at (2,3) matches the oracle") {
    const CompiledMap map = parse("s^2*u, 0, 0");
    const SurfaceJet2 j = map.eval_surface(2.0, 3.0);
    // frozen from fd_jet_surface on (s,u) -> s^2 u at (2,3)
    CHECK(j.p.x() == doctest::Approx(12.0));
    CHECK(j.ps.x() == doctest::Approx(12.0));
    CHECK(j.pu.x() == doctest::Approx(4.0));
    CHECK(j.pss.x() == doctest::Approx(6.0));
    CHECK(j.psu.x() == doctest::Approx(4.0));
    CHECK(j.puu.x() == doctest::Approx(0.0));

    auto point_map = [&](double s, double u) { return map.point(s, u); };
    const SurfaceJet2 fd = fd_jet_surface(point_map, 2.0, 3.0);
    CHECK(std::abs(j.ps.x() - fd.ps.x()) < 1e-5 * 12.0);
    CHECK(std::abs(j.pss.x() - fd.pss.x()) < 1e-3 * 6.0);
    CHECK(std::abs(j.psu.x() - fd.psu.x()) < 1e-3 * 4.0);
}

// --- grammar golden tests: 10 accepted inputs --------------------------------------

TEST_CASE("grammar accepts the golden inputs") {
    const char* accepted[10] = {
        "u*cos(v), u*sin(v), 2*v",
        "cos(s), sin(s), 0",
        "s, u, s*u",
        "1, 2, 3",
        "s^2, s^3, sqrt(s + 2)",
        "-s, --u, -(s*u)",
        "exp(s)*cos(u), exp(s)*sin(u), s/(u + 4)",
        "pi, 2*pi, s + pi",
        "1.5e2*s, 0.25, s^2^1",
        "((s)), (u), ((s) + (u))",
    };
    for (const char* text : accepted) {
        CAPTURE(text);
        CHECK_NOTHROW(parse(text));
    }
}

// --- grammar golden tests: 5 rejected inputs with frozen error offsets -------------

TEST_CASE("grammar rejects malformed inputs at the right byte offset") {
    struct Reject {
        const char* text;
        std::size_t offset;
    };
    // offsets frozen against the published rule: the unexpected token's first
    // byte (end-of-input errors use the text length)
    const Reject rejected[5] = {
        {"1/(s -", 6},          // dangling operator at end of input
        {"cos(s, sin(s), 0", 16}, // '(' swallows the commas; ')' never arrives
        {"s + * u, 0, 0", 4},   // operator where an atom must start
        {"s ^ u, 0, 0", 4},     // non-constant exponent
        {"q + 1, 0, 0", 0},     // unknown identifier
    };

    CHECK_THROWS_AS(parse(rejected[0].text), SyntaxError);
    CHECK_THROWS_AS(parse(rejected[1].text), SyntaxError);
    CHECK_THROWS_AS(parse(rejected[2].text), SyntaxError);
    CHECK_THROWS_AS(parse(rejected[3].text), SyntaxError);
    CHECK_THROWS_AS(parse(rejected[4].text), UnknownIdentifier);

    for (int i = 0; i < 4; ++i) {
        CAPTURE(rejected[i].text);
        try {
            parse(rejected[i].text);
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.offset() == rejected[i].offset);
        }
    }
    try {
        parse(rejected[4].text);
        FAIL("expected UnknownIdentifier");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.offset() == rejected[4].offset);
    }
}

TEST_CASE("component count errors are ArityError") {
    CHECK_THROWS_AS(parse("s, s"), ArityError);
    CHECK_THROWS_AS(parse("s, s, s, s"), ArityError);
    CHECK_THROWS_AS(parse("sin(s, u), 0, 0"), ArityError);
}

TEST_CASE("mixed parameter sets are rejected") {
    CHECK_THROWS_AS(parse("s + t, 0, 0"), UnknownIdentifier);
    CHECK_THROWS_AS(parse("s + v, 0, 0"), UnknownIdentifier);
    CHECK_THROWS_AS(parse("t, 0, 0", MapKind::Surface), UnknownIdentifier);
}

TEST_CASE("function names are restricted to the jet primitive set") {
    CHECK_THROWS_AS(parse("tan(s), 0, 0"), UnknownIdentifier);
    CHECK_THROWS_AS(parse("pi(s), 0, 0"), UnknownIdentifier);
}

TEST_CASE("implicit multiplication is not accepted") {
    CHECK_THROWS_AS(parse("u cos(v), u*sin(v), 2*v"), SyntaxError);
    CHECK_THROWS_AS(parse("2 s, 0, 0"), SyntaxError);
}

TEST_CASE("division by zero during evaluation reports the subexpression offset") {
    const CompiledMap map = parse("1/(s - 1), 0, 0", MapKind::Surface);
    CHECK_NOTHROW(map.eval_surface(0.0, 0.0));
    try {
        map.eval_surface(1.0, 0.0);
        FAIL("expected DivisionByZero");
    } catch (const DivisionByZero& e) {
        CHECK(std::string(e.what()).find("offset 1") != std::string::npos);
    }
    const CompiledMap sq = parse("sqrt(s - 2), 0, 0", MapKind::Surface);
    CHECK_THROWS_AS(sq.eval_surface(0.0, 0.0), DomainError);
}

// --- canonical printing and parse/print idempotence --------------------------------

namespace {

// Random expression generator: depth-limited trees over the full grammar.
struct ExprGen {
    std::mt19937 rng;
    explicit ExprGen(unsigned seed) : rng(seed) {}

    std::string gen(int depth) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
        switch (pick(rng)) {
            case 0: {
                std::uniform_real_distribution<double> num(0.0, 4.0);
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.3f", num(rng));
                return buf;
            }
            case 1:
                return (rng() & 1) ? "s" : "u";
            case 2: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
            case 3: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
            case 4: return "(" + gen(depth - 1) + " * " + gen(depth - 1) + ")";
            case 5: return "(" + gen(depth - 1) + " / (" + gen(depth - 1) + " + 5))";
            case 6: return "(-" + gen(depth - 1) + ")";
            case 7: {
                const char* fn[4] = {"sin", "cos", "sqrt", "exp"};
                std::uniform_int_distribution<int> f(0, 3);
                const int k = f(rng);
                if (k == 2) return "sqrt((" + gen(depth - 1) + ")^2 + 1)";
                if (k == 3) return "exp(0.1*sin(" + gen(depth - 1) + "))";
                return std::string(fn[k]) + "(" + gen(depth - 1) + ")";
            }
            default: {
                std::uniform_int_distribution<int> e(2, 3);
                return "(" + gen(depth - 1) + ")^" + std::to_string(e(rng));
            }
        }
    }

    std::string gen_triple(int depth) {
        return gen(depth) + ", " + gen(depth) + ", " + gen(depth);
    }
};

} // namespace

TEST_CASE("parse-print-parse is idempotent on random expressions") {
    ExprGen gen(9001);
    int checked = 0;
    while (checked < 200) {
        const std::string text = gen.gen_triple(4);
        CompiledMap first;
        try {
            first = parse(text, MapKind::Surface);
        } catch (const Error&) {
            continue; // generator occasionally emits something out of range
        }
        const std::string printed = first.canonical();
        const CompiledMap second = parse(printed, MapKind::Surface);
        for (int c = 0; c < 3; ++c) {
            REQUIRE(structurally_equal(*first.components()[c], *second.components()[c]));
        }
        CHECK(second.canonical() == printed);
        ++checked;
    }
}

TEST_CASE("500 random expressions agree with the finite-difference oracle") {
    ExprGen gen(424242);
    std::uniform_real_distribution<double> point(0.4, 1.6);

    int accepted = 0;
    int guard = 0;
    while (accepted < 500 && guard < 20000) {
        ++guard;
        const std::string text = gen.gen(5) + ", 0, 0";
        const double s0 = point(gen.rng);
        const double u0 = point(gen.rng);

        CompiledMap map;
        SurfaceJet2 jet;
        try {
            map = parse(text, MapKind::Surface);
            jet = map.eval_surface(s0, u0);
        } catch (const Error&) {
            continue;
        }
        // skip wild values where FD step calibration is meaningless
        const double magnitude =
            std::max({std::abs(jet.p.x()), std::abs(jet.ps.x()), std::abs(jet.pu.x()),
                      std::abs(jet.pss.x()), std::abs(jet.psu.x()), std::abs(jet.puu.x())});
        if (!std::isfinite(magnitude) || magnitude > 1e4) continue;

        SurfaceJet2 fd;
        try {
            auto point_map = [&](double s, double u) { return map.point(s, u); };
            fd = fd_jet_surface(point_map, s0, u0);
        } catch (const Error&) {
            continue;
        }

        CAPTURE(text);
        auto close = [](double a, double b, double tol) {
            return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}) < tol;
        };
        CHECK(close(jet.ps.x(), fd.ps.x(), 1e-5));
        CHECK(close(jet.pu.x(), fd.pu.x(), 1e-5));
        CHECK(close(jet.pss.x(), fd.pss.x(), 1e-3));
        CHECK(close(jet.psu.x(), fd.psu.x(), 1e-3));
        CHECK(close(jet.puu.x(), fd.puu.x(), 1e-3));
        ++accepted;
    }
    CHECK(accepted == 500);
}
