#include <catch2/catch_amalgamated.hpp>

#include "g2cert/symcore.hpp"
#include "testutil.hpp"

using namespace g2cert;

namespace {

const Context& plain_ctx() {
    static Context ctx = [] {
        Context c;
        c.declare_coordinates({"x", "y", "z", "p", "q"});
        c.freeze();
        return c;
    }();
    return ctx;
}

// Coordinates plus the Chazy-style atom package used across the kernel tests.
const Context& chazy_ctx() {
    static Context ctx = [] {
        Context c;
        c.declare_coordinates({"x", "y", "z", "p", "q"});
        c.declare_dynamic("P", "(P^2-Q)/6");
        c.declare_dynamic("Q", "2/3*(P*Q-R)");
        c.declare_dynamic("R", "P*R+Q^2/15");
        c.declare_dynamic("xi", "Q/45-xi^2");
        c.declare_dynamic("rho", "xi*rho");
        c.declare_dynamic("chi", "1/rho^2");
        c.declare_dynamic("E", "P/3*E");
        c.freeze();
        return c;
    }();
    return ctx;
}

const Context& sqrt3_ctx() {
    static Context ctx = [] {
        Context c;
        c.declare_coordinates({"x", "y", "z", "p", "q"});
        c.declare_algebraic_constant("s3", 2, "3");
        c.freeze();
        return c;
    }();
    return ctx;
}

}  // namespace

TEST_CASE("BigRational canonical invariants") {
    BigRational a(6, -4);
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(BigRational(0, 7) == BigRational(0));
    CHECK(BigRational::from_string("10/15").str() == "2/3");
}

TEST_CASE("normalize cancels gcd") {
    const Context& ctx = plain_ctx();
    CHECK(to_string(parse_expr("(x^2-1)/(x-1)", ctx)) == "x + 1");
    CHECK(to_string(parse_expr("(x^2*y-y^3)/(x*y+y^2)", ctx)) == "x - y");
}

TEST_CASE("normalize applies algebraic relations") {
    Context ctx;
    ctx.declare_coordinates({"x", "y", "z", "p", "q"});
    ctx.declare_algebraic_constant("s3", 2, "3");
    ctx.freeze();
    CHECK(to_string(parse_expr("s3^3", ctx)) == "3*s3");
    CHECK(is_zero(parse_expr("s3^2-3", ctx), ctx));
    CHECK(is_zero(parse_expr("1/(1+s3) - (s3-1)/2", ctx), ctx));
    // denominators are cleared of algebraic atoms
    RationalExpr e = normalize(parse_expr("x/s3", ctx), ctx);
    CHECK_FALSE(e.den().contains(ctx.symbol("s3")));
}

TEST_CASE("Weierstrass relation kills the defining polynomial") {
    Context ctx;
    ctx.declare_coordinate("zt");
    ctx.declare_constant("g3");
    ctx.declare_dynamic("wp", "W");
    ctx.declare_dynamic_algebraic("W", "6*wp^2", 2, "4*wp^3-g3");
    ctx.freeze();
    validate_context(ctx);
    CHECK(is_zero(parse_expr("W^2 - 4*wp^3 + g3", ctx), ctx));
    CHECK_FALSE(is_zero(parse_expr("W - wp", ctx), ctx));
}

TEST_CASE("normalize rejects vanishing denominators") {
    const Context& ctx = sqrt3_ctx();
    RationalExpr num = parse_expr("x", ctx);
    RationalExpr den = parse_expr("s3^2", ctx) - RationalExpr(BigRational(3));
    CHECK_THROWS_AS(normalize(num / (den + RationalExpr()), ctx), ZeroDenominator);
}

TEST_CASE("is_zero basics") {
    const Context& ctx = chazy_ctx();
    RationalExpr P = parse_expr("P", ctx), Q = parse_expr("Q", ctx);
    CHECK(is_zero(P * Q - Q * P, ctx));
    CHECK_FALSE(is_zero(parse_expr("x-y", ctx), ctx));
}

TEST_CASE("differentiate follows atom rules") {
    const Context& ctx = chazy_ctx();
    CHECK(is_equal(differentiate(parse_expr("P", ctx), "x", ctx), parse_expr("(P^2-Q)/6", ctx), ctx));
    // chi' = 1/rho^2 in the constrained chart
    CHECK(is_equal(differentiate(parse_expr("chi", ctx), "x", ctx), parse_expr("1/rho^2", ctx), ctx));
    CHECK(is_equal(differentiate(parse_expr("p*y", ctx), "y", ctx), parse_expr("p", ctx), ctx));
    // dynamic atoms are constant along non-independent coordinates
    CHECK(is_zero(differentiate(parse_expr("P", ctx), "y", ctx), ctx));
    CHECK_THROWS_AS(differentiate(parse_expr("P", ctx), ctx.symbol("P"), ctx), Error);
}

TEST_CASE("truncated jet atoms refuse to differentiate") {
    Context ctx;
    ctx.declare_coordinate("x");
    ctx.declare_dynamic("H2", "H3");
    ctx.declare_dynamic_truncated("H3");
    ctx.freeze();
    CHECK(is_equal(differentiate(parse_expr("H2", ctx), "x", ctx), parse_expr("H3", ctx), ctx));
    CHECK_THROWS_AS(differentiate(parse_expr("H3", ctx), "x", ctx), MissingDerivativeRule);
}

TEST_CASE("substitute: identity bindings normalize") {
    const Context& ctx = plain_ctx();
    RationalExpr e = parse_expr("(x^2-1)/(x-1)", ctx);
    std::unordered_map<SymbolId, RationalExpr> none;
    CHECK(substitute(e, none, ctx) == normalize(e, ctx));
}

TEST_CASE("substitute moves between contexts") {
    Context src;
    src.declare_coordinate("x");
    src.declare_dynamic_truncated("Om");
    src.freeze();
    Context dst;
    dst.declare_coordinate("x");
    dst.declare_dynamic_truncated("eta");
    dst.freeze();
    RationalExpr e = parse_expr("Om^2 + x", src);
    std::unordered_map<SymbolId, RationalExpr> bind{
        {src.symbol("Om"), parse_expr("1/eta", dst)}};
    CHECK(is_equal(substitute(e, bind, dst), parse_expr("1/eta^2 + x", dst), dst));
    std::unordered_map<SymbolId, RationalExpr> missing;
    CHECK_THROWS_AS(substitute(e, missing, dst), UndeclaredSymbol);
}

TEST_CASE("evaluate_exact") {
    const Context& ctx = plain_ctx();
    RationalExpr e = parse_expr("(x^2+1)/x", ctx);
    std::unordered_map<SymbolId, BigRational> pt{{ctx.symbol("x"), BigRational(2)}};
    CHECK(evaluate_exact(e, pt) == BigRational(5, 2));
    pt[ctx.symbol("x")] = BigRational(0);
    CHECK_THROWS_AS(evaluate_exact(e, pt), PoleAtPoint);
}

TEST_CASE("evaluate_exact checks algebraic consistency") {
    const Context& ctx = sqrt3_ctx();
    RationalExpr e = parse_expr("s3*x", ctx);
    std::unordered_map<SymbolId, BigRational> pt{{ctx.symbol("x"), BigRational(1)},
                                                 {ctx.symbol("s3"), BigRational(2)}};
    CHECK_THROWS_AS(evaluate_exact(e, pt, &ctx), InconsistentAlgebraicValue);
}

TEST_CASE("probable_zero") {
    const Context& ctx = plain_ctx();
    CHECK(probable_zero(RationalExpr(), ctx, 3, 42));
    std::optional<ProbableZeroWitness> w;
    CHECK_FALSE(probable_zero(parse_expr("x-y", ctx), ctx, 5, 42, &w));
    REQUIRE(w.has_value());
    CHECK_FALSE(w->value.is_zero());
    // deterministic in the seed
    std::optional<ProbableZeroWitness> w2;
    probable_zero(parse_expr("x-y", ctx), ctx, 5, 42, &w2);
    CHECK(w->value == w2->value);
}

TEST_CASE("parse_expr grammar") {
    const Context& ctx = chazy_ctx();
    CHECK(to_string(parse_expr("q^2", ctx)) == "q^2");
    CHECK(is_equal(parse_expr("(P^2-Q)/6", ctx),
                   (parse_expr("P", ctx).pow(2) - parse_expr("Q", ctx)) /
                       RationalExpr(BigRational(6)),
                   ctx));
    CHECK_THROWS_AS(parse_expr("2*^3", ctx), SyntaxError);
    CHECK_THROWS_AS(parse_expr("bogus+1", ctx), UndeclaredSymbol);
    CHECK_THROWS_AS(parse_expr("x+", ctx), SyntaxError);
    CHECK(is_equal(parse_expr("x^-2", ctx), RationalExpr(BigRational(1)) / parse_expr("x^2", ctx), ctx));
    CHECK(is_equal(parse_expr("-x- -y", ctx), parse_expr("y-x", ctx), ctx));
    try {
        parse_expr("2*^3", ctx);
    } catch (const SyntaxError& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("printer round-trips through the parser") {
    const Context& ctx = chazy_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("P"),
                               ctx.symbol("rho")};
    SplitMix64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        RationalExpr e = normalize(testutil::random_expr(rng, syms), ctx);
        RationalExpr back = parse_expr(to_string(e), ctx);
        CHECK(back == e);
    }
}

TEST_CASE("property: normalize idempotence (1000 cases)") {
    const Context& ctx = sqrt3_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("p"),
                               ctx.symbol("s3")};
    SplitMix64 rng(7);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        RationalExpr e = testutil::random_expr(rng, syms);
        RationalExpr n1;
        try {
            n1 = normalize(e, ctx);
        } catch (const ZeroDenominator&) {
            continue;  // random denominator was a multiple of s3^2-3
        }
        RationalExpr n2 = normalize(n1, ctx);
        REQUIRE(n2 == n1);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("property: field laws at normalization level") {
    const Context& ctx = plain_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("q")};
    SplitMix64 rng(11);
    for (int i = 0; i < 300; ++i) {
        RationalExpr a = testutil::random_expr(rng, syms, 3, 2);
        RationalExpr b = testutil::random_expr(rng, syms, 3, 2);
        RationalExpr c = testutil::random_expr(rng, syms, 3, 2);
        CHECK(is_zero(a * (b + c) - a * b - a * c, ctx));
        CHECK(is_zero((a + b) - (b + a), ctx));
        CHECK(is_zero(a * (b * c) - (a * b) * c, ctx));
    }
}

TEST_CASE("property: Leibniz rule with atom rules") {
    const Context& ctx = chazy_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("P"),
                               ctx.symbol("rho"), ctx.symbol("E")};
    SplitMix64 rng(13);
    SymbolId x = ctx.symbol("x");
    for (int i = 0; i < 150; ++i) {
        RationalExpr f = testutil::random_expr(rng, syms, 3, 2);
        RationalExpr g = testutil::random_expr(rng, syms, 3, 2);
        RationalExpr lhs = differentiate(f * g, x, ctx);
        RationalExpr rhs = differentiate(f, x, ctx) * g + f * differentiate(g, x, ctx);
        CHECK(is_zero(lhs - rhs, ctx));
    }
}

TEST_CASE("property: probable_zero false implies is_zero false") {
    const Context& ctx = plain_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y")};
    SplitMix64 rng(17);
    for (int i = 0; i < 300; ++i) {
        RationalExpr e = testutil::random_expr(rng, syms, 3, 2);
        if (!probable_zero(e, ctx, 3, 1000 + i)) CHECK_FALSE(is_zero(e, ctx));
    }
}

TEST_CASE("property: evaluation commutes with normalize") {
    const Context& ctx = plain_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("z")};
    SplitMix64 rng(19);
    int done = 0;
    for (int i = 0; i < 300 && done < 200; ++i) {
        RationalExpr e = testutil::random_expr(rng, syms, 3, 2);
        RationalExpr n = normalize(e, ctx);
        std::unordered_map<SymbolId, BigRational> pt;
        for (SymbolId s : syms) pt[s] = rng.rational();
        try {
            BigRational v1 = evaluate_exact(e, pt);
            BigRational v2 = evaluate_exact(n, pt);
            CHECK(v1 == v2);
            ++done;
        } catch (const PoleAtPoint&) {
        }
    }
    CHECK(done >= 200);
}

TEST_CASE("relation soundness for declared algebraic atoms") {
    const Context& ctx = sqrt3_ctx();
    for (SymbolId s : ctx.algebraic_atoms()) {
        const auto& rel = *ctx.atom(s).relation;
        RationalExpr residual =
            RationalExpr::variable(s).pow(rel.power) - *rel.replacement;
        CHECK(is_zero(residual, ctx));
    }
}

TEST_CASE("polynomial gcd stress") {
    const Context& ctx = plain_ctx();
    std::vector<SymbolId> syms{ctx.symbol("x"), ctx.symbol("y"), ctx.symbol("z")};
    SplitMix64 rng(29);
    for (int i = 0; i < 120; ++i) {
        Polynomial a = testutil::random_poly(rng, syms, 3, 2);
        Polynomial b = testutil::random_poly(rng, syms, 3, 2);
        Polynomial g = testutil::random_poly(rng, syms, 2, 2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        Polynomial ga = a * g, gb = b * g;
        Polynomial d = poly_gcd(ga, gb);
        Polynomial q;
        REQUIRE(Polynomial::divide_exact(d, poly_gcd(d, g), q));  // g divides the gcd
        REQUIRE(Polynomial::divide_exact(ga, d, q));
        REQUIRE(Polynomial::divide_exact(gb, d, q));
    }
}

TEST_CASE("linear solver over the function field") {
    const Context& ctx = plain_ctx();
    auto P = [&](const std::string& s) { return parse_expr(s, ctx); };
    ExprMatrix A{{P("x"), P("1")}, {P("0"), P("y")}, {P("x"), P("1+y")}};
    // rhs = A * (1, x)^T
    ExprMatrix B{{P("2*x")}, {P("x*y")}, {P("2*x+x*y")}};
    LinearSolution s = solve_linear(ctx, A, B);
    REQUIRE(s.consistent);
    REQUIRE(s.rank == 2);
    CHECK(is_equal(s.x[0][0], P("1"), ctx));
    CHECK(is_equal(s.x[1][0], P("x"), ctx));
    // inconsistent variant
    ExprMatrix B2{{P("2*x")}, {P("x*y")}, {P("1")}};
    CHECK_FALSE(solve_linear(ctx, A, B2).consistent);
}
