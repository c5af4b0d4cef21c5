#include <catch2/catch_amalgamated.hpp>

#include "g2cert/exterior.hpp"
#include "testutil.hpp"

using namespace g2cert;

namespace {

const Context& flat_a() {
    static Context ctx = [] {
        Context c;
        c.set_name("flat_a");
        c.declare_coordinates({"a1", "a2", "a3", "a4", "a5"});
        c.freeze();
        return c;
    }();
    return ctx;
}

const Context& monge() {
    static Context ctx = [] {
        Context c;
        c.set_name("monge");
        c.declare_coordinates({"x", "y", "z", "p", "q"});
        c.freeze();
        return c;
    }();
    return ctx;
}

DiffForm dthe(const Context& c, std::size_t i) { return DiffForm::coordinate_differential(&c, i); }

std::vector<DiffForm> flat_thetas() {
    const Context& c = flat_a();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    std::vector<DiffForm> th;
    th.push_back(dthe(c, 0) + P("a3+1/2*a4*a5") * dthe(c, 3));
    th.push_back(dthe(c, 1) + P("a3-1/2*a4*a5") * dthe(c, 4));
    th.push_back(dthe(c, 2) + P("1/2*a4") * dthe(c, 4) - P("1/2*a5") * dthe(c, 3));
    th.push_back(dthe(c, 3));
    th.push_back(dthe(c, 4));
    return th;
}

// The Hilbert-Cartan chart map into the flat chart.
CoordinateMap hc_map() {
    const Context& src = monge();
    const Context& dst = flat_a();
    auto P = [&](const std::string& s) { return parse_expr(s, src); };
    return CoordinateMap(&src, &dst,
                         {P("2*z+2*q^2*x-4*p*q"), P("2*y"), P("2*p-q*x"), P("2*q"), P("-x")});
}

}  // namespace

TEST_CASE("wedge basics") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    DiffForm dx = dthe(c, 0), dy = dthe(c, 1);
    CHECK(wedge(dx, dx).is_zero_form(c));
    DiffForm pdx = P("p") * dx;
    DiffForm w = wedge(pdx, dy);
    CHECK(is_equal(w.coeff({0, 1}), P("p"), c));
    // graded anticommutativity for 1-forms
    CHECK((wedge(pdx, dy) + wedge(dy, pdx)).is_zero_form(c));
    DiffForm four = wedge(wedge(dx, dy), wedge(dthe(c, 2), dthe(c, 3)));
    CHECK_THROWS_AS(wedge(four, wedge(dthe(c, 3), dthe(c, 4))), DegreeOverflow);
}

TEST_CASE("flat structure equations") {
    const Context& c = flat_a();
    auto th = flat_thetas();
    CHECK((exterior_d(th[0]) - wedge(th[2], th[3])).is_zero_form(c));
    CHECK((exterior_d(th[1]) - wedge(th[2], th[4])).is_zero_form(c));
    CHECK((exterior_d(th[2]) - wedge(th[3], th[4])).is_zero_form(c));
    CHECK(exterior_d(th[3]).is_zero_form(c));
    CHECK(exterior_d(th[4]).is_zero_form(c));
    // theta4 ^ theta5 = da4 ^ da5
    CHECK((wedge(th[3], th[4]) - wedge(dthe(c, 3), dthe(c, 4))).is_zero_form(c));
}

TEST_CASE("d of the Monge form dz - q^2 dx") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    DiffForm w3 = dthe(c, 2) - P("q^2") * dthe(c, 0);
    DiffForm d3 = exterior_d(w3);
    // canonical increasing key (x, q) carries +2q
    CHECK(is_equal(d3.coeff({0, 4}), P("2*q"), c));
}

TEST_CASE("property: d^2 = 0 on random forms of degree 0..3") {
    const Context& c = monge();
    std::vector<SymbolId> syms{c.symbol("x"), c.symbol("y"), c.symbol("q")};
    SplitMix64 rng(31);
    for (int deg = 0; deg <= 3; ++deg) {
        for (int rep = 0; rep < 25; ++rep) {
            DiffForm a(&c, deg);
            // fill a few random keys
            for (int t = 0; t < 3; ++t) {
                FormKey k;
                std::uint8_t start = static_cast<std::uint8_t>(rng.below(2));
                for (int i = 0; i < deg; ++i) k.push_back(start + static_cast<std::uint8_t>(i + rng.below(2) * (i == 0)));
                std::sort(k.begin(), k.end());
                k.erase(std::unique(k.begin(), k.end()), k.end());
                if (static_cast<int>(k.size()) != deg) continue;
                a.add_to(k, testutil::random_expr(rng, syms, 3, 2));
            }
            CHECK(exterior_d(exterior_d(a)).is_zero_form(c));
        }
    }
}

TEST_CASE("property: wedge anticommutativity and associativity") {
    const Context& c = monge();
    std::vector<SymbolId> syms{c.symbol("x"), c.symbol("p")};
    SplitMix64 rng(37);
    for (int rep = 0; rep < 40; ++rep) {
        DiffForm a = DiffForm::one_form(
            &c, {testutil::random_expr(rng, syms, 2, 2), testutil::random_expr(rng, syms, 2, 2),
                 RationalExpr(), RationalExpr(), RationalExpr()});
        DiffForm b = DiffForm::one_form(
            &c, {RationalExpr(), testutil::random_expr(rng, syms, 2, 2),
                 testutil::random_expr(rng, syms, 2, 2), RationalExpr(), RationalExpr()});
        DiffForm f = DiffForm::function(&c, testutil::random_expr(rng, syms, 2, 2));
        CHECK((wedge(a, b) + wedge(b, a)).is_zero_form(c));
        CHECK((wedge(wedge(a, b), f) - wedge(a, wedge(b, f))).is_zero_form(c));
    }
}

TEST_CASE("property: bracket antisymmetry and Jacobi (200 triples)") {
    Context c;
    c.declare_coordinates({"u1", "u2", "u3"});
    c.freeze();
    std::vector<SymbolId> syms{c.symbol("u1"), c.symbol("u2"), c.symbol("u3")};
    SplitMix64 rng(41);
    auto rand_field = [&] {
        std::vector<RationalExpr> comp;
        for (int i = 0; i < 3; ++i)
            comp.push_back(RationalExpr(testutil::random_poly(rng, syms, 3, 2)));
        return VectorField(&c, comp);
    };
    for (int rep = 0; rep < 200; ++rep) {
        VectorField X = rand_field(), Y = rand_field(), Z = rand_field();
        VectorField anti = lie_bracket(X, Y) + lie_bracket(Y, X);
        CHECK(anti.is_zero_field(c));
        VectorField jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                          lie_bracket(Z, lie_bracket(X, Y));
        CHECK(jac.is_zero_field(c));
    }
    CHECK(lie_bracket(rand_field(), VectorField::zero(&c)).is_zero_field(c));
}

TEST_CASE("bracket of a field with itself vanishes") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    VectorField X(&c, {P("1"), P("p"), P("q^2"), P("q"), P("0")});
    CHECK(lie_bracket(X, X).is_zero_field(c));
    CHECK(lie_bracket(VectorField::coordinate(&c, 3), VectorField::coordinate(&c, 4))
              .is_zero_field(c));
}

TEST_CASE("apply is the directional derivative") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    VectorField X(&c, {P("0"), P("0"), P("0"), P("1"), P("0")});
    CHECK(is_equal(apply(X, P("p*q + z")), P("q"), c));
    CHECK(is_zero(apply(X, P("3/2")), c));
}

TEST_CASE("pullback of the flat thetas along the Hilbert-Cartan map") {
    CoordinateMap m = hc_map();
    const Context& src = m.source();
    auto P = [&](const std::string& s) { return parse_expr(s, src); };
    auto th = flat_thetas();
    DiffForm th1 = pullback(m, th[0]);
    DiffForm th2 = pullback(m, th[1]);
    DiffForm th3 = pullback(m, th[2]);
    DiffForm dx = dthe(src, 0), dy = dthe(src, 1), dz = dthe(src, 2), dp = dthe(src, 3);
    DiffForm w1 = dy - P("p") * dx;
    DiffForm w2 = dp - P("q") * dx;
    DiffForm w3 = dz - P("q^2") * dx;
    CHECK((th1 - (RationalExpr(BigRational(2)) * w3 - P("4*q") * w2)).is_zero_form(src));
    CHECK((th2 - RationalExpr(BigRational(2)) * w1).is_zero_form(src));
    CHECK((th3 - RationalExpr(BigRational(2)) * w2).is_zero_form(src));
}

TEST_CASE("pullback of a 0-form is substitution") {
    CoordinateMap m = hc_map();
    const Context& dst = m.target();
    const Context& src = m.source();
    DiffForm f = DiffForm::function(&dst, parse_expr("a4^2", dst));
    CHECK(is_equal(pullback(m, f).coeff({}), parse_expr("4*q^2", src), src));
}

TEST_CASE("property: pullback functoriality for the Hilbert-Cartan map") {
    CoordinateMap m = hc_map();
    const Context& dst = m.target();
    std::vector<SymbolId> syms{dst.symbol("a1"), dst.symbol("a3"), dst.symbol("a4")};
    SplitMix64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        DiffForm a(&dst, 1);
        a.add_to({0}, testutil::random_expr(rng, syms, 2, 2));
        a.add_to({3}, testutil::random_expr(rng, syms, 2, 2));
        DiffForm b(&dst, 1);
        b.add_to({2}, testutil::random_expr(rng, syms, 2, 2));
        b.add_to({4}, testutil::random_expr(rng, syms, 2, 2));
        CHECK((pullback(m, exterior_d(a)) - exterior_d(pullback(m, a))).is_zero_form(m.source()));
        CHECK((pullback(m, wedge(a, b)) - wedge(pullback(m, a), pullback(m, b)))
                  .is_zero_form(m.source()));
    }
}

TEST_CASE("lie_derivative on 0-forms is apply") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    VectorField X(&c, {P("1"), P("p"), P("q^2"), P("q"), P("0")});
    DiffForm f = DiffForm::function(&c, P("z*q - y"));
    CHECK(is_equal(lie_derivative(X, f).coeff({}), apply(X, P("z*q - y")), c));
}

TEST_CASE("lie_derivative along a flat coordinate field") {
    const Context& c = flat_a();
    // tilde theta_1 pulled to the a-chart has no a1 dependence except via da1
    auto Pt = [&](const std::string& s) { return parse_expr(s, c); };
    DiffForm tth1 = dthe(c, 0) + Pt("a4") * dthe(c, 2) + Pt("1/2*a4*a5") * dthe(c, 3);
    CHECK(lie_derivative(VectorField::coordinate(&c, 0), tth1).is_zero_form(c));
}

TEST_CASE("span_coefficients exact and residual paths") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    DiffForm dx = dthe(c, 0), dy = dthe(c, 1), dz = dthe(c, 2), dp = dthe(c, 3);
    DiffForm w1 = dy - P("p") * dx;
    DiffForm w2 = dp - P("q") * dx;
    DiffForm w3 = dz - P("q^2") * dx;
    SECTION("zero form decomposes with zero coefficients") {
        auto r = span_coefficients(DiffForm::zero(&c, 1), {w1, w2, w3});
        auto* coeffs = std::get_if<std::vector<RationalExpr>>(&r);
        REQUIRE(coeffs);
        for (const auto& e : *coeffs) CHECK(e.is_structural_zero());
    }
    SECTION("exact combination is recovered and recombines") {
        DiffForm a = P("x*y") * w1 - P("q") * w3;
        auto r = span_coefficients(a, {w1, w2, w3});
        auto* coeffs = std::get_if<std::vector<RationalExpr>>(&r);
        REQUIRE(coeffs);
        CHECK(is_equal((*coeffs)[0], P("x*y"), c));
        CHECK(is_zero((*coeffs)[1], c));
        CHECK(is_equal((*coeffs)[2], P("-q"), c));
        DiffForm back = (*coeffs)[0] * w1 + (*coeffs)[1] * w2 + (*coeffs)[2] * w3;
        CHECK((a - back).is_zero_form(c));
    }
    SECTION("non-member reports the dx residual") {
        DiffForm a = P("y") * w2 + P("x^2") * dx;
        auto r = span_coefficients(a, {w1, w2, w3});
        auto* miss = std::get_if<NotInSpan>(&r);
        REQUIRE(miss);
        CHECK(is_equal(miss->residual.coeff({0}), P("x^2"), c));
        CHECK(is_equal(miss->partial[1], P("y"), c));
    }
    SECTION("dependent basis throws") {
        DiffForm w12 = w1 + w2;
        CHECK_THROWS_AS(span_coefficients(w3, std::vector<DiffForm>{w1, w2, w12}),
                        DegenerateBasis);
    }
}

TEST_CASE("dual_frame duality") {
    const Context& c = monge();
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    SECTION("coordinates give the coordinate frame") {
        auto fr = dual_frame({P("x"), P("y"), P("z"), P("p"), P("q")}, c);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(is_equal(fr[i].component(j),
                               i == j ? RationalExpr(BigRational(1)) : RationalExpr(), c));
    }
    SECTION("Hilbert-Cartan c-functions") {
        std::vector<RationalExpr> cf{P("12*z-32*p*q+12*q^2*x"), P("12*y+4*p*x-4*q^2*x"),
                                     P("4*p-2*q*x"), P("-2*q"), P("-x")};
        auto fr = dual_frame(cf, c);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(is_zero(apply(fr[i], cf[j]) -
                                  (i == j ? RationalExpr(BigRational(1)) : RationalExpr()),
                              c));
        // Z1 = d_c3 + 2 c5 d_c2 - 2 c4 d_c1 = 1/4 (d_p - x d_y + 4 q d_z)
        VectorField z1 = fr[2] + P("2*(-x)") * fr[1] - P("2*(-2*q)") * fr[0];
        CHECK(is_equal(z1.component(3), P("1/4"), c));
        CHECK(is_equal(z1.component(1), P("-1/4*x"), c));
        CHECK(is_equal(z1.component(2), P("q"), c));
        CHECK(is_zero(z1.component(0), c));
        CHECK(is_zero(z1.component(4), c));
    }
    SECTION("singular Jacobian is reported") {
        CHECK_THROWS_AS(dual_frame({P("x"), P("x"), P("z"), P("p"), P("q")}, c),
                        SingularJacobian);
    }
}
