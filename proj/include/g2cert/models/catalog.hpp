#ifndef G2CERT_MODELS_CATALOG_HPP
#define G2CERT_MODELS_CATALOG_HPP

#include <map>
#include <mutex>

#include "g2cert/models/model.hpp"

namespace g2cert::models {

// Parameter bindings for builtin charts with symbolic constants.
using ParamMap = std::map<std::string, BigRational>;

namespace detail {

inline std::shared_ptr<Context> make_monge_ctx(const std::string& name) {
    auto ctx = std::make_shared<Context>();
    ctx->set_name(name);
    ctx->declare_coordinates({"x", "y", "z", "p", "q"});
    ctx->declare_algebraic_constant("rt3", 2, "3");
    return ctx;
}

// Substitutes bound parameters into every piece of a built model.
inline RationalExpr bind_params(const RationalExpr& e, const ParamMap& params, const Context& ctx) {
    if (params.empty()) return e;
    std::unordered_map<SymbolId, RationalExpr> bind;
    for (const auto& kv : params) {
        SymbolId s = SymbolTable::instance().lookup(kv.first);
        if (s == SymbolTable::npos || !ctx.contains(s)) throw MissingParam(kv.first);
        bind.emplace(s, RationalExpr(kv.second));
    }
    return substitute(e, bind, ctx);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders. Each returns a fully populated model; the display fields carry the
// published closed forms for exact comparison against the generic recipe.
// ---------------------------------------------------------------------------

inline DistributionModel build_flat_cartan() {
    auto ctx = std::make_shared<Context>();
    ctx->set_name("flat_c");
    ctx->declare_coordinates({"c1", "c2", "c3", "c4", "c5"});
    ctx->declare_algebraic_constant("rt3", 2, "3");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };

    DistributionModel m;
    m.name = "flat_cartan";
    m.ctx = ctx;
    m.c_funcs = std::vector<RationalExpr>{P("c1"), P("c2"), P("c3"), P("c4"), P("c5")};
    m.omegas = big_theta(*m.c_funcs, c);
    auto seeds = seed_triple(m);
    m.X1 = seeds[0];
    m.X2 = seeds[1];
    m.z1_display = VectorField(&c, {P("-2*c4"), P("2*c5"), P("1"), P("0"), P("0")});
    m.check_annihilation();
    return m;
}

inline DistributionModel build_hilbert_cartan(const Context& flat_a) {
    auto ctx = detail::make_monge_ctx("hilbert_cartan");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    DistributionModel m = monge_model(P("q^2"), ctx, "hilbert_cartan");
    m.a_map = CoordinateMap(&c, &flat_a,
                            {P("2*z+2*q^2*x-4*p*q"), P("2*y"), P("2*p-q*x"), P("2*q"), P("-x")});
    m.c_funcs = std::vector<RationalExpr>{P("12*z-32*p*q+12*q^2*x"), P("12*y+4*p*x-4*q^2*x"),
                                          P("4*p-2*q*x"), P("-2*q"), P("-x")};
    m.theta_span_display = std::vector<std::vector<RationalExpr>>{
        {P("0"), P("-4*q"), P("2")}, {P("2"), P("0"), P("0")}, {P("0"), P("2"), P("0")}};
    m.z1_display = VectorField(&c, {P("0"), P("-x/4"), P("q"), P("1/4"), P("0")});
    m.z2_display = VectorField(&c, {P("0"), P("-x^2/4"), P("q*x"), P("x/4"), P("-1/2")});
    m.z3_display = VectorField(
        &c, {P("-1"), P("-p+q*x/2"), P("-q^2-2*q^2"), P("-q-q/2"), P("0")});
    m.seed_display = std::array<VectorField, 3>{
        VectorField(&c, {P("0"), P("0"), P("0"), P("0"), P("-1/2")}),
        VectorField(&c, {P("-1"), P("-p"), P("-q^2"), P("-q"), P("0")}),
        VectorField(&c, {P("-(12*y+4*p*x-4*q*x^2)"),
                         P("x*(2*p-q*x)^2 - p*(12*y+4*p*x-4*q*x^2)"),
                         P("-4*q*(2*p-q*x)^2 - q^2*(12*y+4*p*x-4*q*x^2)"),
                         P("-(2*p-q*x)^2 - q*(12*y+4*p*x-4*q*x^2)"),
                         P("6*z-16*p*q+6*q^2*x")})};
    return m;
}

// Three-parameter family of seed data on the Hilbert-Cartan distribution:
// rho = alpha x + beta, xi = alpha/rho, chi = -1/(alpha rho) + c. When alpha
// is bound to zero, chi degenerates to x/beta^2 + c.
inline DistributionModel build_hc_family(const ParamMap& params) {
    auto ctx = detail::make_monge_ctx("hc_family");
    ctx->declare_constant("alpha");
    ctx->declare_constant("beta");
    ctx->declare_constant("c");
    ctx->freeze();
    const Context& cc = *ctx;
    auto bound = [&](const char* n) -> const BigRational* {
        auto it = params.find(n);
        return it == params.end() ? nullptr : &it->second;
    };
    auto P = [&](const std::string& s) {
        return detail::bind_params(parse_expr(s, cc), params, cc);
    };
    const BigRational* alpha_val = bound("alpha");
    bool alpha_zero = alpha_val && alpha_val->is_zero();

    RationalExpr rho = P("alpha*x+beta");
    RationalExpr xi = alpha_zero ? RationalExpr() : P("alpha/(alpha*x+beta)");
    RationalExpr chi = alpha_zero ? P("x/beta^2 + c") : P("-1/(alpha*(alpha*x+beta)) + c");

    DistributionModel m = monge_model(P("q^2"), ctx, "hc_family");
    // chart functions of the family
    RationalExpr J = rho * (P("6*y") * xi * xi - P("4*p") * xi + P("q"));
    RationalExpr c1 = chi * chi / P("8") * J + chi / (P("8") * rho) * (P("3*y") * xi - P("p")) -
                      P("3*y") / (P("8") * rho.pow(3));
    RationalExpr c2 = P("6*z") + P("6") * chi * J * J +
                      P("16") * (P("6*y") * xi * xi - P("4*p") * xi + P("q")) *
                          (P("3*y") * xi - P("p")) -
                      P("24") * xi * (P("p^2") - P("3*y*p") * xi + P("3*y^2") * xi * xi);
    RationalExpr c3 = -chi / P("2") * J - (P("3*y") * xi - P("p")) / rho;
    RationalExpr c4 = -chi / P("8");
    RationalExpr c5 = P("4") * J;
    m.c_funcs = std::vector<RationalExpr>{c1, c2, c3, c4, c5};

    // displayed fields
    VectorField X1 = m.X1, X2 = m.X2;
    std::vector<RationalExpr> x3c(5);
    x3c[1] = -rho.pow(3) * chi;
    x3c[3] = -rho.pow(3) * chi * P("3") * xi + rho;
    x3c[2] = P("12") * rho.pow(3) * chi * xi * xi * (P("y") * xi - P("p")) +
             P("4") * rho * (P("3*y") * xi * xi - P("2*p") * xi + P("q"));
    VectorField X3(&cc, x3c);
    RationalExpr l3 = rho * (P("6") * xi * xi * rho * rho * chi - P("4") * xi) * c3 * c3 +
                      c2 / (P("4") * rho) +
                      P("24") * rho * rho * (P("2*y") * xi.pow(3) - P("2*p") * xi * xi + P("q") * xi) * c1;
    VectorField S1 = (-P("24") * rho * rho * (P("2") * xi * xi * (P("y") * xi - P("p")) + P("q") * xi)) * X1 +
                     (-P("8") * rho * rho) * X2;
    VectorField S2 = (RationalExpr(BigRational(1)) / (P("4") * rho)) * X1;
    RationalExpr u = rho * rho * chi * (P("3*y") * xi * xi - P("2*p") * xi + P("1/2*q")) +
                     P("3*y") * xi - P("p");
    VectorField S3 = l3 * X1 +
                     (P("2") / rho) *
                         (rho.pow(4) * chi * chi * (P("3*y") * xi * xi - P("2*p") * xi + P("1/2*q")) -
                          P("3/2*y") + P("1/2") * rho * rho * chi * (P("3*y") * xi - P("p"))) *
                         X2 -
                     (u * u / (rho * rho)) * X3;
    m.seed_display = std::array<VectorField, 3>{S1, S2, S3};
    return m;
}

// k = 3/2 chart: atoms P,Q,R (first-order Chazy system), xi, rho, chi, E with
// E' = (P/3)E, so that the second derivative of the hidden potential is E^2
// and the conformal scale is 1/(rho E).
inline DistributionModel build_chazy_k32(const Context& flat_a) {
    auto ctx = detail::make_monge_ctx("chazy_k32");
    ctx->declare_dynamic("P", "(P^2-Q)/6");
    ctx->declare_dynamic("Q", "2/3*(P*Q-R)");
    ctx->declare_dynamic("R", "P*R+Q^2/15");
    ctx->declare_dynamic("xi", "Q/45-xi^2");
    ctx->declare_dynamic("rho", "xi*rho");
    ctx->declare_dynamic("chi", "1/rho^2");
    ctx->declare_dynamic("E", "P/3*E");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    auto D = [&](const RationalExpr& e) { return differentiate(e, "x", c); };

    DistributionModel m = monge_model(P("q^2/E^2"), ctx, "chazy_k32");

    // conformal data in the chart atoms
    RationalExpr Om = P("1/(rho*E)");
    RationalExpr Om1 = D(Om), Om2 = D(Om1), Om3 = D(Om2);
    RationalExpr H2 = P("E^2");
    RationalExpr H3 = D(H2), H4 = D(H3), H5 = D(H4);
    RationalExpr chi1 = P("1/rho^2");
    RationalExpr K = RationalExpr(BigRational(1)) / (Om * H2);
    RationalExpr L = (Om * H3 + P("4") * Om1 * H2) / (Om * Om * H2 * H2);
    RationalExpr M = (Om * (H2 * H4 - H3 * H3) + Om1 * H2 * H3 + P("3") * Om2 * H2 * H2) /
                     (Om * Om * H2.pow(3));
    RationalExpr chi = P("chi");

    // chart map into the flat a-coordinates
    RationalExpr a1 = -(Om * chi1 / P("16")) * P("y");
    RationalExpr ay = M * M * chi - P("5") * chi1 * L * M + P("12") * Om1 * M +
                      chi1 * chi1 * L.pow(3) / (P("2") * Om) +
                      P("4") * Om1 / Om * chi1 * L * L +
                      (P("4") * Om * Om2 - P("34") * Om1 * Om1) * L / Om +
                      P("1/2") * H5 / (H2 * H2) +
                      P("2") / (Om * Om) * K *
                          (Om3 * Om * Om - P("10") * Om * Om1 * Om2 + P("30") * Om1.pow(3));
    RationalExpr a2 = P("z") + ay * P("y^2") + (L * L * chi - L * Om) * P("p^2") +
                      K * K * chi * P("q^2") +
                      (P("2") * L * M * chi - P("3") * Om * M - Om1 * L - Om2 * K) * P("y*p") +
                      P("2") * K * (M * chi - chi1 * L + Om1) * P("y*q") +
                      P("2") * K * (L * chi - Om) * P("p*q");
    RationalExpr a3 = (-P("1/4") * M * chi + P("1/2") * chi1 * L - P("1/2") * Om1) * P("y") +
                      (P("1/2") * Om - P("1/4") * chi * L) * P("p") - P("1/4") * chi * K * P("q");
    RationalExpr a4 = chi / P("8");
    RationalExpr a5 = P("4") * (M * P("y") + L * P("p") + K * P("q"));
    m.a_map = CoordinateMap(&c, &flat_a, {a1, a2, a3, a4, a5});

    // chart functions in the Chazy variables
    RationalExpr J = P("2/3") * P("rho/E") *
                     P("9*y*xi^2 + 2*(P*y-3*p)*xi - (Q/60 - P^2/12)*y - P*p + 3/2*q");
    RationalExpr c1 = chi * chi / P("8") * J +
                      chi / P("8*rho*E") * P("3*y*xi + P/3*y - p") - P("3*y/(8*rho^3*E)");
    RationalExpr c2 = P("6*z") + P("6") * chi * J * J +
                      P("16/rho") * J * P("(3*y*xi + P/3*y - p)/E") +
                      P("(-4*(6*xi+P)*p^2 + 2*(36*xi^2 + 8*P*xi - Q/15 + P^2/3)*y*p"
                        " - (72*xi^3 + 24*P*xi^2 + 8/3*P^2*xi + (P^3 + P*Q/5 + 2/5*R)/9)*y^2)/E^2");
    RationalExpr c3 = -chi / P("2") * J - P("(3*y*xi + P/3*y - p)/(rho*E)");
    RationalExpr c4 = -chi / P("8");
    RationalExpr c5 = P("4") * J;
    m.c_funcs = std::vector<RationalExpr>{c1, c2, c3, c4, c5};

    // displayed fields
    std::vector<RationalExpr> x3c(5);
    x3c[1] = P("-rho^3*chi*E");
    x3c[3] = P("-rho^3*chi*E*(P+9*xi)/3 + rho*E");
    x3c[2] = P("4*rho^3*chi/E") *
                 P("3*y*xi^3 + 3*(P/3*y-p)*xi^2 - ((Q/60-P^2/12)*y + P*p)*xi"
                   " - (P*Q+R)*y/270 - (P^2+Q/15)*p/12") +
             P("4*rho/E") *
                 P("3*y*xi^2 + 2*(P/3*y-p)*xi - ((Q/60-P^2/12)*y + p*P - 3*q)/3");
    VectorField X3(&c, x3c);
    RationalExpr z1c = P("-rho*E/6") * P("(36*xi^2+12*P*xi+P^2+Q/15)*rho^2*chi - 4*P - 24*xi");
    m.z1_display = z1c * m.X1 + X3;
    RationalExpr ell1 =
        P("4*rho^4/9") * P("36*xi^2+12*P*xi+P^2+Q/15") *
            P("9*y*xi^2 + 6*(P/3*y-p)*xi - (Q-5*P^2)/60*y - P*p + 3/2*q") * P("chi") +
        P("rho^2") * P("-144*y*xi^3 + 16*(-10/3*P*y+7*p)*xi^2"
                       " + 4/3*((Q/3 - 13/3*P^2)*y + 28*P*p - 30*q)*xi"
                       " + 4/9*((2/15*R - P^3/3 + Q*P/5)*y + (7*P^2 + Q/5)*p - 24*P*q)");
    RationalExpr ell2 = P("E/(48*rho)") *
                        P("(36*xi^2+12*P*xi+P^2+Q/15)*rho^4*chi^2 - 4*(P+6*xi)*rho^2*chi + 12");
    m.z2_display = ell1 * m.X1 + P("-8*rho^2") * m.X2 -
                   P("8/3*rho/E") *
                       P("9*y*xi^2 + 6*(P/3*y-p)*xi - ((Q-5*P^2)/60*y + P*p - 3/2*q)") * X3;
    m.z3_display = ell2 * m.X1 - P("chi/8") * X3;

    RationalExpr s1c = P("-rho^2") *
                       P("48*y*xi^3 + 48*(P/3*y-p)*xi^2 - 16*((Q-5*P^2)/60*y + p*P - 3/2*q)*xi"
                         " - 4/3*(2/45*(P*Q+R)*y + (P^2+Q/15)*p - 6*P*q)");
    VectorField S1 = s1c * m.X1 + P("-8*rho^2") * m.X2;
    VectorField S2 = P("E/(4*rho)") * m.X1;
    RationalExpr l3 = P("rho*E/6") * P("(36*xi^2+12*P*xi+P^2+Q/15)*rho^2*chi - 4*P - 24*xi") * c3 * c3 +
                      P("E/(4*rho)") * c2 + s1c * c1;
    RationalExpr inner = P("9*y*xi^2 + 2*(P*y-3*p)*xi - (Q/60-P^2/12)*y - P*p + 3/2*q");
    VectorField S3 = l3 * m.X1 +
                     P("2/(3*rho*E)") *
                         (P("rho^4*chi^2") * inner +
                          P("3/2*rho^2*chi") * P("3*y*xi + P/3*y - p") - P("9/2*y")) *
                         m.X2 -
                     P("1/(9*rho^2*E^2)") *
                         (P("rho^2*chi") * inner + P("9*y*xi + P*y - 3*p")).pow(2) * X3;
    m.seed_display = std::array<VectorField, 3>{S1, S2, S3};

    // theta span display (third row carries the published theta3 coefficients)
    RationalExpr a21 =
        (H5 / (H2 * H2) + chi1 * chi1 / Om * L.pow(3) - P("8") * L * (M - Om1 / Om * L) * chi1 +
         P("22") * M * Om1 -
         P("4") * K * (P("10") * Om1 * Om2 / Om - P("30") * Om1.pow(3) / (Om * Om) - Om3) -
         P("4") * (P("17") * Om1 * Om1 / Om - P("2") * Om2) * L) *
            P("y") -
        (Om2 * K + Om1 * L + Om * M) * P("p") + P("2") * K * (Om1 - chi1 * L) * P("q");
    RationalExpr a22 = (P("2") * L * L * chi1 - Om2 * K - P("3") * Om * M - P("3") * Om1 * L) * P("y") -
                       P("2") * Om * K * P("q");
    m.theta_span_display = std::vector<std::vector<RationalExpr>>{
        {-Om * chi1 / P("16"), P("0"), P("0")},
        {a21, a22, P("1")},
        {P("1/2") * (chi1 * L - Om1), Om / P("2"), P("0")}};

    // side conditions encoded by the atom rules: the Ricci-flatness and
    // 6th-order obstructions vanish identically in this chart
    RationalExpr H6 = D(H5);
    RationalExpr Om4 = D(Om3);
    RationalExpr b1 = P("10") * H2 * H2 * Om2 * Om - P("20") * H2 * H2 * Om1 * Om1 -
                      P("10") * H2 * H3 * Om * Om1 + P("3") * H2 * H4 * Om * Om -
                      P("5") * H3 * H3 * Om * Om;
    RationalExpr b2 =
        (-H2.pow(3) * H6 + P("8") * H2 * H2 * H3 * H5 + P("8") * H2 * H2 * H4 * H4 -
         P("43") * H2 * H3 * H3 * H4 + P("30") * H3.pow(4)) *
            Om.pow(4) +
        (-P("4") * H2 * H2 * Om4 + P("14") * H2 * H3 * Om3 + P("26") * H2 * H4 * Om2 -
         P("50") * H3 * H3 * Om2) *
            H2 * H2 * Om.pow(3) +
        (P("4") * H2 * H2 * H5 - P("40") * H2 * H3 * H4 + P("50") * H3.pow(3)) * H2 * Om1 *
            Om.pow(3) +
        P("38") * H2.pow(4) * Om2 * Om2 * Om * Om +
        (P("24") * H2 * H2 * Om1 * Om3 - P("98") * H2 * H3 * Om1 * Om2 -
         P("44") * H2 * H4 * Om1 * Om1 + P("100") * H3 * H3 * Om1 * Om1) *
            H2 * H2 * Om * Om -
        P("40") * (P("4") * H2 * Om2 - P("3") * H3 * Om1) * H2.pow(3) * Om1 * Om1 * Om +
        P("120") * H2.pow(4) * Om1.pow(4);
    m.side_conditions = {b1, b2};
    for (const auto& sc : m.side_conditions)
        if (!is_zero(sc, c)) throw Error("chazy_k32 side condition does not vanish");
    return m;
}

// k = 2/3 chart: dual description with F'' = G, G' = (P/2)G and conformal
// scale 1/eta.
inline DistributionModel build_chazy_k23(const Context& flat_a) {
    auto ctx = detail::make_monge_ctx("chazy_k23");
    ctx->declare_dynamic("P", "(P^2-Q)/6");
    ctx->declare_dynamic("Q", "2/3*(P*Q-R)");
    ctx->declare_dynamic("R", "P*R+Q^2/80");
    ctx->declare_dynamic("xi", "Q/40-xi^2");
    ctx->declare_dynamic("eta", "xi*eta");
    ctx->declare_dynamic("chi", "1/eta^2");
    ctx->declare_dynamic("G", "P/2*G");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };
    auto D = [&](const RationalExpr& e) { return differentiate(e, "x", c); };

    // omega1 = dy - pG dx, omega2 = dp - qG dx, omega3 = dz - q^2 G^2 dx
    const Context& cr = *ctx;
    DistributionModel m;
    m.name = "chazy_k23";
    m.ctx = ctx;
    auto dc = [&](std::size_t i) { return DiffForm::coordinate_differential(&cr, i); };
    m.omegas = {dc(1) - P("p*G") * dc(0), dc(3) - P("q*G") * dc(0), dc(2) - P("q^2*G^2") * dc(0)};
    m.X1 = VectorField::coordinate(&cr, 4);
    m.X2 = VectorField(&cr, {P("1"), P("G*p"), P("G^2*q^2"), P("G*q"), P("0")});
    m.check_annihilation();

    RationalExpr Om = P("1/eta");
    RationalExpr Om1 = D(Om), Om2 = D(Om1), Om3 = D(Om2);
    RationalExpr F2 = P("G");
    RationalExpr F3 = D(F2), F4 = D(F3), F5 = D(F4);
    RationalExpr chi = P("chi"), chi1 = P("1/eta^2");
    RationalExpr K = F2 / Om;
    RationalExpr L = -(F3 / F2 - P("4") * Om1 / Om) / Om;
    RationalExpr M = -(Om * (F2 * F4 - P("2") * F3 * F3) + P("4") * Om1 * F2 * F3 -
                       P("3") * Om2 * F2 * F2) /
                     (Om * Om * F2.pow(3));

    RationalExpr a1 = -(Om * Om / (P("16") * K)) * P("y");
    RationalExpr ay = M * M * chi - P("6") * Om1 / Om * M / K - P("1/2") * F5 / F2.pow(3) -
                      P("2") / (K * K) *
                          (Om * L.pow(3) - P("10") * Om1 / Om * L * L +
                           (P("5/2") * Om2 / (Om * Om) + P("27") * Om1 * Om1 / Om.pow(3)) * L -
                           (Om3 / Om + P("5") * Om1 * Om2 / (Om * Om) +
                            P("22") * Om1.pow(3) / Om.pow(3)) /
                               (Om * Om));
    RationalExpr byp = P("2") * L * M * chi - P("3") * Om * M - P("2") * Om1 / Om * L / K +
                       (P("4") * Om1 * Om1 / Om.pow(3) - Om2 / (Om * Om)) / K;
    RationalExpr a2 = P("z") + ay * P("y^2") + (L * L * chi - L * Om) * P("p^2") +
                      K * K * chi * P("q^2") + byp * P("y*p") +
                      P("2") * K * (M * chi - Om * L / K + Om1 / (Om * K)) * P("y*q") +
                      P("2") * K * (L * chi - Om) * P("p*q");
    RationalExpr a3 = (-P("1/4") * M * chi + Om / P("2") * L / K - P("1/2") * Om1 / (Om * K)) * P("y") +
                      (P("1/2") * Om - P("1/4") * chi * L) * P("p") - P("1/4") * chi * K * P("q");
    RationalExpr a4 = chi / P("8");
    RationalExpr a5 = P("4") * (M * P("y") + L * P("p") + K * P("q"));
    m.a_map = CoordinateMap(&cr, &flat_a, {a1, a2, a3, a4, a5});

    RationalExpr J = P("eta/6") * P("((6*xi+P)^2 + Q/20)*y/G") - P("eta/2*(8*xi+P)*p") +
                     P("eta*G*q");
    RationalExpr c1 = J * chi * chi / P("8") -
                      (P("p/eta") - P("(6*xi+P)*y/(2*eta*G)")) * chi / P("8") -
                      P("3*y/(8*eta^3*G)");
    RationalExpr c2 = P("6*z") + P("6") * chi * J * J -
                      P("16") * (P("p/eta") - P("(6*xi+P)*y/(2*eta*G)")) * J -
                      P("4*(6*xi+P)*p^2") + P("2*(6*xi+P)^2*y*p/G") -
                      P("(6*xi+P)^3*y^2/(3*G^2)") + P("P*p^2") + P("Q*y*p/(10*G)") +
                      P("R*y^2/(30*G^2)");
    RationalExpr c3 = -J * chi / P("2") + P("p/eta") - P("(6*xi+P)*y/(2*eta*G)");
    RationalExpr c4 = -chi / P("8");
    RationalExpr c5 = P("4") * J;
    m.c_funcs = std::vector<RationalExpr>{c1, c2, c3, c4, c5};

    std::vector<RationalExpr> x3c(5);
    x3c[1] = P("-eta^3*chi*G");
    x3c[3] = P("-eta^3*chi/2*(6*xi+P) + eta");
    x3c[2] = P("eta^3*chi") *
                 (P("(12*xi^3 + 6*P*xi^2 + (P^2+Q/20)*xi + P^3/18 + P*Q/120 + R/90)*y/G") -
                  P("(12*xi^2 + 3*P*xi + P^2/6 - Q/60)*p")) +
             P("eta") * (P("((6*xi+P)^2 + Q/20)*y/(3*G)") - P("(8*xi+P)*p") + P("4*G*q"));
    VectorField X3(&cr, x3c);
    RationalExpr z1c = P("-eta/G") *
                       (P("(6*xi^2 + 3/2*P*xi + (P^2 - Q/10)/12)*eta^2*chi") - P("4*xi + P/2"));
    m.z1_display = z1c * m.X1 + X3;
    RationalExpr ell1 =
        P("2/G^2") * P("6*xi^2 + 3/2*P*xi + (P^2 - Q/10)/12") *
            (P("((6*xi+P)^2 + Q/20)*y/3") - P("(8*xi+P)*G*p") + P("2*G^2*q")) * P("eta^4*chi") -
        P("(144*xi^3 + 68*P*xi^2 + 32/3*(P^2 + Q/32)*xi + 5/9*(P^3 + 9/100*P*Q + 2/25*R))"
          "*eta^2*y/G^2") +
        P("(112*xi^2 + 28*P*xi + 5/3*P^2 - Q/15)*eta^2*p/G") - P("2*(20*xi+P)*eta^2*q");
    RationalExpr ell2 = P("1/G") * (P("1/8") * P("6*xi^2 + 3/2*P*xi + (P^2 - Q/10)/12") *
                                        P("eta^3*chi^2") -
                                    P("(8*xi+P)*eta*chi/16") + P("1/(4*eta)"));
    m.z2_display = ell1 * m.X1 + P("-8*eta^2") * m.X2 -
                   P("2*eta") *
                       (P("((6*xi+P)^2 + Q/20)*y/(3*G)") - P("(8*xi+P)*p") + P("2*G*q")) * X3;
    m.z3_display = ell2 * m.X1 - P("chi/8") * X3;

    RationalExpr s1c = P("-eta^2") *
                       (P("2/9*(216*xi^3 + 108*P*xi^2 + 18*(P^2+Q/20)*xi + P^3 + 3*P*Q/20 + R/5)*y/G^2") -
                        P("2*(24*xi^2 + 6*P*xi + (P^2 - Q/10)/3)*p/G") + P("24*xi*q"));
    VectorField S1 = s1c * m.X1 + P("-8*eta^2") * m.X2;
    VectorField S2 = P("1/(4*eta*G)") * m.X1;
    RationalExpr l3 = -z1c * c3 * c3 + P("1/(4*eta*G)") * c2 + s1c * c1;
    VectorField S3 = l3 * m.X1 +
                     ((P("((6*xi+P)^2 + Q/20)*y/(6*G)") - P("(8*xi+P)*p/2") + P("G*q")) *
                          P("eta^3*chi^2") +
                      (P("(6*xi+P)*y/(2*G)") - P("p")) * P("eta*chi") - P("3*y/(eta*G)")) *
                         m.X2 -
                     c3 * c3 * X3;
    m.seed_display = std::array<VectorField, 3>{S1, S2, S3};

    RationalExpr a21 =
        (-F5 / F2.pow(3) + P("2") * Om * L * M / K - P("14") * Om1 / Om * M / K -
         P("4") * Om * L.pow(3) / (K * K) + P("40") * Om1 / Om * L * L / (K * K) -
         (P("108") * Om1 * Om1 / Om.pow(3) + P("10") * Om2 / (Om * Om)) * L / (K * K) +
         (P("88") * Om1.pow(3) / Om.pow(5) + P("20") * Om1 * Om2 / Om.pow(4) +
          P("4") * Om3 / Om.pow(3)) /
             (K * K)) *
            P("y") -
        (Om * M + P("2") * Om1 / Om * L / K -
         (P("4") * Om1 * Om1 / Om.pow(3) - Om2 / (Om * Om)) / K) *
            P("p") -
        P("2") * (Om * L - Om1 / Om) * P("q");
    RationalExpr a22 = (P("2") * Om * L * L / K - P("4") * Om1 / Om * L / K - P("3") * Om * M +
                        (P("4") * Om1 * Om1 / Om.pow(3) - Om2 / (Om * Om)) / K) *
                           P("y") -
                       P("2") * Om * K * P("q");
    m.theta_span_display = std::vector<std::vector<RationalExpr>>{
        {-Om * Om / (P("16") * K), P("0"), P("0")},
        {a21, a22, P("1")},
        {P("1/2") * (Om * L / K - Om1 / (Om * K)), Om / P("2"), P("0")}};

    RationalExpr F6 = D(F5);
    RationalExpr Om4 = D(Om3);
    RationalExpr b1 = -P("10") * F2 * F2 * Om2 * Om + P("20") * F2 * F2 * Om1 * Om1 -
                      P("4") * F3 * F3 * Om * Om + P("3") * F2 * F4 * Om * Om;
    RationalExpr b2 =
        (-F2.pow(3) * F6 + P("7") * F2 * F2 * F3 * F5 + P("2") * F2 * F2 * F4 * F4 -
         P("20") * F2 * F3 * F3 * F4 + P("12") * F3.pow(4)) *
            Om.pow(4) +
        (P("4") * F2.pow(4) * Om4 + P("10") * F2.pow(3) * F4 * Om2 -
         P("10") * F2.pow(3) * F3 * Om3 - P("10") * F2 * F2 * F3 * F3 * Om2) *
            Om.pow(3) +
        (P("20") * F2 * F2 * F3 * F3 * Om1 * Om1 - P("20") * F2.pow(3) * F4 * Om1 * Om1 -
         P("24") * F2.pow(4) * Om1 * Om3 + P("50") * F2.pow(3) * F3 * Om1 * Om2 -
         P("38") * F2.pow(4) * Om2 * Om2) *
            Om * Om -
        P("40") * F2.pow(3) * F3 * Om * Om1.pow(3) +
        P("160") * F2.pow(4) * Om * Om1 * Om1 * Om2 - P("120") * F2.pow(4) * Om1.pow(4);
    m.side_conditions = {b1, b2};
    for (const auto& sc : m.side_conditions)
        if (!is_zero(sc, c)) throw Error("chazy_k23 side condition does not vanish");
    return m;
}

// Spin 3/2 chart over the w-coordinate, gamma = 0 specialisation with
// chi = 2w/delta^2; everything rational in (w, alpha, beta, delta, g3).
inline DistributionModel build_lame_spin32() {
    auto ctx = std::make_shared<Context>();
    ctx->set_name("lame_spin32");
    ctx->declare_coordinates({"w", "y", "z", "p", "q"});
    ctx->declare_algebraic_constant("rt3", 2, "3");
    ctx->declare_constant("alpha");
    ctx->declare_constant("beta");
    ctx->declare_constant("delta");
    ctx->declare_constant("g3");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };

    DistributionModel m;
    m.name = "lame_spin32";
    m.ctx = ctx;
    RationalExpr Y = P("alpha*w + beta*(w^3 + g3/2)");
    RationalExpr u = P("4*w^3 - g3");
    auto dc = [&](std::size_t i) { return DiffForm::coordinate_differential(&c, i); };
    m.omegas = {dc(1) - P("2*p") * u / (Y * Y) * dc(0), dc(3) - P("2*q") * u / (Y * Y) * dc(0),
                dc(2) - P("2*q^2") * u.pow(4) / Y.pow(6) * dc(0)};
    m.X1 = VectorField::coordinate(&c, 4);
    m.X2 = VectorField(&c, {Y * Y / (P("2") * u), P("p"), u.pow(3) / Y.pow(4) * P("q^2"), P("q"),
                            P("0")});
    m.check_annihilation();
    m.dx_dcoord = P("2") * u / (Y * Y);

    RationalExpr c1 = (P("-2") * Y.pow(3) * P("(alpha*w + 3*g3/8*beta)*y") +
                       Y * Y * P("(8*w^3 + g3)*w*p") + P("2*w^2") * u * u * P("q")) /
                      (P("4*delta^3") * Y.pow(3));
    RationalExpr c2 = P("6*z") - P("12*beta") * P("(alpha*w + 3*g3*beta/16)*y^2") +
                      P("12*w^2*(16*w^3 + 5*g3)") / (Y * Y) * P("p^2") +
                      P("12*w") * u.pow(4) / Y.pow(6) * P("q^2") +
                      P("6*w") * P("(beta*(8*w^3 + g3) - 8*alpha*w)") / Y * P("y*p") -
                      P("4") * u * u * P("(2*alpha - 3*beta*w^2)") / Y.pow(3) * P("y*q") +
                      P("16") * P("(5*w^3 + g3)") * u * u / Y.pow(4) * P("p*q");
    RationalExpr c3 = (P("1/2*alpha") * Y.pow(3) * P("y") - P("(2*w^3 + g3)") * Y * Y * P("p") -
                       P("w") * u * u * P("q")) /
                      (P("delta") * Y.pow(3));
    RationalExpr c4 = P("-w/(4*delta^2)");
    RationalExpr c5 = P("6*delta") / Y.pow(3) *
                      (P("beta*w") * Y.pow(3) * P("y") + P("4*w^2") * Y * Y * P("p") +
                       P("2/3") * u * u * P("q"));
    m.c_funcs = std::vector<RationalExpr>{c1, c2, c3, c4, c5};

    m.z1_display = VectorField(
        &c, {P("0"), P("-2*delta*w") / Y, P("4*delta") * u * u / Y.pow(3) * P("q"),
             P("delta") * P("(beta*(8*w^3+g3) + 4*alpha*w)") / (P("2") * u),
             P("-12*delta*w^2") * Y.pow(3) / u.pow(3)});

    VectorField S1 = (P("6*beta*delta^2") * Y.pow(3) / (u * u) * P("y") +
                      P("24*delta^2*w") * Y * Y / (u * u) * P("p") +
                      P("12*delta^2") * P("(alpha*(8*w^3+g3) + 9*beta*g3*w^2)") / (u * Y) * P("q")) *
                         m.X1 +
                     (P("-8*delta^2") * u / (Y * Y)) * m.X2;
    VectorField S2 = (Y.pow(3) / (P("4*delta") * u * u)) * m.X1;
    VectorField S3 = (-c1) * S1 + c2 * S2 - (c3 * c3) * (*m.z1_display);
    m.seed_display = std::array<VectorField, 3>{S1, S2, S3};

    m.big_theta_display = std::vector<std::vector<RationalExpr>>{
        {P("-(alpha*w + 3/4*beta*g3)/(4*delta^3)"), P("w") * u / (P("4*delta^3") * Y), P("0")},
        {P("-6*beta*(alpha*w + 3/4*beta*g3)*y") -
             P("24*w") / Y * P("(alpha*w + 3/4*beta*g3)*p") -
             P("4") * P("(3*beta*w^2 + alpha)") * u * u / Y.pow(3) * P("q"),
         P("6") * u / Y *
             (P("beta*w*y") + P("4*w^2") / Y * P("p") - P("4") * u * u / (P("3") * Y.pow(3)) * P("q")),
         P("6")},
        {P("(alpha + 3*beta*w^2)/(2*delta)"), u / (P("delta") * Y), P("0")}};
    return m;
}

// Spin 4 chart over the r-coordinate with sqrt(2) and sqrt(k) as algebraic
// constants; the scale restriction chi = r is built in.
inline DistributionModel build_lame_spin4() {
    auto ctx = std::make_shared<Context>();
    ctx->set_name("lame_spin4");
    ctx->declare_coordinates({"r", "y", "z", "p", "q"});
    ctx->declare_algebraic_constant("rt3", 2, "3");
    ctx->declare_constant("alpha");
    ctx->declare_constant("beta");
    ctx->declare_constant("k");
    ctx->declare_algebraic_constant("rt2", 2, "2");
    ctx->declare_algebraic_constant("rtk", 2, "k");
    ctx->freeze();
    const Context& c = *ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, c); };

    DistributionModel m;
    m.name = "lame_spin4";
    m.ctx = ctx;
    RationalExpr Y = P("alpha*(2*r^3 - 1) + beta*r*(r^3 - 2)");
    RationalExpr w3 = P("r^3 + 1");
    auto dc = [&](std::size_t i) { return DiffForm::coordinate_differential(&c, i); };
    m.omegas = {dc(1) - P("k*p/2") * Y / (w3 * w3) * dc(0),
                dc(3) - P("k*q/2") * Y / (w3 * w3) * dc(0),
                dc(2) - P("k*q^2/2") * Y.pow(4) / w3.pow(6) * dc(0)};
    m.X1 = VectorField::coordinate(&c, 4);
    m.X2 = VectorField(&c, {P("2") * Y * Y / (P("k") * w3 * w3), Y.pow(3) / w3.pow(4) * P("p"),
                            Y.pow(6) / w3.pow(8) * P("q^2"), Y.pow(3) / w3.pow(4) * P("q"),
                            P("0")});
    m.check_annihilation();
    m.dx_dcoord = P("k") * w3 * w3 / (P("2") * Y * Y);

    RationalExpr c1 = P("-3/4*rt2*rtk/k^2*y") +
                      P("rt2*rtk/(8*k)") * P("r*(3*beta*r^4 + alpha*(4*r^3+1))") / w3 * P("p") +
                      P("rt2*rtk/16") * P("r^2") * Y * Y / w3.pow(3) * P("q");
    RationalExpr c2 = P("6*z - 288/k^3*y^2") +
                      P("8/k") * P("(beta*(7*r^4+4*r) + alpha*(8*r^3+5))*(beta*(2*r^3-1) + 3*alpha*r^2)") /
                          (w3 * w3) * P("p^2") +
                      P("3*k*r") * Y.pow(4) / w3.pow(6) * P("q^2") +
                      P("96/k^2") * P("(3*beta*r^4 + alpha*(4*r^3+1))*r") / w3 * P("y*p") +
                      P("48/k") * P("r^2") * Y * Y / w3.pow(3) * P("y*q") +
                      P("8") * P("(alpha*(5*r^3+2) + beta*(4*r^4+r))") * Y * Y / w3.pow(4) * P("p*q");
    RationalExpr c3 = P("-rt2*rtk/k") * P("(beta*r + alpha)*p") -
                      P("rt2*rtk/4") * P("r") * Y * Y / w3.pow(3) * P("q");
    RationalExpr c4 = P("-r/8");
    RationalExpr c5 = P("48*rt2*rtk/k^2*r*y") +
                      P("8*rt2*rtk/k") * P("(3*alpha*r^2 + beta*(2*r^3-1))") / w3 * P("p") +
                      P("2*rt2*rtk") * Y * Y / w3.pow(3) * P("q");
    m.c_funcs = std::vector<RationalExpr>{c1, c2, c3, c4, c5};

    m.z1_display = VectorField(
        &c, {P("0"), P("-rt2*k*rtk*r") / (P("4") * w3),
             P("2*rt2*rtk") / w3.pow(3) * (P("-2*beta/k") * w3.pow(3) * P("p") + Y * Y * P("q")),
             P("rtk*rt2/2") * P("(4*r^3+1)") / Y,
             P("-2*rt2*rtk/k") * w3.pow(3) * P("(6*alpha*r^2 + beta*(5*r^3-1))") / Y.pow(3)});

    VectorField S1 = (P("24") * (P("8/k^2") * w3.pow(3) / (Y * Y) * P("y") +
                                 P("4/k") * w3 * w3 * P("r*(alpha + beta*r)") / (Y * Y) * P("p") +
                                 P("(9*alpha*r^2 + beta*(r^6 + 8*r^3 - 2))") / (w3 * Y) * P("q"))) *
                         m.X1 +
                     (P("-4*k") * w3 * w3 / (Y * Y)) * m.X2;
    VectorField S2 = (P("rt2*rtk/(4*k)") * w3.pow(3) / (Y * Y)) * m.X1;
    VectorField S3 = (-c1) * S1 + c2 * S2 - (c3 * c3) * (*m.z1_display);
    m.seed_display = std::array<VectorField, 3>{S1, S2, S3};

    m.big_theta_display = std::vector<std::vector<RationalExpr>>{
        {P("-3/4*rt2*rtk/k^2"), P("rt2*rtk/(8*k)") * Y * P("r") / w3, P("0")},
        {P("-48") * (P("12/k^3*y") + P("2*(3*alpha + beta*(r^4+4*r))*r") / (P("k^2") * w3) * P("p") +
                     P("r^2") * Y * Y / (P("k") * w3.pow(3)) * P("q")),
         P("8") * (P("12*r") * Y / (P("k^2") * w3) * P("y") +
                   P("2") * Y * P("(3*alpha*r^2 + beta*(2*r^3-1))") / (P("k") * w3 * w3) * P("p") -
                   Y.pow(3) / w3.pow(4) * P("q")),
         P("6")},
        {P("6*rt2*rtk/k^2*r^2"), P("rt2*rtk/k") * Y / w3, P("0")}};
    return m;
}

// ---------------------------------------------------------------------------
// Catalog singleton
// ---------------------------------------------------------------------------

class Catalog {
public:
    static const Catalog& instance() {
        static Catalog cat;
        return cat;
    }

    const Context& flat_a_ctx() const { return *flat_a_; }
    const Context& flat_ta_ctx() const { return *flat_ta_; }
    const FlatChart& flat() const { return flat_chart_; }

    const DistributionModel& model(const std::string& name) const {
        auto it = models_.find(name);
        if (it == models_.end()) throw UnknownModel(name);
        return *it->second;
    }

    std::vector<std::string> model_names() const {
        std::vector<std::string> names;
        for (const auto& kv : models_) names.push_back(kv.first);
        return names;
    }

private:
    Catalog() {
        flat_a_ = std::make_shared<Context>();
        flat_a_->set_name("flat_a");
        flat_a_->declare_coordinates({"a1", "a2", "a3", "a4", "a5"});
        flat_a_->freeze();
        flat_ta_ = std::make_shared<Context>();
        flat_ta_->set_name("flat_ta");
        flat_ta_->declare_coordinates({"ta1", "ta2", "ta3", "ta4", "ta5"});
        flat_ta_->freeze();
        flat_chart_ = flat_chart(*flat_a_, *flat_ta_);
        auto add = [&](DistributionModel&& m) {
            std::string key = m.name;
            models_.emplace(std::move(key), std::make_shared<DistributionModel>(std::move(m)));
        };
        add(build_flat_cartan());
        add(build_hilbert_cartan(*flat_a_));
        add(build_hc_family({}));
        add(build_chazy_k32(*flat_a_));
        add(build_chazy_k23(*flat_a_));
        add(build_lame_spin32());
        add(build_lame_spin4());
    }

    std::shared_ptr<Context> flat_a_, flat_ta_;
    FlatChart flat_chart_;
    std::map<std::string, std::shared_ptr<DistributionModel>> models_;
};

// Fresh builtin model, optionally with bound parameters.
inline DistributionModel builtin(const std::string& name, const ParamMap& params = {}) {
    const Catalog& cat = Catalog::instance();
    if (params.empty()) return cat.model(name);
    if (name == "hc_family") return build_hc_family(params);
    // for the remaining charts, bind parameters by substitution
    DistributionModel m = cat.model(name);
    const Context& c = m.chart();
    for (SymbolId s : c.algebraic_atoms()) {
        for (SymbolId rs : c.atom(s).relation->replacement->symbols())
            if (params.count(symbol_name(rs)))
                throw Error("parameter " + symbol_name(rs) +
                            " is tied to the algebraic constant " + symbol_name(s) +
                            " and cannot be bound exactly");
    }
    auto bind = [&](RationalExpr& e) { e = detail::bind_params(e, params, c); };
    for (auto& w : m.omegas) {
        DiffForm nw(m.ctx.get(), 1);
        for (const auto& kv : w.coeffs()) nw.add_to(kv.first, detail::bind_params(kv.second, params, c));
        w = nw;
    }
    auto bind_field = [&](VectorField& X) {
        std::vector<RationalExpr> comp = X.components();
        for (auto& e : comp) bind(e);
        X = VectorField(m.ctx.get(), comp);
    };
    bind_field(m.X1);
    bind_field(m.X2);
    if (m.c_funcs)
        for (auto& e : *m.c_funcs) bind(e);
    if (m.z1_display) bind_field(*m.z1_display);
    if (m.seed_display)
        for (auto& f : *m.seed_display) bind_field(f);
    if (m.dx_dcoord) bind(*m.dx_dcoord);
    m.a_map.reset();             // the chart map is not re-bound
    m.theta_span_display.reset();
    m.big_theta_display.reset();
    m.check_annihilation();
    return m;
}

}  // namespace g2cert::models

#endif
