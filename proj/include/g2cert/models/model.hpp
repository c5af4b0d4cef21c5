#ifndef G2CERT_MODELS_MODEL_HPP
#define G2CERT_MODELS_MODEL_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "g2cert/exterior.hpp"
#include "g2cert/symcore.hpp"

namespace g2cert::models {

// Evaluation of a 1-form on a vector field.
inline RationalExpr form_on_field(const DiffForm& w, const VectorField& X) {
    if (w.degree() != 1) throw Error("form_on_field expects a 1-form");
    RationalExpr acc;
    for (const auto& kv : w.coeffs()) acc += kv.second * X.component(kv.first[0]);
    return normalize(acc, w.ctx());
}

// A chart with the annihilating coframe of a (2,3,5)-distribution plus the
// auxiliary data needed to produce its bracket-generating seed triple.
struct DistributionModel {
    std::string name;
    std::shared_ptr<Context> ctx;
    std::vector<DiffForm> omegas;  // omega1..omega3
    VectorField X1, X2;            // spanning pair of the distribution
    std::optional<CoordinateMap> a_map;                 // into the flat a-chart
    std::optional<std::vector<RationalExpr>> c_funcs;   // 5 chart functions
    std::optional<std::array<VectorField, 3>> seed_display;
    std::optional<VectorField> z1_display;
    std::optional<VectorField> z2_display;
    std::optional<VectorField> z3_display;
    // Span coefficient displays: theta_span_display[i][j] = coefficient of
    // omega_{j+1} in theta_{i+1} (or in Theta_{i+1} for big_theta_display).
    std::optional<std::vector<std::vector<RationalExpr>>> theta_span_display;
    std::optional<std::vector<std::vector<RationalExpr>>> big_theta_display;
    // Residual expressions that the context's atom rules annihilate (the
    // Ricci-flatness and 6th-order conditions, written in the chart's atoms).
    std::vector<RationalExpr> side_conditions;
    // Derivative of the hidden independent variable with respect to the chart
    // coordinate, for charts parametrised by w or r.
    std::optional<RationalExpr> dx_dcoord;

    const Context& chart() const { return *ctx; }

    void check_annihilation() const {
        for (const auto& w : omegas) {
            for (const VectorField* X : {&X1, &X2}) {
                RationalExpr v = form_on_field(w, *X);
                if (!v.is_structural_zero())
                    throw AnnihilationFailure(name + ": omega(" + to_string(v) + ") != 0");
            }
        }
    }
};

// The flat chart in a-coordinates: the canonical coframe, its tilde variant,
// and the structure equations that pin the sign conventions.
struct FlatChart {
    const Context* ctx = nullptr;
    std::vector<DiffForm> thetas;        // theta1..theta5
    std::vector<DiffForm> tilde_thetas;  // pulled back to the a-chart

    void verify_structure_equations() const {
        const Context& c = *ctx;
        auto expect = [&](const DiffForm& got, const DiffForm& want, const char* label) {
            if (!(got - want).is_zero_form(c)) throw Error(std::string("structure equation failed: ") + label);
        };
        expect(exterior_d(thetas[0]), wedge(thetas[2], thetas[3]), "d theta1");
        expect(exterior_d(thetas[1]), wedge(thetas[2], thetas[4]), "d theta2");
        expect(exterior_d(thetas[2]), wedge(thetas[3], thetas[4]), "d theta3");
        if (!exterior_d(thetas[3]).is_zero_form(c)) throw Error("d theta4 != 0");
        if (!exterior_d(thetas[4]).is_zero_form(c)) throw Error("d theta5 != 0");
    }
};

namespace detail {

inline DiffForm d_of(const Context& ctx, const RationalExpr& f) {
    return exterior_d(DiffForm::function(&ctx, f));
}

}  // namespace detail

// Monge normal form: omega1 = dy - p dx, omega2 = dp - q dx,
// omega3 = dz - phi dx, spanned by d_q and d_x + p d_y + q d_p + phi d_z.
// Coordinates are taken by position: (x, y, z, p, q).
inline DistributionModel monge_model(const RationalExpr& phi, std::shared_ptr<Context> ctx,
                                     const std::string& name = "monge") {
    if (ctx->dimension() != 5) throw Error("monge_model needs a 5-coordinate chart");
    const Context& c = *ctx;
    RationalExpr phin = normalize(phi, c);
    DistributionModel m;
    m.name = name;
    m.ctx = std::move(ctx);
    auto dc = [&](std::size_t i) { return DiffForm::coordinate_differential(&c, i); };
    RationalExpr one(BigRational(1));
    m.omegas = {dc(1) - RationalExpr::variable(c.coordinates()[3]) * dc(0),
                dc(3) - RationalExpr::variable(c.coordinates()[4]) * dc(0),
                dc(2) - phin * dc(0)};
    m.X1 = VectorField::coordinate(&c, 4);
    m.X2 = VectorField(&c, {one, RationalExpr::variable(c.coordinates()[3]),
                            phin, RationalExpr::variable(c.coordinates()[4]), RationalExpr()});
    m.check_annihilation();
    return m;
}

// The canonical coframe on the flat a-chart, with the tilde coframe obtained
// by pulling the same shape of forms back along
// (a1 + a3 a4, a2 + a3 a5, -a3, a4, a5).
inline FlatChart flat_chart(const Context& a_ctx, const Context& ta_ctx) {
    FlatChart fc;
    fc.ctx = &a_ctx;
    auto P = [&](const std::string& s) { return parse_expr(s, a_ctx); };
    auto dc = [&](std::size_t i) { return DiffForm::coordinate_differential(&a_ctx, i); };
    fc.thetas.push_back(dc(0) + P("a3+1/2*a4*a5") * dc(3));
    fc.thetas.push_back(dc(1) + P("a3-1/2*a4*a5") * dc(4));
    fc.thetas.push_back(dc(2) + P("1/2*a4") * dc(4) - P("1/2*a5") * dc(3));
    fc.thetas.push_back(dc(3));
    fc.thetas.push_back(dc(4));
    // tilde coframe on its own chart, pulled back along the transformation
    auto Pt = [&](const std::string& s) { return parse_expr(s, ta_ctx); };
    auto dt = [&](std::size_t i) { return DiffForm::coordinate_differential(&ta_ctx, i); };
    std::vector<DiffForm> tilde;
    tilde.push_back(dt(0) + Pt("ta3+1/2*ta4*ta5") * dt(3));
    tilde.push_back(dt(1) + Pt("ta3-1/2*ta4*ta5") * dt(4));
    tilde.push_back(dt(2) + Pt("1/2*ta4") * dt(4) - Pt("1/2*ta5") * dt(3));
    CoordinateMap transform(&a_ctx, &ta_ctx,
                            {P("a1+a3*a4"), P("a2+a3*a5"), P("-a3"), P("a4"), P("a5")});
    for (const auto& t : tilde) fc.tilde_thetas.push_back(pullback(transform, t));
    fc.verify_structure_equations();
    return fc;
}

// (c1,...,c5) = (6a1 - 2a3a4 + a4^2a5, 6a2 - 2a3a5 - a4a5^2, 2a3, -a4, a5),
// applied to arbitrary expressions standing in for (a1,...,a5).
inline std::vector<RationalExpr> c_from_a(const std::vector<RationalExpr>& a) {
    if (a.size() != 5) throw Error("c_from_a expects five expressions");
    const RationalExpr six(BigRational(6)), two(BigRational(2));
    return {six * a[0] - two * a[2] * a[3] + a[3] * a[3] * a[4],
            six * a[1] - two * a[2] * a[4] - a[3] * a[4] * a[4],
            two * a[2], -a[3], a[4]};
}

// Theta1 = dc1 - 2c4 dc3 - 4c3 dc4, Theta2 = dc2 + 2c5 dc3 + 4c3 dc5,
// Theta3 = dc3 + c5 dc4 - c4 dc5, built from arbitrary chart functions.
inline std::vector<DiffForm> big_theta(const std::vector<RationalExpr>& c, const Context& ctx) {
    if (c.size() != 5) throw Error("big_theta expects five expressions");
    const RationalExpr two(BigRational(2)), four(BigRational(4));
    std::vector<DiffForm> dc;
    for (const auto& f : c) dc.push_back(detail::d_of(ctx, f));
    return {dc[0] - two * c[3] * dc[2] - four * c[2] * dc[3],
            dc[1] + two * c[4] * dc[2] + four * c[2] * dc[4],
            dc[2] + c[4] * dc[3] - c[3] * dc[4]};
}

// Engel presentation: with r1 = c5, r2 = c4, r3 = c3, r4 = (c2 + 3c3c5)/2,
// r5 = (c1 - 3c3c4)/2 the three displayed combinations reproduce Theta3,
// Theta2/2, Theta1/2 exactly.
inline bool engel_check(const Context& c_ctx) {
    auto P = [&](const std::string& s) { return parse_expr(s, c_ctx); };
    std::vector<RationalExpr> c{P("c1"), P("c2"), P("c3"), P("c4"), P("c5")};
    auto Th = big_theta(c, c_ctx);
    RationalExpr r1 = c[4], r2 = c[3], r3 = c[2];
    RationalExpr r4 = P("1/2") * (c[1] + P("3") * c[2] * c[4]);
    RationalExpr r5 = P("1/2") * (c[0] - P("3") * c[2] * c[3]);
    auto d = [&](const RationalExpr& f) { return detail::d_of(c_ctx, f); };
    DiffForm e1 = d(r3) + r1 * d(r2) - r2 * d(r1);
    DiffForm e2 = d(r4) + P("1/2") * (r3 * d(r1) - r1 * d(r3));
    DiffForm e3 = d(r5) + P("1/2") * (r2 * d(r3) - r3 * d(r2));
    return (e1 - Th[2]).is_zero_form(c_ctx) &&
           (e2 - P("1/2") * Th[1]).is_zero_form(c_ctx) &&
           (e3 - P("1/2") * Th[0]).is_zero_form(c_ctx);
}

// Z1 = d_c3 + 2c5 d_c2 - 2c4 d_c1, Z2 = d_c4 + 4c3 d_c1 - 2c5 d_c3,
// Z3 = d_c5 + 2c4 d_c3 - 4c3 d_c2, where d_ci is the frame dual to the
// model's chart functions.
inline std::array<VectorField, 3> z_fields(const DistributionModel& m) {
    if (!m.c_funcs) throw Error(m.name + " has no chart functions");
    const auto& c = *m.c_funcs;
    std::vector<VectorField> f = dual_frame(c, m.chart());
    RationalExpr two(BigRational(2)), four(BigRational(4));
    VectorField Z1 = f[2] + two * c[4] * f[1] - two * c[3] * f[0];
    VectorField Z2 = f[3] + four * c[2] * f[0] - two * c[4] * f[2];
    VectorField Z3 = f[4] + two * c[3] * f[2] - four * c[2] * f[1];
    return {Z1, Z2, Z3};
}

// S1 = Z2 + c5 Z1, S2 = Z3 - c4 Z1,
// S3 = -c1 Z2 + c2 Z3 - (c1c5 + c2c4 + c3^2) Z1.
inline std::array<VectorField, 3> seed_triple(const DistributionModel& m) {
    auto Z = z_fields(m);
    const auto& c = *m.c_funcs;
    VectorField S1 = Z[1] + c[4] * Z[0];
    VectorField S2 = Z[2] - c[3] * Z[0];
    VectorField S3 = (-c[0]) * Z[1] + c[1] * Z[2] -
                     (c[0] * c[4] + c[1] * c[3] + c[2] * c[2]) * Z[0];
    return {S1, S2, S3};
}

}  // namespace g2cert::models

#endif
