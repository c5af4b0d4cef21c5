#ifndef G2CERT_EXTERIOR_HPP
#define G2CERT_EXTERIOR_HPP

#include <array>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "g2cert/linalg.hpp"
#include "g2cert/symcore.hpp"

namespace g2cert {

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

class VectorField {
public:
    VectorField() = default;
    VectorField(const Context* ctx, std::vector<RationalExpr> components)
        : ctx_(ctx), comp_(std::move(components)) {
        if (comp_.size() != ctx->dimension())
            throw Error("vector field needs one component per coordinate");
        for (auto& c : comp_) c = normalize(c, *ctx);
    }

    static VectorField zero(const Context* ctx) {
        return VectorField(ctx, std::vector<RationalExpr>(ctx->dimension()));
    }
    static VectorField coordinate(const Context* ctx, std::size_t i) {
        std::vector<RationalExpr> c(ctx->dimension());
        c.at(i) = RationalExpr(BigRational(1));
        return VectorField(ctx, std::move(c));
    }

    const Context& ctx() const { return *ctx_; }
    const Context* ctx_ptr() const { return ctx_; }
    const std::vector<RationalExpr>& components() const { return comp_; }
    const RationalExpr& component(std::size_t i) const { return comp_.at(i); }

    bool is_zero_field(const Context& c) const {
        for (const auto& e : comp_)
            if (!is_zero(e, c)) return false;
        return true;
    }

    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        a.require_same(b);
        std::vector<RationalExpr> c(a.comp_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.comp_[i] + b.comp_[i];
        return VectorField(a.ctx_, std::move(c));
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        a.require_same(b);
        std::vector<RationalExpr> c(a.comp_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.comp_[i] - b.comp_[i];
        return VectorField(a.ctx_, std::move(c));
    }
    friend VectorField operator*(const RationalExpr& f, const VectorField& x) {
        std::vector<RationalExpr> c(x.comp_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f * x.comp_[i];
        return VectorField(x.ctx_, std::move(c));
    }
    friend VectorField operator-(const VectorField& x) {
        return RationalExpr(BigRational(-1)) * x;
    }

    void require_same(const VectorField& o) const {
        if (ctx_ != o.ctx_) throw ContextMismatch();
    }

private:
    const Context* ctx_ = nullptr;
    std::vector<RationalExpr> comp_;
};

// Directional derivative X(f).
inline RationalExpr apply(const VectorField& X, const RationalExpr& f) {
    const Context& ctx = X.ctx();
    RationalExpr acc;
    for (std::size_t i = 0; i < ctx.dimension(); ++i) {
        if (X.component(i).is_structural_zero()) continue;
        RationalExpr df = differentiate(f, ctx.coordinates()[i], ctx);
        if (df.is_structural_zero()) continue;
        acc += X.component(i) * df;
    }
    return normalize(acc, ctx);
}

// Lie bracket [X, Y].
inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    X.require_same(Y);
    const Context& ctx = X.ctx();
    std::vector<RationalExpr> c(ctx.dimension());
    for (std::size_t i = 0; i < ctx.dimension(); ++i)
        c[i] = apply(X, Y.component(i)) - apply(Y, X.component(i));
    return VectorField(X.ctx_ptr(), std::move(c));
}

// ---------------------------------------------------------------------------
// Differential forms
// ---------------------------------------------------------------------------

// Strictly increasing coordinate index tuple.
using FormKey = std::vector<std::uint8_t>;

class DiffForm {
public:
    DiffForm() = default;
    DiffForm(const Context* ctx, int degree) : ctx_(ctx), degree_(degree) {
        if (degree < 0 || degree > static_cast<int>(ctx->dimension()))
            throw Error("form degree out of range");
    }

    static DiffForm zero(const Context* ctx, int degree) { return DiffForm(ctx, degree); }

    static DiffForm function(const Context* ctx, const RationalExpr& f) {
        DiffForm a(ctx, 0);
        a.set({}, f);
        return a;
    }

    // d(coordinate i) as a 1-form.
    static DiffForm coordinate_differential(const Context* ctx, std::size_t i) {
        DiffForm a(ctx, 1);
        a.set({static_cast<std::uint8_t>(i)}, RationalExpr(BigRational(1)));
        return a;
    }

    // 1-form from coefficients in coordinate order.
    static DiffForm one_form(const Context* ctx, const std::vector<RationalExpr>& coeffs) {
        DiffForm a(ctx, 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            a.set({static_cast<std::uint8_t>(i)}, coeffs[i]);
        return a;
    }

    const Context& ctx() const { return *ctx_; }
    const Context* ctx_ptr() const { return ctx_; }
    int degree() const { return degree_; }
    const std::map<FormKey, RationalExpr>& coeffs() const { return coeffs_; }

    RationalExpr coeff(const FormKey& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? RationalExpr() : it->second;
    }

    void set(const FormKey& k, const RationalExpr& v) {
        if (static_cast<int>(k.size()) != degree_) throw Error("form key length != degree");
        RationalExpr n = normalize(v, *ctx_);
        if (n.is_structural_zero())
            coeffs_.erase(k);
        else
            coeffs_[k] = std::move(n);
    }

    void add_to(const FormKey& k, const RationalExpr& v) {
        auto it = coeffs_.find(k);
        if (it == coeffs_.end()) {
            set(k, v);
        } else {
            RationalExpr n = normalize(it->second + v, *ctx_);
            if (n.is_structural_zero())
                coeffs_.erase(it);
            else
                it->second = std::move(n);
        }
    }

    bool is_zero_form(const Context& c) const {
        for (const auto& kv : coeffs_)
            if (!is_zero(kv.second, c)) return false;
        return true;
    }

    friend DiffForm operator+(const DiffForm& a, const DiffForm& b) {
        a.require_compatible(b);
        DiffForm r = a;
        for (const auto& kv : b.coeffs_) r.add_to(kv.first, kv.second);
        return r;
    }
    friend DiffForm operator-(const DiffForm& a, const DiffForm& b) {
        a.require_compatible(b);
        DiffForm r = a;
        for (const auto& kv : b.coeffs_) r.add_to(kv.first, -kv.second);
        return r;
    }
    friend DiffForm operator*(const RationalExpr& f, const DiffForm& a) {
        DiffForm r(a.ctx_, a.degree_);
        for (const auto& kv : a.coeffs_) r.set(kv.first, f * kv.second);
        return r;
    }
    friend DiffForm operator-(const DiffForm& a) { return RationalExpr(BigRational(-1)) * a; }

    void require_compatible(const DiffForm& o) const {
        if (ctx_ != o.ctx_) throw ContextMismatch();
        if (degree_ != o.degree_) throw Error("form degrees differ");
    }

private:
    const Context* ctx_ = nullptr;
    int degree_ = 0;
    std::map<FormKey, RationalExpr> coeffs_;
};

namespace detail {

// Merges two strictly increasing key tuples; returns the permutation sign, or
// 0 if they share an index.
inline int merge_keys(const FormKey& a, const FormKey& b, FormKey& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] hops over the remaining entries of a
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
}

}  // namespace detail

inline DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.ctx_ptr() != b.ctx_ptr()) throw ContextMismatch();
    int deg = a.degree() + b.degree();
    if (deg > static_cast<int>(a.ctx().dimension())) throw DegreeOverflow();
    DiffForm r(a.ctx_ptr(), deg);
    FormKey merged;
    for (const auto& ka : a.coeffs()) {
        for (const auto& kb : b.coeffs()) {
            int sign = detail::merge_keys(ka.first, kb.first, merged);
            if (sign == 0) continue;
            RationalExpr v = ka.second * kb.second;
            if (sign < 0) v = -v;
            r.add_to(merged, v);
        }
    }
    return r;
}

// Exterior derivative; coefficients are differentiated through atom rules.
inline DiffForm exterior_d(const DiffForm& a) {
    const Context& ctx = a.ctx();
    if (a.degree() >= static_cast<int>(ctx.dimension())) throw DegreeOverflow();
    DiffForm r(a.ctx_ptr(), a.degree() + 1);
    FormKey merged;
    for (const auto& kv : a.coeffs()) {
        for (std::size_t i = 0; i < ctx.dimension(); ++i) {
            RationalExpr df = differentiate(kv.second, ctx.coordinates()[i], ctx);
            if (df.is_structural_zero()) continue;
            FormKey di{static_cast<std::uint8_t>(i)};
            int sign = detail::merge_keys(di, kv.first, merged);
            if (sign == 0) continue;
            r.add_to(merged, sign < 0 ? -df : df);
        }
    }
    return r;
}

// Interior product i_X a (library-internal, used by the Cartan formula).
namespace detail {
inline DiffForm interior(const VectorField& X, const DiffForm& a) {
    if (X.ctx_ptr() != a.ctx_ptr()) throw ContextMismatch();
    if (a.degree() == 0) return DiffForm::zero(a.ctx_ptr(), 0);
    DiffForm r(a.ctx_ptr(), a.degree() - 1);
    for (const auto& kv : a.coeffs()) {
        for (std::size_t pos = 0; pos < kv.first.size(); ++pos) {
            const RationalExpr& xc = X.component(kv.first[pos]);
            if (xc.is_structural_zero()) continue;
            FormKey rest;
            rest.reserve(kv.first.size() - 1);
            for (std::size_t t = 0; t < kv.first.size(); ++t)
                if (t != pos) rest.push_back(kv.first[t]);
            RationalExpr v = xc * kv.second;
            if (pos % 2 == 1) v = -v;
            r.add_to(rest, v);
        }
    }
    return r;
}
}  // namespace detail

// Lie derivative via the Cartan formula L_X a = d(i_X a) + i_X(d a).
inline DiffForm lie_derivative(const VectorField& X, const DiffForm& a) {
    if (X.ctx_ptr() != a.ctx_ptr()) throw ContextMismatch();
    if (a.degree() == 0) {
        RationalExpr f = a.coeff({});
        return DiffForm::function(a.ctx_ptr(), apply(X, f));
    }
    return exterior_d(detail::interior(X, a)) + detail::interior(X, exterior_d(a));
}

// ---------------------------------------------------------------------------
// Coordinate maps and pullback
// ---------------------------------------------------------------------------

class CoordinateMap {
public:
    CoordinateMap(const Context* source, const Context* target, std::vector<RationalExpr> images)
        : source_(source), target_(target), images_(std::move(images)) {
        if (images_.size() != target_->dimension())
            throw Error("coordinate map needs one image per target coordinate");
        for (auto& e : images_) e = normalize(e, *source_);
    }

    const Context& source() const { return *source_; }
    const Context& target() const { return *target_; }
    const Context* source_ptr() const { return source_; }
    const std::vector<RationalExpr>& images() const { return images_; }

    // Substitution of target coordinates by their images; other target symbols
    // must exist in the source context unchanged.
    RationalExpr pull_scalar(const RationalExpr& f) const {
        std::unordered_map<SymbolId, RationalExpr> bind;
        for (std::size_t i = 0; i < images_.size(); ++i)
            bind[target_->coordinates()[i]] = images_[i];
        return substitute(f, bind, *source_);
    }

private:
    const Context* source_;
    const Context* target_;
    std::vector<RationalExpr> images_;
};

// Pullback of a form along a coordinate map; commutes with wedge and d.
inline DiffForm pullback(const CoordinateMap& m, const DiffForm& a) {
    if (a.ctx_ptr() != &m.target()) throw ContextMismatch();
    if (a.degree() == 0) return DiffForm::function(m.source_ptr(), m.pull_scalar(a.coeff({})));
    // differentials of the images, computed once
    std::vector<DiffForm> dimg;
    dimg.reserve(m.images().size());
    for (const auto& img : m.images())
        dimg.push_back(exterior_d(DiffForm::function(m.source_ptr(), img)));
    DiffForm r(m.source_ptr(), a.degree());
    for (const auto& kv : a.coeffs()) {
        DiffForm piece = DiffForm::function(m.source_ptr(), m.pull_scalar(kv.second));
        for (std::uint8_t idx : kv.first) piece = wedge(piece, dimg[idx]);
        r = r + piece;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Span decomposition and dual frames
// ---------------------------------------------------------------------------

struct NotInSpan {
    DiffForm residual;
    std::vector<RationalExpr> partial;  // greedy elimination coefficients
};

using SpanResult = std::variant<std::vector<RationalExpr>, NotInSpan>;

// Exact decomposition a = sum coeff_i basis_i over the function field. On
// failure returns the remainder after eliminating against the basis in basis
// order, each basis form pivoting on its trailing (largest) key.
inline SpanResult span_coefficients(const DiffForm& a, const std::vector<DiffForm>& basis) {
    if (basis.empty()) throw Error("span_coefficients: empty basis");
    const Context& ctx = a.ctx();
    for (const auto& b : basis) a.require_compatible(b);

    // collect keys
    std::map<FormKey, std::size_t> keyix;
    for (const auto& kv : a.coeffs()) keyix.emplace(kv.first, 0);
    for (const auto& b : basis)
        for (const auto& kv : b.coeffs()) keyix.emplace(kv.first, 0);
    std::size_t m = 0;
    for (auto& kv : keyix) kv.second = m++;

    ExprMatrix A(m, std::vector<RationalExpr>(basis.size()));
    ExprMatrix rhs(m, std::vector<RationalExpr>(1));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& kv : basis[j].coeffs()) A[keyix[kv.first]][j] = kv.second;
    for (const auto& kv : a.coeffs()) rhs[keyix[kv.first]][0] = kv.second;

    LinearSolution s = solve_linear(ctx, A, rhs);
    if (s.rank < static_cast<int>(basis.size())) throw DegenerateBasis();
    if (s.consistent) {
        std::vector<RationalExpr> out(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) out[j] = s.x[j][0];
        return out;
    }

    // greedy elimination, pivots on trailing keys in basis order
    DiffForm rem = a;
    std::vector<DiffForm> reduced = basis;
    std::vector<RationalExpr> partial(basis.size());
    std::vector<FormKey> used;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        // reduce against previously chosen pivots
        FormKey pivot;
        bool found = false;
        for (auto it = reduced[j].coeffs().rbegin(); it != reduced[j].coeffs().rend(); ++it) {
            if (std::find(used.begin(), used.end(), it->first) != used.end()) continue;
            if (!is_zero(it->second, ctx)) {
                pivot = it->first;
                found = true;
                break;
            }
        }
        if (!found) throw DegenerateBasis();
        used.push_back(pivot);
        RationalExpr pv = reduced[j].coeff(pivot);
        for (std::size_t l = j + 1; l < basis.size(); ++l) {
            RationalExpr c = reduced[l].coeff(pivot);
            if (c.is_structural_zero()) continue;
            reduced[l] = reduced[l] - (c / pv) * reduced[j];
        }
        RationalExpr c = rem.coeff(pivot);
        partial[j] = normalize(c / pv, ctx);
        if (!partial[j].is_structural_zero()) rem = rem - partial[j] * reduced[j];
    }
    return NotInSpan{std::move(rem), std::move(partial)};
}

// Frame dual to five independent functions: fields V_i with V_i(f_j) = delta_ij.
inline std::vector<VectorField> dual_frame(const std::vector<RationalExpr>& funcs,
                                           const Context& ctx) {
    const std::size_t n = ctx.dimension();
    if (funcs.size() != n) throw Error("dual_frame needs one function per coordinate");
    ExprMatrix J(n, std::vector<RationalExpr>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            J[j][k] = differentiate(funcs[j], ctx.coordinates()[k], ctx);
    LinearSolution s = solve_linear(ctx, J, identity_matrix(n));
    if (s.rank < static_cast<int>(n) || !s.consistent)
        throw SingularJacobian("rank " + std::to_string(s.rank) + " < " + std::to_string(n));
    std::vector<VectorField> frame;
    frame.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RationalExpr> comp(n);
        for (std::size_t k = 0; k < n; ++k) comp[k] = s.x[k][i];
        frame.push_back(VectorField(&ctx, std::move(comp)));
    }
    return frame;
}

}  // namespace g2cert

#endif
