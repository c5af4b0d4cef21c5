#ifndef G2CERT_LINALG_HPP
#define G2CERT_LINALG_HPP

#include <vector>

#include "g2cert/calculus.hpp"
#include "g2cert/ratexpr.hpp"

namespace g2cert {

using ExprMatrix = std::vector<std::vector<RationalExpr>>;

namespace detail {

// Clears denominators row-wise, making entries polynomial. Row scaling
// preserves solution sets.
inline void clear_row_denominators(ExprMatrix& M) {
    for (auto& row : M) {
        Polynomial lcm(BigRational(1));
        for (const auto& e : row)
            if (!e.is_polynomial()) lcm = poly_lcm(lcm, e.den());
        if (lcm.is_one()) continue;
        RationalExpr scale{lcm};
        for (auto& e : row) e = e * scale;
    }
}

// Divides a polynomial row by the gcd of its entries.
inline void reduce_row_content(std::vector<RationalExpr>& row) {
    Polynomial g;
    bool first = true;
    for (const auto& e : row) {
        if (e.is_structural_zero()) continue;
        g = first ? detail::primitive(e.num()) : poly_gcd(g, e.num());
        first = false;
        if (g.is_one()) return;
    }
    if (first || g.is_one() || g.is_constant()) return;
    for (auto& e : row) {
        if (e.is_structural_zero()) continue;
        Polynomial q;
        Polynomial::divide_exact(e.num(), g, q);
        e = RationalExpr(std::move(q));
    }
}

}  // namespace detail

struct LinearSolution {
    bool consistent = false;
    int rank = 0;
    std::vector<std::vector<RationalExpr>> x;  // n x k, valid when consistent
    std::vector<int> pivot_columns;
};

// Fraction-free (Bareiss) elimination with gcd cancellation after each step,
// solving A x = B over the rational-function field of the context. Pivot tests
// are exact modulo the context relations. Free columns are reported via
// pivot_columns; their solution entries are set to zero.
inline LinearSolution solve_linear(const Context& ctx, const ExprMatrix& A, const ExprMatrix& B) {
    std::size_t m = A.size();
    std::size_t n = m ? A[0].size() : 0;
    std::size_t k = B.empty() ? 0 : B[0].size();
    std::size_t w = n + k;
    ExprMatrix M(m);
    for (std::size_t i = 0; i < m; ++i) {
        M[i] = A[i];
        M[i].insert(M[i].end(), B[i].begin(), B[i].end());
    }
    detail::clear_row_denominators(M);

    LinearSolution sol;
    Polynomial prev(BigRational(1));
    std::size_t row = 0;
    std::vector<int> pivot_col_of_row;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        bool found = false;
        for (std::size_t r = row; r < m; ++r) {
            if (!M[r][col].is_structural_zero() && !is_zero(M[r][col], ctx)) {
                piv = r;
                found = true;
                break;
            }
        }
        if (!found) {
            // the whole column is zero modulo relations below this row: zero it
            for (std::size_t r = row; r < m; ++r) M[r][col] = RationalExpr();
            continue;
        }
        std::swap(M[piv], M[row]);
        const Polynomial p = M[row][col].num();
        for (std::size_t r = row + 1; r < m; ++r) {
            std::vector<Polynomial> t(w);
            for (std::size_t j = 0; j < w; ++j) {
                if (j == col) continue;
                t[j] = p * M[r][j].num() - M[r][col].num() * M[row][j].num();
            }
            // fraction-free division by the previous pivot must be uniform over
            // the row; if gcd cancellation already shrank entries, keep the row
            // as is (row scaling is solution-preserving)
            if (!prev.is_one()) {
                std::vector<Polynomial> q(w);
                bool all = true;
                for (std::size_t j = 0; j < w && all; ++j) {
                    if (j == col || t[j].is_zero()) continue;
                    all = Polynomial::divide_exact(t[j], prev, q[j]);
                }
                if (all) t = std::move(q);
            }
            for (std::size_t j = 0; j < w; ++j) M[r][j] = j == col ? RationalExpr() : RationalExpr(t[j]);
            detail::reduce_row_content(M[r]);
        }
        prev = p;
        pivot_col_of_row.push_back(static_cast<int>(col));
        sol.pivot_columns.push_back(static_cast<int>(col));
        ++row;
    }
    sol.rank = static_cast<int>(row);

    sol.consistent = true;
    for (std::size_t r = row; r < m && sol.consistent; ++r)
        for (std::size_t j = n; j < w; ++j)
            if (!M[r][j].is_structural_zero() && !is_zero(M[r][j], ctx)) {
                sol.consistent = false;
                break;
            }
    if (!sol.consistent) return sol;

    sol.x.assign(n, std::vector<RationalExpr>(k));
    for (int r = static_cast<int>(row) - 1; r >= 0; --r) {
        std::size_t pc = static_cast<std::size_t>(pivot_col_of_row[r]);
        for (std::size_t c = 0; c < k; ++c) {
            RationalExpr acc = M[r][n + c];
            for (std::size_t j = pc + 1; j < n; ++j) {
                if (M[r][j].is_structural_zero() || sol.x[j][c].is_structural_zero()) continue;
                acc -= M[r][j] * sol.x[j][c];
            }
            sol.x[pc][c] = normalize(acc / M[r][pc], ctx);
        }
    }
    return sol;
}

inline ExprMatrix identity_matrix(std::size_t n) {
    ExprMatrix I(n, std::vector<RationalExpr>(n));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = RationalExpr(BigRational(1));
    return I;
}

}  // namespace g2cert

#endif
