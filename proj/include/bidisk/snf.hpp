#pragma once

#include "bidisk/upoly.hpp"

namespace bidisk {

/// Exact Smith normal form P = T1 * D * T2 over Q(i)[z]. T1, T2 are
/// unimodular (their exact polynomial inverses are stored alongside), and
/// D is diagonal with monic invariant factors in divisibility order,
/// possibly followed by zeros.
struct SmithForm {
    MatPoly1<GaussianRational> T1, T1_inv;
    MatPoly1<GaussianRational> D;
    MatPoly1<GaussianRational> T2, T2_inv;
    std::vector<QPoly> invariant_factors;  // d_1..d_k including zeros
    int rank = 0;                          // number of nonzero invariant factors
};

namespace detail {

using QPolyMat = std::vector<std::vector<QPoly>>;

inline QPolyMat qpm_identity(int n) {
    QPolyMat m(n, std::vector<QPoly>(n));
    for (int i = 0; i < n; ++i) m[i][i] = QPoly::one();
    return m;
}

inline QPolyMat qpm_mul(const QPolyMat& a, const QPolyMat& b) {
    int m = int(a.size()), k = int(b.size()), n = k ? int(b[0].size()) : 0;
    QPolyMat out(m, std::vector<QPoly>(n));
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (b[t][j].is_zero()) continue;
                out[i][j] = out[i][j] + a[i][t] * b[t][j];
            }
        }
    return out;
}

inline bool qpm_is_identity(const QPolyMat& a) {
    for (int i = 0; i < int(a.size()); ++i)
        for (int j = 0; j < int(a[i].size()); ++j) {
            if (i == j) {
                if (!(a[i][j] == QPoly::one())) return false;
            } else if (!a[i][j].is_zero()) {
                return false;
            }
        }
    return true;
}

/// Reduction state; every elementary operation updates the transforms and
/// their inverses so the invariant P = T1 * W * T2 never breaks.
struct SnfWork {
    QPolyMat W, T1, T1inv, T2, T2inv;
    int m, n;

    explicit SnfWork(const QPolyMat& P)
        : W(P),
          m(int(P.size())),
          n(P.empty() ? 0 : int(P[0].size())) {
        T1 = qpm_identity(m);
        T1inv = qpm_identity(m);
        T2 = qpm_identity(n);
        T2inv = qpm_identity(n);
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        std::swap(W[i], W[j]);
        for (int r = 0; r < m; ++r) std::swap(T1[r][i], T1[r][j]);
        std::swap(T1inv[i], T1inv[j]);
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(W[r][i], W[r][j]);
        std::swap(T2[i], T2[j]);
        for (int r = 0; r < n; ++r) std::swap(T2inv[r][i], T2inv[r][j]);
    }
    /// row_i += q * row_j
    void row_add(int i, int j, const QPoly& q) {
        if (q.is_zero()) return;
        for (int c = 0; c < n; ++c) W[i][c] = W[i][c] + q * W[j][c];
        for (int r = 0; r < m; ++r) T1[r][j] = T1[r][j] - q * T1[r][i];
        for (int c = 0; c < m; ++c) T1inv[i][c] = T1inv[i][c] + q * T1inv[j][c];
    }
    /// col_i += q * col_j
    void col_add(int i, int j, const QPoly& q) {
        if (q.is_zero()) return;
        for (int r = 0; r < m; ++r) W[r][i] = W[r][i] + q * W[r][j];
        for (int c = 0; c < n; ++c) T2[j][c] = T2[j][c] - q * T2[i][c];
        for (int r = 0; r < n; ++r) T2inv[r][i] = T2inv[r][i] + q * T2inv[r][j];
    }
    /// row_i *= u, constant u != 0
    void scale_row(int i, const GaussianRational& u) {
        GaussianRational uinv = GaussianRational(1) / u;
        for (int c = 0; c < n; ++c) W[i][c] = W[i][c] * u;
        for (int r = 0; r < m; ++r) T1[r][i] = T1[r][i] * uinv;
        for (int c = 0; c < m; ++c) T1inv[i][c] = T1inv[i][c] * u;
    }
    /// col_i *= u, constant u != 0
    void scale_col(int i, const GaussianRational& u) {
        GaussianRational uinv = GaussianRational(1) / u;
        for (int r = 0; r < m; ++r) W[r][i] = W[r][i] * u;
        for (int c = 0; c < n; ++c) T2[i][c] = T2[i][c] * uinv;
        for (int r = 0; r < n; ++r) T2inv[r][i] = T2inv[r][i] * u;
    }

    /// The positive rational c with (1/c) * coeffs integral and coprime.
    static GaussianRational content(const std::vector<const QPoly*>& polys) {
        mpz_class g = 0, l = 1;
        auto absorb = [&](const mpq_class& q) {
            if (q == 0) return;
            mpz_class num = abs(q.get_num());
            g = g == 0 ? num : gcd(g, num);
            l = lcm(l, q.get_den());
        };
        for (const QPoly* p : polys)
            for (const auto& v : p->c) {
                absorb(v.re());
                absorb(v.im());
            }
        if (g == 0) return GaussianRational(1);
        return GaussianRational(mpq_class(g, l), mpq_class(0));
    }

    /// Rational-height hygiene: dividing rows/columns of W by their content
    /// is an elementary scaling, so the transforms absorb it exactly.
    void normalize_region(int t) {
        for (int i = t; i < m; ++i) {
            std::vector<const QPoly*> row;
            for (int c = 0; c < n; ++c) row.push_back(&W[i][c]);
            GaussianRational ct = content(row);
            if (!(ct == GaussianRational(1)) && !ct.is_zero())
                scale_row(i, GaussianRational(1) / ct);
        }
        for (int j = t; j < n; ++j) {
            std::vector<const QPoly*> col;
            for (int r = 0; r < m; ++r) col.push_back(&W[r][j]);
            GaussianRational ct = content(col);
            if (!(ct == GaussianRational(1)) && !ct.is_zero())
                scale_col(j, GaussianRational(1) / ct);
        }
    }
};

}  // namespace detail

inline SmithForm smith_normal_form(const MatPoly1<GaussianRational>& P) {
    using detail::SnfWork;
    detail::QPolyMat Pm = upoly_matrix_from_matpoly(P);
    SnfWork w(Pm);
    const int m = w.m, n = w.n;
    const int k = std::min(m, n);

    for (int t = 0; t < k; ++t) {
        // pivot selection: minimal degree, ties by coefficient height then position
        auto pick_pivot = [&]() -> std::pair<int, int> {
            int bi = -1, bj = -1;
            int bdeg = 0;
            mpz_class bh = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    if (w.W[i][j].is_zero()) continue;
                    int d = w.W[i][j].degree();
                    mpz_class h = upoly_height(w.W[i][j]);
                    if (bi < 0 || d < bdeg || (d == bdeg && h < bh)) {
                        bi = i;
                        bj = j;
                        bdeg = d;
                        bh = h;
                    }
                }
            return {bi, bj};
        };

        auto [pi, pj] = pick_pivot();
        if (pi < 0) break;  // remaining block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        while (true) {
            // clear column t and row t; a nonzero remainder becomes the new,
            // strictly smaller pivot
            bool changed = true;
            while (changed) {
                changed = false;
                w.normalize_region(t);
                for (int i = t + 1; i < m; ++i) {
                    if (w.W[i][t].is_zero()) continue;
                    auto [q, r] = w.W[i][t].divmod(w.W[t][t]);
                    w.row_add(i, t, -q);
                    if (!r.is_zero()) {
                        w.swap_rows(t, i);
                        changed = true;
                    }
                }
                for (int j = t + 1; j < n; ++j) {
                    if (w.W[t][j].is_zero()) continue;
                    auto [q, r] = w.W[t][j].divmod(w.W[t][t]);
                    w.col_add(j, t, -q);
                    if (!r.is_zero()) {
                        w.swap_cols(t, j);
                        changed = true;
                    }
                }
            }
            // divisibility fixup: fold a non-multiple into row t and reduce again
            bool fixed = true;
            for (int i = t + 1; i < m && fixed; ++i)
                for (int j = t + 1; j < n && fixed; ++j) {
                    if (w.W[i][j].is_zero()) continue;
                    if (!w.W[t][t].divides(w.W[i][j])) {
                        w.row_add(t, i, QPoly::one());
                        fixed = false;
                    }
                }
            if (fixed) break;
        }
    }

    // monic normalization; units move into T1
    for (int t = 0; t < k; ++t) {
        if (w.W[t][t].is_zero()) continue;
        GaussianRational lead = w.W[t][t].leading();
        if (!(lead == GaussianRational(1))) w.scale_row(t, GaussianRational(1) / lead);
    }

    SmithForm out;
    out.invariant_factors.resize(k);
    for (int t = 0; t < k; ++t) {
        out.invariant_factors[t] = w.W[t][t];
        if (!w.W[t][t].is_zero()) ++out.rank;
    }
    for (int t = 0; t + 1 < k; ++t)
        if (!out.invariant_factors[t].is_zero() && !out.invariant_factors[t + 1].is_zero())
            require(out.invariant_factors[t].divides(out.invariant_factors[t + 1]),
                    ErrorCode::BadInput, "SNF divisibility chain broken (internal)");

    out.T1 = matpoly_from_upoly_matrix(w.T1);
    out.T1_inv = matpoly_from_upoly_matrix(w.T1inv);
    out.T2 = matpoly_from_upoly_matrix(w.T2);
    out.T2_inv = matpoly_from_upoly_matrix(w.T2inv);
    out.D = matpoly_from_upoly_matrix(w.W);

    // exact reconstruction checks before returning
    require(detail::qpm_is_identity(detail::qpm_mul(w.T1, w.T1inv)), ErrorCode::BadInput,
            "SNF T1 inverse check failed (internal)");
    require(detail::qpm_is_identity(detail::qpm_mul(w.T2, w.T2inv)), ErrorCode::BadInput,
            "SNF T2 inverse check failed (internal)");
    require(out.T1 * out.D * out.T2 == P, ErrorCode::BadInput,
            "SNF reconstruction check failed (internal)");
    return out;
}

inline SmithForm smith_normal_form(const MatPoly1<Cplx>&) {
    fail(ErrorCode::FloatInput, "Smith normal form requires exact coefficients");
}

}  // namespace bidisk
