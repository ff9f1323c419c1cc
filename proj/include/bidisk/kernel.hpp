#pragma once

#include <set>

#include "bidisk/rational_function.hpp"

namespace bidisk {

/// Sparse table of matrix coefficients keyed by (j, k, extra...): j is a
/// power of the conjugated variable, k a power of the plain one. Division
/// by (1 - w̄ z) runs along the (j, k) pair; any extra indices ride along.
template <typename S, int E>
struct KernelTable {
    using Key = std::array<int, 2 + E>;
    std::map<Key, Matrix<S>> t;
    int rows = 0, cols = 0;

    Matrix<S> get(const Key& k) const {
        auto it = t.find(k);
        if (it == t.end()) return Matrix<S>::zero(rows, cols);
        return it->second;
    }
    void add(const Key& k, const Matrix<S>& m) {
        auto it = t.find(k);
        if (it == t.end()) {
            if (!m.is_zero()) t.emplace(k, m);
            return;
        }
        it->second += m;
        if (it->second.is_zero()) t.erase(it);
    }
    double max_abs() const {
        double s = 0.0;
        for (const auto& [k, m] : t) s = std::max(s, m.max_abs());
        return s;
    }
};

/// Quotient K of R by (1 - w̄ z) along (j, k), with K supported on
/// [0, n-1]^2. `residual` is the max-abs mismatch of the re-expansion
/// (exactly zero iff the division is exact).
template <typename S, int E>
struct DividedKernel {
    KernelTable<S, E> K;
    double residual = 0.0;
    bool exact_division = true;
};

template <typename S, int E>
DividedKernel<S, E> divide_one_minus_wz(const KernelTable<S, E>& R, int n) {
    using Key = typename KernelTable<S, E>::Key;
    DividedKernel<S, E> out;
    out.K.rows = R.rows;
    out.K.cols = R.cols;

    std::set<std::array<int, E>> extras;
    int jmax = n, kmax = n;
    for (const auto& [key, m] : R.t) {
        std::array<int, E> e;
        for (int v = 0; v < E; ++v) e[v] = key[2 + v];
        extras.insert(e);
        jmax = std::max(jmax, key[0]);
        kmax = std::max(kmax, key[1]);
    }

    auto full_key = [](int j, int k, const std::array<int, E>& e) {
        Key key{};
        key[0] = j;
        key[1] = k;
        for (int v = 0; v < E; ++v) key[2 + v] = e[v];
        return key;
    };

    for (const auto& e : extras)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Matrix<S> v = R.get(full_key(j, k, e));
                if (j > 0 && k > 0) v += out.K.get(full_key(j - 1, k - 1, e));
                if (!v.is_zero()) out.K.t.emplace(full_key(j, k, e), v);
            }

    // re-expansion check: R[j,k] must equal K[j,k] - K[j-1,k-1] everywhere
    for (const auto& e : extras)
        for (int j = 0; j <= jmax; ++j)
            for (int k = 0; k <= kmax; ++k) {
                Matrix<S> expand = out.K.get(full_key(j, k, e));
                if (j > 0 && k > 0) expand -= out.K.get(full_key(j - 1, k - 1, e));
                Matrix<S> diff = R.get(full_key(j, k, e)) - expand;
                if (!diff.is_zero()) {
                    out.exact_division = false;
                    out.residual = std::max(out.residual, diff.max_abs());
                }
            }
    return out;
}

/// Coefficients of p̄(w) p(z) I - Q(w)* Q(z) for one-variable (Q, p):
/// key (j, k) carries the w̄^j z^k coefficient.
template <typename S>
KernelTable<S, 0> pair_table_1var(const MatPoly1<S>& Q, const MatPoly1<S>& p) {
    KernelTable<S, 0> R;
    const int N = Q.cols();
    R.rows = N;
    R.cols = N;
    Matrix<S> I = Matrix<S>::identity(N);
    for (const auto& [ka, ca] : p.terms())
        for (const auto& [kb, cb] : p.terms())
            R.add({ka[0], kb[0]}, I * (conj_scalar(ca(0, 0)) * cb(0, 0)));
    for (const auto& [ka, ma] : Q.terms())
        for (const auto& [kb, mb] : Q.terms())
            R.add({ka[0], kb[0]}, Matrix<S>::zero(N, N) - ma.conj_transpose() * mb);
    return R;
}

/// Two-variable version restricted to w2 = z2 on the circle (so z̄2 = z2^{-1}):
/// key (j, k, l) carries w̄1^j z1^k z2^l.
template <typename S>
KernelTable<S, 1> pair_table_2var_on_diagonal(const MatPoly2<S>& Q, const MatPoly2<S>& p) {
    KernelTable<S, 1> R;
    const int N = Q.cols();
    R.rows = N;
    R.cols = N;
    Matrix<S> I = Matrix<S>::identity(N);
    for (const auto& [ka, ca] : p.terms())
        for (const auto& [kb, cb] : p.terms())
            R.add({ka[0], kb[0], kb[1] - ka[1]}, I * (conj_scalar(ca(0, 0)) * cb(0, 0)));
    for (const auto& [ka, ma] : Q.terms())
        for (const auto& [kb, mb] : Q.terms())
            R.add({ka[0], kb[0], kb[1] - ka[1]},
                  Matrix<S>::zero(N, N) - ma.conj_transpose() * mb);
    return R;
}

/// |p|^2 I - Q*Q as a Laurent polynomial on the torus (z̄ = z^{-1} in every
/// variable). Identically zero iff Q/p is iso-inner (as a torus identity).
template <typename S, int V>
MatPoly<S, V> isoinner_defect(const MatPoly<S, V>& Q, const MatPoly<S, V>& p) {
    const int N = Q.cols();
    MatPoly<S, V> lhs = scalar_poly_mul(p.conj_reflect() * p, MatPoly<S, V>::identity(N));
    return lhs - Q.conj_reflect() * Q;
}

}  // namespace bidisk
