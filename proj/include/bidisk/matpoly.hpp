#pragma once

#include <array>
#include <map>

#include "bidisk/matrix.hpp"

namespace bidisk {

template <int V>
using Idx = std::array<int, V>;

template <typename S>
S scalar_ipow(const S& base, int k) {
    if (k == 0) return scalar_from_long<S>(1);
    if (k < 0) return scalar_from_long<S>(1) / scalar_ipow(base, -k);
    S acc = scalar_from_long<S>(1);
    S b = base;
    int e = k;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/// Matrix-valued (Laurent) polynomial in V variables, V = 1 or 2.
/// Coefficients live in a sparse map keyed by the exponent tuple; absent
/// keys are zero. Exponents may be negative (Laurent); the plain polynomial
/// types are the same container used with nonnegative support.
template <typename S, int V>
class MatPoly {
public:
    using Key = Idx<V>;
    using Coeffs = std::map<Key, Matrix<S>>;

    MatPoly() : rows_(0), cols_(0) {}
    MatPoly(int rows, int cols) : rows_(rows), cols_(cols) {}

    static MatPoly constant(const Matrix<S>& m) {
        MatPoly p(m.rows(), m.cols());
        p.set_coeff(Key{}, m);
        return p;
    }
    static MatPoly identity(int n) { return constant(Matrix<S>::identity(n)); }
    static MatPoly zero(int rows, int cols) { return MatPoly(rows, cols); }
    /// The scalar monomial c * z^k (1x1).
    static MatPoly monomial(const S& c, Key k) {
        MatPoly p(1, 1);
        Matrix<S> m(1, 1);
        m(0, 0) = c;
        p.set_coeff(k, m);
        return p;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Coeffs& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Matrix<S> coeff(const Key& k) const {
        auto it = terms_.find(k);
        if (it == terms_.end()) return Matrix<S>::zero(rows_, cols_);
        return it->second;
    }

    void set_coeff(const Key& k, const Matrix<S>& m) {
        require(m.rows() == rows_ && m.cols() == cols_, ErrorCode::DimensionMismatch,
                "coefficient shape");
        if (m.is_zero())
            terms_.erase(k);
        else
            terms_[k] = m;
    }

    void add_to_coeff(const Key& k, const Matrix<S>& m) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!m.is_zero()) terms_.emplace(k, m);
            return;
        }
        it->second += m;
        if (it->second.is_zero()) terms_.erase(it);
    }

    int min_deg(int var) const {
        int d = 0;
        bool first = true;
        for (const auto& [k, m] : terms_) {
            if (first || k[var] < d) d = k[var];
            first = false;
        }
        return d;
    }
    int max_deg(int var) const {
        int d = 0;
        bool first = true;
        for (const auto& [k, m] : terms_) {
            if (first || k[var] > d) d = k[var];
            first = false;
        }
        return d;
    }
    /// degree() = max stored exponent (per variable).
    int degree(int var = 0) const { return max_deg(var); }
    bool is_polynomial() const {
        for (const auto& [k, m] : terms_)
            for (int v = 0; v < V; ++v)
                if (k[v] < 0) return false;
        return true;
    }
    /// Laurent half-degree: max |exponent| over the support, per variable.
    int half_degree(int var = 0) const { return std::max(max_deg(var), -min_deg(var)); }

    double max_coeff_abs() const {
        double m = 0.0;
        for (const auto& [k, c] : terms_) m = std::max(m, c.max_abs());
        return m;
    }

    /// Drops float coefficient matrices below rel * (global max-abs).
    void prune(double rel = 1e-13) {
        if constexpr (is_exact_field_v<S>) return;
        double scale = max_coeff_abs();
        if (scale == 0.0) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.max_abs() < rel * scale)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    MatPoly operator-() const {
        MatPoly out(rows_, cols_);
        for (const auto& [k, m] : terms_) out.terms_[k] = Matrix<S>::zero(rows_, cols_) - m;
        return out;
    }

    MatPoly& operator+=(const MatPoly& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "poly add");
        for (const auto& [k, m] : o.terms_) add_to_coeff(k, m);
        return *this;
    }
    MatPoly& operator-=(const MatPoly& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "poly sub");
        for (const auto& [k, m] : o.terms_) add_to_coeff(k, Matrix<S>::zero(rows_, cols_) - m);
        return *this;
    }

    friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
    friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }

    friend MatPoly operator*(const MatPoly& a, const MatPoly& b) {
        require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "poly mul");
        MatPoly out(a.rows_, b.cols_);
        for (const auto& [ka, ma] : a.terms_)
            for (const auto& [kb, mb] : b.terms_) {
                Key k;
                for (int v = 0; v < V; ++v) k[v] = ka[v] + kb[v];
                out.add_to_coeff(k, ma * mb);
            }
        out.prune();
        return out;
    }

    MatPoly& operator*=(const S& s) {
        for (auto& [k, m] : terms_) m *= s;
        if (scalar_is_zero(s)) terms_.clear();
        return *this;
    }
    friend MatPoly operator*(MatPoly a, const S& s) { return a *= s; }
    friend MatPoly operator*(const S& s, MatPoly a) { return a *= s; }

    friend bool operator==(const MatPoly& a, const MatPoly& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.terms_ == b.terms_;
    }

    template <typename P>
    Matrix<P> eval(const std::array<P, V>& z) const {
        Matrix<P> out(rows_, cols_);
        for (const auto& [k, m] : terms_) {
            P w = scalar_from_long<P>(1);
            for (int v = 0; v < V; ++v) w *= scalar_ipow(z[v], k[v]);
            for (int r = 0; r < rows_; ++r)
                for (int c = 0; c < cols_; ++c) {
                    if constexpr (std::is_same_v<P, S>) {
                        out(r, c) += m(r, c) * w;
                    } else {
                        out(r, c) += scalar_to_complex(m(r, c)) * w;
                    }
                }
        }
        return out;
    }

    CMat eval_c(const std::array<Cplx, V>& z) const { return this->template eval<Cplx>(z); }

    /// Coefficient-wise conjugate transpose (the numerator move of breve:
    /// z^k coefficient of S(z̄)* is (z^k coefficient of S)*).
    MatPoly coeff_conj_transpose() const {
        MatPoly out(cols_, rows_);
        for (const auto& [k, m] : terms_) out.terms_[k] = m.conj_transpose();
        return out;
    }

    /// L(1/z̄)* computed coefficientwise: coeff k of the result is coeff(-k)*.
    MatPoly conj_reflect() const {
        MatPoly out(cols_, rows_);
        for (const auto& [k, m] : terms_) {
            Key nk;
            for (int v = 0; v < V; ++v) nk[v] = -k[v];
            out.terms_[nk] = m.conj_transpose();
        }
        return out;
    }

    /// Substitute z -> 1/z (no conjugation): coeff k moves to -k.
    MatPoly invert_vars() const {
        MatPoly out(rows_, cols_);
        for (const auto& [k, m] : terms_) {
            Key nk;
            for (int v = 0; v < V; ++v) nk[v] = -k[v];
            out.terms_[nk] = m;
        }
        return out;
    }

    MatPoly shifted(const Key& s) const {
        MatPoly out(rows_, cols_);
        for (const auto& [k, m] : terms_) {
            Key nk;
            for (int v = 0; v < V; ++v) nk[v] = k[v] + s[v];
            out.terms_[nk] = m;
        }
        return out;
    }

    MatPoly block(int r0, int c0, int nr, int nc) const {
        MatPoly out(nr, nc);
        for (const auto& [k, m] : terms_) out.set_coeff(k, m.block(r0, c0, nr, nc));
        return out;
    }

    template <typename F>
    auto map_coeffs(F&& f) const {
        using T = decltype(f(std::declval<const Matrix<S>&>()));
        MatPoly<typename std::decay_t<decltype(std::declval<T>()(0, 0))>, V> out(rows_, cols_);
        for (const auto& [k, m] : terms_) out.set_coeff(k, f(m));
        return out;
    }

    /// Laurent hermitian test: conj_reflect(L) == L.
    bool hermitian(double tol = 0.0) const {
        MatPoly d = conj_reflect() - *this;
        if constexpr (is_exact_field_v<S>)
            return d.is_zero();
        else
            return d.max_coeff_abs() <= tol * std::max(1.0, max_coeff_abs());
    }

private:
    int rows_, cols_;
    Coeffs terms_;
};

template <typename S>
using MatPoly1 = MatPoly<S, 1>;
template <typename S>
using LaurentMatPoly1 = MatPoly<S, 1>;
template <typename S>
using MatPoly2 = MatPoly<S, 2>;
template <typename S>
using LaurentMatPoly2 = MatPoly<S, 2>;

/// scalar poly times matrix poly (the 1x1 container is our scalar polynomial)
template <typename S, int V>
MatPoly<S, V> scalar_poly_mul(const MatPoly<S, V>& scalar, const MatPoly<S, V>& m) {
    require(scalar.rows() == 1 && scalar.cols() == 1, ErrorCode::DimensionMismatch,
            "scalar_poly_mul needs 1x1 left factor");
    MatPoly<S, V> out(m.rows(), m.cols());
    for (const auto& [ks, cs] : scalar.terms())
        for (const auto& [km, cm] : m.terms()) {
            Idx<V> k;
            for (int v = 0; v < V; ++v) k[v] = ks[v] + km[v];
            out.add_to_coeff(k, cm * cs(0, 0));
        }
    out.prune();
    return out;
}

template <typename S, int V>
MatPoly<S, V> poly_hstack(const MatPoly<S, V>& a, const MatPoly<S, V>& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "poly hstack");
    MatPoly<S, V> out(a.rows(), a.cols() + b.cols());
    for (const auto& [k, m] : a.terms()) {
        Matrix<S> wide = hstack(m, Matrix<S>::zero(a.rows(), b.cols()));
        out.add_to_coeff(k, wide);
    }
    for (const auto& [k, m] : b.terms()) {
        Matrix<S> wide = hstack(Matrix<S>::zero(a.rows(), a.cols()), m);
        out.add_to_coeff(k, wide);
    }
    return out;
}

template <typename S, int V>
MatPoly<S, V> poly_vstack(const MatPoly<S, V>& a, const MatPoly<S, V>& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    require(a.cols() == b.cols(), ErrorCode::DimensionMismatch, "poly vstack");
    MatPoly<S, V> out(a.rows() + b.rows(), a.cols());
    for (const auto& [k, m] : a.terms())
        out.add_to_coeff(k, vstack(m, Matrix<S>::zero(b.rows(), a.cols())));
    for (const auto& [k, m] : b.terms())
        out.add_to_coeff(k, vstack(Matrix<S>::zero(a.rows(), a.cols()), m));
    return out;
}

template <int V>
MatPoly<Cplx, V> poly_to_float(const MatPoly<GaussianRational, V>& p) {
    MatPoly<Cplx, V> out(p.rows(), p.cols());
    for (const auto& [k, m] : p.terms()) out.set_coeff(k, to_float(m));
    return out;
}

template <int V>
MatPoly<GaussianRational, V> poly_to_exact(const MatPoly<Cplx, V>& p) {
    MatPoly<GaussianRational, V> out(p.rows(), p.cols());
    for (const auto& [k, m] : p.terms()) out.set_coeff(k, to_exact(m));
    return out;
}

template <typename S, int V>
MatPoly<Cplx, V> poly_to_complex(const MatPoly<S, V>& p) {
    if constexpr (is_exact_field_v<S>)
        return poly_to_float(p);
    else
        return p;
}

/// Extract the coefficient of z1^j as a polynomial in z2 (V=2 -> V=1).
template <typename S>
MatPoly<S, 1> coeff_of_var(const MatPoly<S, 2>& p, int var, int j) {
    MatPoly<S, 1> out(p.rows(), p.cols());
    int other = 1 - var;
    for (const auto& [k, m] : p.terms())
        if (k[var] == j) out.add_to_coeff(Idx<1>{k[other]}, m);
    return out;
}

/// Promote a one-variable polynomial to two variables, placing its variable at `var`.
template <typename S>
MatPoly<S, 2> promote_var(const MatPoly<S, 1>& p, int var) {
    MatPoly<S, 2> out(p.rows(), p.cols());
    for (const auto& [k, m] : p.terms()) {
        Idx<2> k2{0, 0};
        k2[var] = k[0];
        out.set_coeff(k2, m);
    }
    return out;
}

template <typename S>
MatPoly<S, 2> swap_vars(const MatPoly<S, 2>& p) {
    MatPoly<S, 2> out(p.rows(), p.cols());
    for (const auto& [k, m] : p.terms()) out.set_coeff(Idx<2>{k[1], k[0]}, m);
    return out;
}

/// Block column (I, zI, ..., z^{n-1} I)^t of width N.
template <typename S>
MatPoly<S, 1> lambda_column(int n, int N) {
    MatPoly<S, 1> out(n * N, N);
    for (int j = 0; j < n; ++j) {
        Matrix<S> m = Matrix<S>::zero(n * N, N);
        m.set_block(j * N, 0, Matrix<S>::identity(N));
        out.set_coeff(Idx<1>{j}, m);
    }
    return out;
}

}  // namespace bidisk
