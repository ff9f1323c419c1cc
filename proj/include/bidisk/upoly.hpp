#pragma once

#include <vector>

#include "bidisk/matpoly.hpp"

namespace bidisk {

/// Dense univariate polynomial over an exact field; the working element of
/// the Smith-normal-form reduction. c[k] is the z^k coefficient.
template <typename S>
struct UPoly {
    std::vector<S> c;

    UPoly() = default;
    explicit UPoly(std::vector<S> coeffs) : c(std::move(coeffs)) { trim(); }
    static UPoly constant(const S& v) {
        UPoly p;
        if (!scalar_is_zero(v)) p.c = {v};
        return p;
    }
    static UPoly one() { return constant(scalar_from_long<S>(1)); }

    void trim() {
        while (!c.empty() && scalar_is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }  // -1 for the zero polynomial
    const S& leading() const { return c.back(); }

    S coeff(int k) const { return (k >= 0 && k < int(c.size())) ? c[k] : S(); }

    UPoly operator-() const {
        UPoly out = *this;
        for (S& v : out.c) v = S() - v;
        return out;
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly out;
        out.c.resize(std::max(a.c.size(), b.c.size()), S());
        for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
        out.trim();
        return out;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        UPoly out;
        out.c.assign(a.c.size() + b.c.size() - 1, S());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (scalar_is_zero(a.c[i])) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
        }
        out.trim();
        return out;
    }
    friend UPoly operator*(const UPoly& a, const S& s) {
        UPoly out = a;
        for (S& v : out.c) v *= s;
        out.trim();
        return out;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        require(!d.is_zero(), ErrorCode::DenominatorZero, "polynomial division by zero");
        UPoly r = *this;
        UPoly q;
        if (r.degree() >= d.degree()) q.c.assign(r.degree() - d.degree() + 1, S());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            S f = r.leading() / d.leading();
            q.c[shift] = f;
            for (int i = 0; i <= d.degree(); ++i) r.c[shift + i] -= f * d.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    bool divides(const UPoly& other) const { return other.divmod(*this).second.is_zero(); }
};

using QPoly = UPoly<GaussianRational>;

inline mpz_class upoly_height(const QPoly& p) {
    mpz_class h = 0;
    for (const auto& v : p.c) {
        mpz_class hv = v.height();
        if (hv > h) h = hv;
    }
    return h;
}

/// dense <-> sparse bridges (scalar 1x1 MatPoly is the library's scalar poly)
template <typename S>
UPoly<S> upoly_from_scalar_poly(const MatPoly1<S>& p) {
    require(p.rows() == 1 && p.cols() == 1, ErrorCode::DimensionMismatch, "scalar poly expected");
    require(p.is_polynomial(), ErrorCode::BadInput, "negative exponents in plain polynomial");
    UPoly<S> out;
    out.c.assign(std::size_t(std::max(0, p.max_deg(0))) + 1, S());
    for (const auto& [k, m] : p.terms()) out.c[k[0]] = m(0, 0);
    out.trim();
    return out;
}

template <typename S>
MatPoly1<S> scalar_poly_from_upoly(const UPoly<S>& p) {
    MatPoly1<S> out(1, 1);
    for (int k = 0; k < int(p.c.size()); ++k) {
        if (scalar_is_zero(p.c[k])) continue;
        Matrix<S> m(1, 1);
        m(0, 0) = p.c[k];
        out.set_coeff({k}, m);
    }
    return out;
}

template <typename S>
std::vector<std::vector<UPoly<S>>> upoly_matrix_from_matpoly(const MatPoly1<S>& P) {
    require(P.is_polynomial(), ErrorCode::BadInput, "negative exponents in polynomial matrix");
    std::vector<std::vector<UPoly<S>>> out(P.rows(), std::vector<UPoly<S>>(P.cols()));
    for (const auto& [k, m] : P.terms())
        for (int r = 0; r < P.rows(); ++r)
            for (int c = 0; c < P.cols(); ++c) {
                if (scalar_is_zero(m(r, c))) continue;
                auto& p = out[r][c].c;
                if (int(p.size()) <= k[0]) p.resize(k[0] + 1, S());
                p[k[0]] = m(r, c);
            }
    for (auto& row : out)
        for (auto& p : row) p.trim();
    return out;
}

template <typename S>
MatPoly1<S> matpoly_from_upoly_matrix(const std::vector<std::vector<UPoly<S>>>& M) {
    int rows = int(M.size());
    int cols = rows ? int(M[0].size()) : 0;
    MatPoly1<S> out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            for (int k = 0; k < int(M[r][c].c.size()); ++k) {
                if (scalar_is_zero(M[r][c].c[k])) continue;
                Matrix<S> m = out.coeff({k});
                m(r, c) = M[r][c].c[k];
                out.set_coeff({k}, m);
            }
    return out;
}

}  // namespace bidisk
