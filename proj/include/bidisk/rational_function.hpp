#pragma once

#include "bidisk/matpoly.hpp"

namespace bidisk {

/// Pair (Q, p): matrix-polynomial numerator over a scalar-polynomial
/// denominator, in V variables. Lowest terms are asserted by the caller,
/// never computed (bivariate GCD is a non-goal); the flag records that.
template <typename S, int V>
struct RationalMatrixFunction {
    MatPoly<S, V> num;  // Q
    MatPoly<S, V> den;  // p, stored 1x1
    bool lowest_terms_asserted = false;

    RationalMatrixFunction() = default;
    RationalMatrixFunction(MatPoly<S, V> q, MatPoly<S, V> p, bool lowest = false)
        : num(std::move(q)), den(std::move(p)), lowest_terms_asserted(lowest) {
        require(den.rows() == 1 && den.cols() == 1, ErrorCode::DimensionMismatch,
                "denominator must be scalar");
        require(!den.is_zero(), ErrorCode::DenominatorZero, "denominator identically zero");
    }

    static RationalMatrixFunction polynomial(MatPoly<S, V> q) {
        return RationalMatrixFunction(std::move(q),
                                      MatPoly<S, V>::monomial(scalar_from_long<S>(1), Idx<V>{}),
                                      true);
    }

    int rows() const { return num.rows(); }
    int cols() const { return num.cols(); }
    bool is_polynomial_function() const {
        return den.terms().size() == 1 && den.terms().begin()->first == Idx<V>{};
    }

    /// Per-variable degree of the representation (n1 of the construction).
    int var_degree(int var) const { return std::max(num.max_deg(var), den.max_deg(var)); }
};

template <typename S, int V, typename P>
Matrix<P> eval_rational(const RationalMatrixFunction<S, V>& f,
                        const std::type_identity_t<std::array<P, std::size_t(V)>>& z,
                        double tol_den = 1e-14) {
    Matrix<P> d = f.den.template eval<P>(z);
    const P dv = d(0, 0);
    if constexpr (std::is_same_v<P, GaussianRational>) {
        require(!dv.is_zero(), ErrorCode::DenominatorZero, "denominator vanishes at point");
    } else {
        require(std::abs(dv) > tol_den * std::max(1.0, f.den.max_coeff_abs()),
                ErrorCode::DenominatorZero, "denominator vanishes at point");
    }
    Matrix<P> n = f.num.template eval<P>(z);
    P inv = scalar_from_long<P>(1) / dv;
    return n * inv;
}

template <typename S, int V>
CMat eval_rational_c(const RationalMatrixFunction<S, V>& f,
                     const std::type_identity_t<std::array<Cplx, std::size_t(V)>>& z) {
    return eval_rational<S, V, Cplx>(f, z);
}

/// S̆(z) = S(z̄)^*: numerator coefficients conjugate-transposed in place,
/// denominator coefficients conjugated.
template <typename S, int V>
RationalMatrixFunction<S, V> breve(const RationalMatrixFunction<S, V>& f) {
    return RationalMatrixFunction<S, V>(f.num.coeff_conj_transpose(), f.den.coeff_conj_transpose(),
                                        f.lowest_terms_asserted);
}

template <int V>
RationalMatrixFunction<Cplx, V> rational_to_float(
    const RationalMatrixFunction<GaussianRational, V>& f) {
    return RationalMatrixFunction<Cplx, V>(poly_to_float(f.num), poly_to_float(f.den),
                                           f.lowest_terms_asserted);
}

template <typename S, int V>
RationalMatrixFunction<Cplx, V> rational_to_complex(const RationalMatrixFunction<S, V>& f) {
    if constexpr (is_exact_field_v<S>)
        return rational_to_float(f);
    else
        return f;
}

}  // namespace bidisk
