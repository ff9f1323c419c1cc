#pragma once

#include "bidisk/kernel.hpp"
#include "bidisk/numeric.hpp"

namespace bidisk {

inline constexpr double kTolRoot = 1e-8;

/// Sampling-based certificate: no certified statement is made between the
/// sampled slices.
struct SliceStabilityReport {
    bool pass = false;
    double min_root_modulus = 0.0;   // over both sweep directions
    double min_root_modulus_var1 = 0.0;  // roots in z1 for sampled z2
    double min_root_modulus_var2 = 0.0;
    int samples = 0;
    bool sampling_based = true;
};

namespace detail {

inline double min_slice_root_modulus(const MatPoly2<Cplx>& p, int var, int m) {
    const int other = 1 - var;
    // A direction the polynomial does not involve imposes no constraint.
    if (p.max_deg(var) == 0 && p.min_deg(var) == 0) return 1e18;
    double best = 1e18;
    double scale = p.max_coeff_abs();
    for (int s = 0; s < m; ++s) {
        // offset keeps lattice points like z = 1 out of the sample set
        double th = 2.0 * M_PI * (s + 0.5) / m;
        Cplx tau(std::cos(th), std::sin(th));
        // coefficients of the univariate slice in `var`
        int dmax = p.max_deg(var);
        std::vector<Cplx> c(std::size_t(dmax) + 1, Cplx(0.0));
        for (const auto& [k, mat] : p.terms())
            c[k[var]] += mat(0, 0) * scalar_ipow(tau, k[other]);
        double cmax = 0.0;
        for (const Cplx& v : c) cmax = std::max(cmax, std::abs(v));
        require(cmax > 1e-12 * std::max(1.0, scale), ErrorCode::DegenerateSlice,
                "slice is identically zero; input has a common factor");
        for (const Cplx& r : poly_roots(c)) best = std::min(best, std::abs(r));
    }
    return best;
}

}  // namespace detail

/// Checks that no sampled slice of p has a root inside the open unit disk
/// (boundary roots allowed). Throws DegenerateSlice when a slice vanishes
/// identically, which signals a common factor of the input pair.
inline SliceStabilityReport slice_stability_check(const MatPoly2<Cplx>& p, int m = 16,
                                                  double tol_root = kTolRoot) {
    require(p.rows() == 1 && p.cols() == 1, ErrorCode::DimensionMismatch,
            "slice check expects a scalar polynomial");
    require(!p.is_zero(), ErrorCode::BadInput, "slice check on the zero polynomial");
    SliceStabilityReport rep;
    rep.samples = m;
    rep.min_root_modulus_var1 = detail::min_slice_root_modulus(p, 0, m);
    rep.min_root_modulus_var2 = detail::min_slice_root_modulus(p, 1, m);
    rep.min_root_modulus = std::min(rep.min_root_modulus_var1, rep.min_root_modulus_var2);
    rep.pass = rep.min_root_modulus >= 1.0 - tol_root;
    return rep;
}

inline SliceStabilityReport slice_stability_check(const MatPoly2<GaussianRational>& p, int m = 16,
                                                  double tol_root = kTolRoot) {
    return slice_stability_check(poly_to_float(p), m, tol_root);
}

/// Roots of a univariate scalar polynomial given as a 1x1 MatPoly.
inline std::vector<Cplx> scalar_poly_roots(const MatPoly1<Cplx>& p) {
    require(p.rows() == 1 && p.cols() == 1, ErrorCode::DimensionMismatch, "scalar poly expected");
    require(p.is_polynomial(), ErrorCode::BadInput, "scalar_poly_roots needs polynomial support");
    std::vector<Cplx> c(std::size_t(std::max(0, p.max_deg(0))) + 1, Cplx(0.0));
    for (const auto& [k, m] : p.terms()) c[k[0]] = m(0, 0);
    return poly_roots(c);
}

}  // namespace bidisk
