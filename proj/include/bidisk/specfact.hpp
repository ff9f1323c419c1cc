#pragma once

#include <optional>

#include "bidisk/poly_ops.hpp"
#include "bidisk/snf.hpp"

namespace bidisk {

inline constexpr double kTolFr = 1e-8;
inline constexpr double kTolRank = 1e-10;

// ---------------------------------------------------------------------------
// constant factorizations
// ---------------------------------------------------------------------------

/// T = F*F with F r x N, r = rank at tol_rank, rows ordered by descending
/// eigenvalue and phase-fixed (first nonzero entry real nonnegative).
inline CMat factor_constant_psd(const CMat& T, double tol_rank = kTolRank) {
    require(T.rows() == T.cols(), ErrorCode::NotSquare, "factor_constant_psd");
    const int n = T.rows();
    if (n == 0) return CMat(0, 0);
    auto eig = hermitian_eig(T);
    double scale = std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
    require(eig.values(0) >= -tol_rank * std::max(scale, 1e-300), ErrorCode::NotPSD,
            "matrix has a negative eigenvalue beyond tolerance");
    int r = 0;
    for (int i = 0; i < n; ++i)
        if (eig.values(i) > tol_rank * scale) ++r;
    CMat F(r, n);
    for (int i = 0; i < r; ++i) {
        int src = n - 1 - i;  // descending order
        double s = std::sqrt(std::max(eig.values(src), 0.0));
        for (int c = 0; c < n; ++c) F(i, c) = s * std::conj(eig.vectors(c, src));
        // deterministic phase: first significant entry becomes real >= 0
        double rowmax = 0.0;
        for (int c = 0; c < n; ++c) rowmax = std::max(rowmax, std::abs(F(i, c)));
        for (int c = 0; c < n; ++c) {
            if (std::abs(F(i, c)) > 1e-9 * rowmax) {
                Cplx ph = F(i, c) / std::abs(F(i, c));
                for (int cc = 0; cc < n; ++cc) F(i, cc) *= std::conj(ph);
                break;
            }
        }
    }
    return F;
}

/// Minimum-norm right inverse of a full-row-rank matrix.
inline CMat right_inverse_constant(const CMat& F, double tol_rank = kTolRank) {
    const int r = F.rows();
    if (r == 0) return CMat(F.cols(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(F),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    require(sv(r - 1) > tol_rank * std::max(sv(0), 1e-300), ErrorCode::RankDeficient,
            "matrix does not have full row rank");
    Eigen::VectorXd inv = sv;
    for (int i = 0; i < r; ++i) inv(i) = 1.0 / sv(i);
    Eigen::MatrixXcd B = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
    return from_eigen(B);
}

// ---------------------------------------------------------------------------
// full-rank spectral factorization (zero extraction + Bauer residue)
// ---------------------------------------------------------------------------

namespace detail {

using LaurentVec = std::map<int, Eigen::VectorXcd>;

inline LaurentVec laurent_column(const LaurentMatPoly1<Cplx>& T, const Eigen::VectorXcd& v) {
    LaurentVec u;
    for (const auto& [k, m] : T.terms()) u[k[0]] = to_eigen(m) * v;
    return u;
}
inline LaurentVec laurent_row(const LaurentMatPoly1<Cplx>& T, const Eigen::VectorXcd& v) {
    LaurentVec w;
    for (const auto& [k, m] : T.terms()) w[k[0]] = to_eigen(m).adjoint() * v;
    // w holds (v* T)(z) stored as column vectors of conjugates? no: keep as
    // the conjugated transpose: row(z)^t = T(z)^* v would conjugate z; do it
    // directly instead.
    w.clear();
    for (const auto& [k, m] : T.terms()) {
        Eigen::VectorXcd row(m.cols());
        Eigen::MatrixXcd em = to_eigen(m);
        row = em.transpose() * v.conjugate();  // entries of v* T_k as a column
        w[k[0]] = row;
    }
    return w;
}

/// u(z) = (z - zeta) q(z): exact synthetic division; returns |remainder|.
inline double divide_by_linear(const LaurentVec& u, Cplx zeta, LaurentVec& q) {
    q.clear();
    if (u.empty()) return 0.0;
    int lo = u.begin()->first, hi = u.rbegin()->first;
    int dim = int(u.begin()->second.size());
    auto get = [&](int k) -> Eigen::VectorXcd {
        auto it = u.find(k);
        return it == u.end() ? Eigen::VectorXcd::Zero(dim).eval() : it->second;
    };
    Eigen::VectorXcd qk = Eigen::VectorXcd::Zero(dim);
    for (int k = hi; k > lo; --k) {
        qk = get(k) + zeta * qk;  // q_{k-1}
        if (qk.norm() > 0) q[k - 1] = qk;
    }
    Eigen::VectorXcd rem = get(lo) + zeta * qk;
    return rem.norm();
}

/// w(z) = (z^{-1} - eta) s(z): synthetic division from below; returns |remainder|.
inline double divide_by_linear_inv(const LaurentVec& w, Cplx eta, LaurentVec& s) {
    s.clear();
    if (w.empty()) return 0.0;
    int lo = w.begin()->first, hi = w.rbegin()->first;
    int dim = int(w.begin()->second.size());
    auto get = [&](int k) -> Eigen::VectorXcd {
        auto it = w.find(k);
        return it == w.end() ? Eigen::VectorXcd::Zero(dim).eval() : it->second;
    };
    Eigen::VectorXcd sk = Eigen::VectorXcd::Zero(dim);
    for (int k = lo; k < hi; ++k) {
        sk = get(k) + eta * sk;  // s_{k+1}
        if (sk.norm() > 0) s[k + 1] = sk;
    }
    Eigen::VectorXcd rem = get(hi) + eta * sk;
    return rem.norm();
}

/// T += col * rowvec(v)^*, where col is a Laurent column.
inline void add_column_outer(LaurentMatPoly1<Cplx>& T, const LaurentVec& col,
                             const Eigen::VectorXcd& v) {
    const int N = T.rows();
    for (const auto& [k, u] : col) {
        CMat add(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) add(r, c) = u(r) * std::conj(v(c));
        T.add_to_coeff({k}, add);
    }
}

/// T += v * row, where row is a Laurent row stored as column-of-entries.
inline void add_row_outer(LaurentMatPoly1<Cplx>& T, const Eigen::VectorXcd& v,
                          const LaurentVec& row) {
    const int N = T.rows();
    for (const auto& [k, w] : row) {
        CMat add(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) add(r, c) = v(r) * w(c);
        T.add_to_coeff({k}, add);
    }
}

inline void hermitian_symmetrize(LaurentMatPoly1<Cplx>& T) {
    LaurentMatPoly1<Cplx> sym = T.conj_reflect();
    T += sym;
    T *= Cplx(0.5, 0.0);
}

inline Eigen::VectorXcd smallest_singular_vector(const CMat& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
    return svd.matrixV().col(m.cols() - 1);
}

struct ExtractionFactor {
    Eigen::VectorXcd v;
    Cplx point;      // zeta on the circle, or beta outside
    bool boundary;   // boundary: det E = (z - zeta); inside: det E = (1 - z/beta)

    MatPoly1<Cplx> as_poly() const {
        const int N = int(v.size());
        CMat vvs(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) vvs(r, c) = v(r) * std::conj(v(c));
        MatPoly1<Cplx> E(N, N);
        if (boundary) {
            CMat c0 = CMat::identity(N);
            c0 -= (Cplx(1.0) + point) * vvs;
            E.set_coeff({0}, c0);
            E.set_coeff({1}, vvs);
        } else {
            E.set_coeff({0}, CMat::identity(N));
            CMat c1 = vvs;
            c1 *= Cplx(-1.0) / point;
            E.set_coeff({1}, c1);
        }
        return E;
    }
};

/// One two-sided extraction step: T <- conj_reflect(E)^{-1} T E^{-1}.
/// `point` is zeta (boundary) or beta (outside partner of an inside root).
inline double extract_step(LaurentMatPoly1<Cplx>& T, const Eigen::VectorXcd& v, Cplx point,
                           bool boundary) {
    const Cplx c_col = boundary ? Cplx(1.0) : -point;       // phi^{-1} = c/(z - point)
    const Cplx eta = std::conj(point);
    const Cplx c_row = std::conj(c_col);

    double rem = 0.0;
    {   // column side: T += (c q - u) v*
        LaurentVec u = laurent_column(T, v);
        LaurentVec q;
        rem = std::max(rem, divide_by_linear(u, point, q));
        LaurentVec upd;
        for (auto& [k, vec] : q) upd[k] = c_col * vec;
        for (auto& [k, vec] : u) {
            auto it = upd.find(k);
            if (it == upd.end())
                upd[k] = -vec;
            else
                it->second -= vec;
        }
        add_column_outer(T, upd, v);
    }
    {   // row side: T += v (c̄ s - w)
        LaurentVec w = laurent_row(T, v);
        LaurentVec s;
        rem = std::max(rem, divide_by_linear_inv(w, eta, s));
        LaurentVec upd;
        for (auto& [k, vec] : s) upd[k] = c_row * vec;
        for (auto& [k, vec] : w) {
            auto it = upd.find(k);
            if (it == upd.end())
                upd[k] = -vec;
            else
                it->second -= vec;
        }
        add_row_outer(T, v, upd);
    }
    hermitian_symmetrize(T);
    return rem;
}

/// Bauer: block Cholesky of the Toeplitz sections S_{ij} = T_{j-i} until the
/// bottom row stabilizes; the stabilized row is the spectral factor.
inline MatPoly1<Cplx> bauer_factor(const LaurentMatPoly1<Cplx>& T, int m, double scale,
                                   int max_rows = 6000) {
    const int N = T.rows();
    std::vector<CMat> Tk(2 * m + 1, CMat(N, N));
    for (int k = -m; k <= m; ++k) Tk[k + m] = T.coeff({k});

    // ring buffer of the last m+1 rows; row i stores L_{i, i-m..i}
    std::vector<std::vector<Eigen::MatrixXcd>> rows(m + 1,
        std::vector<Eigen::MatrixXcd>(m + 1, Eigen::MatrixXcd::Zero(N, N)));
    auto rowslot = [&](int i) -> std::vector<Eigen::MatrixXcd>& { return rows[i % (m + 1)]; };
    auto getL = [&](int i, int j) -> const Eigen::MatrixXcd& {
        return rowslot(i)[j - (i - m)];
    };

    double tol = 1e-13 * std::max(1.0, std::sqrt(scale));
    int stable = 0;
    for (int i = 0; i < max_rows; ++i) {
        auto& cur = rowslot(i);
        for (auto& b : cur) b.setZero();
        for (int j = std::max(0, i - m); j <= i; ++j) {
            Eigen::MatrixXcd sum = to_eigen(Tk[(j - i) + m]);
            for (int k = std::max(0, i - m); k < j; ++k) {
                if (k < j - m) continue;
                sum -= getL(i, k) * getL(j, k).adjoint();
            }
            if (j < i) {
                // L_{i,j} = sum * L_{j,j}^{-*}
                Eigen::MatrixXcd ljj = getL(j, j);
                cur[j - (i - m)] =
                    ljj.adjoint().triangularView<Eigen::Upper>().solve(sum.adjoint()).adjoint();
            } else {
                Eigen::LLT<Eigen::MatrixXcd> llt((sum + sum.adjoint()) / 2.0);
                require(llt.info() == Eigen::Success, ErrorCode::NoConvergence,
                        "Toeplitz section not positive definite in Bauer iteration");
                cur[m] = llt.matrixL();
            }
        }
        if (i > m) {
            double diff = 0.0;
            for (int j = 0; j <= m && i - 1 - j >= 0; ++j)
                diff = std::max(diff, (getL(i, i - j) - getL(i - 1, i - 1 - j)).cwiseAbs().maxCoeff());
            if (diff < tol) {
                if (++stable >= 3) {
                    MatPoly1<Cplx> A(N, N);
                    for (int j = 0; j <= m && i - j >= 0; ++j)
                        A.set_coeff({j}, from_eigen(getL(i, i - j).adjoint().eval()));
                    A.prune();
                    return A;
                }
            } else {
                stable = 0;
            }
        }
    }
    fail(ErrorCode::NoConvergence, "Bauer iteration did not stabilize");
}

}  // namespace detail

struct SpectralFactorOptions {
    double tol_fr = kTolFr;
    double tol_root = kTolRoot;
    double boundary_band = 1e-6;   // |alpha| within this of 1 counts as boundary
    double inside_floor = 0.05;    // inside roots below this pair off with 0/inf
};

/// Square spectral factor of a full-rank PSD Laurent matrix polynomial:
/// conj_reflect(A0) * A0 = T0 on the circle, det A0 zero-free in the open
/// disk, A0(0) upper triangular with nonnegative real diagonal.
///
/// Determinant zeros in the annulus [inside_floor, 1] are removed one degree
/// at a time through null-vector extraction (boundary clusters split evenly),
/// which leaves a residue that is strictly positive on the circle; the
/// residue is factored by Bauer block-Toeplitz Cholesky, which stabilizes
/// fast precisely because no residue zero remains near the circle.
inline MatPoly1<Cplx> spectral_factor_full_rank(const LaurentMatPoly1<Cplx>& T0,
                                                const SpectralFactorOptions& opt = {}) {
    require(T0.rows() == T0.cols(), ErrorCode::NotSquare, "spectral factor input");
    const int N = T0.rows();
    if (N == 0) return MatPoly1<Cplx>(0, 0);
    const double scale = std::max(T0.max_coeff_abs(), 1e-300);

    LaurentMatPoly1<Cplx> T = T0;
    detail::hermitian_symmetrize(T);
    T.prune(1e-14);

    std::vector<detail::ExtractionFactor> factors;
    const int m0 = T.half_degree();
    const int max_steps = 2 * m0 * N + 8;

    for (int step = 0; step < max_steps; ++step) {
        T.prune(1e-13);
        int m = T.half_degree();
        if (m == 0) break;

        MatPoly1<Cplx> Tpoly = T.shifted({m});
        std::vector<Cplx> D = det_poly(Tpoly);
        double dmax = 0.0;
        for (const Cplx& d : D) dmax = std::max(dmax, std::abs(d));
        require(dmax > 1e-13 * std::pow(scale, N), ErrorCode::SingularDeterminant,
                "determinant vanishes identically; compress first");
        std::vector<Cplx> roots = poly_roots(D);

        std::vector<Cplx> boundary, inside;
        for (const Cplx& a : roots) {
            double r = std::abs(a);
            if (std::abs(r - 1.0) <= opt.boundary_band)
                boundary.push_back(a);
            else if (r >= opt.inside_floor && r < 1.0)
                inside.push_back(a);
        }

        if (!boundary.empty()) {
            // greedy clustering at relative radius boundary_band
            std::vector<std::vector<Cplx>> clusters;
            std::vector<bool> used(boundary.size(), false);
            for (std::size_t i = 0; i < boundary.size(); ++i) {
                if (used[i]) continue;
                std::vector<Cplx> cl{boundary[i]};
                used[i] = true;
                for (std::size_t j = i + 1; j < boundary.size(); ++j)
                    if (!used[j] && std::abs(boundary[j] - boundary[i]) <= 4.0 * opt.boundary_band) {
                        cl.push_back(boundary[j]);
                        used[j] = true;
                    }
                clusters.push_back(std::move(cl));
            }
            for (const auto& cl : clusters)
                require(cl.size() % 2 == 0, ErrorCode::NoConvergence,
                        "boundary determinant zero with odd multiplicity (input not PSD on "
                        "the circle beyond tolerance)");
            Cplx mean(0.0);
            for (const Cplx& a : clusters[0]) mean += a;
            Cplx zeta = mean / std::abs(mean);
            Eigen::VectorXcd v = detail::smallest_singular_vector(T.eval_c({zeta}));
            detail::extract_step(T, v, zeta, /*boundary=*/true);
            factors.push_back({v, zeta, true});
            continue;
        }
        if (!inside.empty()) {
            std::size_t pick = 0;
            for (std::size_t i = 1; i < inside.size(); ++i)
                if (std::abs(inside[i]) > std::abs(inside[pick])) pick = i;
            Cplx beta = Cplx(1.0) / std::conj(inside[pick]);
            Eigen::VectorXcd v = detail::smallest_singular_vector(T.eval_c({beta}));
            detail::extract_step(T, v, beta, /*boundary=*/false);
            factors.push_back({v, beta, false});
            continue;
        }
        break;  // residue: remaining det zeros sit near 0/infinity only
    }

    // residue factorization
    MatPoly1<Cplx> A;
    int mres = T.half_degree();
    if (mres == 0) {
        CMat c = T.coeff({0});
        Eigen::LLT<Eigen::MatrixXcd> llt((to_eigen(c) + to_eigen(c).adjoint()) / 2.0);
        require(llt.info() == Eigen::Success, ErrorCode::NoConvergence,
                "constant residue not positive definite");
        A = MatPoly1<Cplx>::constant(from_eigen(Eigen::MatrixXcd(llt.matrixL()).adjoint().eval()));
    } else {
        A = detail::bauer_factor(T, mres, scale);
    }

    for (std::size_t i = factors.size(); i-- > 0;) A = A * factors[i].as_poly();
    A.prune(1e-12);

    // quotient out the constant-unitary freedom: A(0) upper triangular,
    // nonnegative real diagonal
    {
        Eigen::MatrixXcd a0 = to_eigen(A.eval_c({Cplx(0.0)}));
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a0);
        Eigen::MatrixXcd Q = qr.householderQ();
        Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
        Eigen::VectorXcd ph(N);
        for (int i = 0; i < N; ++i) {
            Cplx d = R(i, i);
            ph(i) = (d == Cplx(0.0)) ? Cplx(1.0) : d / std::abs(d);
        }
        Eigen::MatrixXcd W = (Q * ph.asDiagonal()).adjoint();
        MatPoly1<Cplx> Wp = MatPoly1<Cplx>::constant(from_eigen(W));
        A = Wp * A;
    }

    // contract checks: residual on the circle and no det roots in the disk
    double resid = 0.0;
    for (int s = 0; s < 128; ++s) {
        double th = 2.0 * M_PI * (s + 0.25) / 128;
        Cplx z(std::cos(th), std::sin(th));
        CMat az = A.eval_c({z});
        resid = std::max(resid, (az.conj_transpose() * az - T0.eval_c({z})).max_abs());
    }
    require(resid <= 10.0 * opt.tol_fr * scale, ErrorCode::NoConvergence,
            "factor residual " + std::to_string(resid) + " exceeds tolerance");
    for (const Cplx& root : poly_roots(det_poly(A)))
        require(std::abs(root) >= 1.0 - opt.tol_root, ErrorCode::NoConvergence,
                "det of factor has a root inside the disk");
    return A;
}

// ---------------------------------------------------------------------------
// degenerate compression via Smith normal form
// ---------------------------------------------------------------------------

template <typename S>
struct Compression {
    LaurentMatPoly1<S> T0;                  // r x r core, det not identically zero
    MatPoly1<GaussianRational> V, V_inv;    // unimodular compressor (T2 of the SNF)
    int r = 0;
    bool trivial = false;                   // full-rank shortcut: V = I, T0 = T
};

namespace detail {

inline GaussianRational rational_circle_point(int t_num, int t_den) {
    GaussianRational t(t_num, t_den);
    GaussianRational one(1);
    GaussianRational t2 = t * t;
    GaussianRational den = one + t2;
    GaussianRational re = (one - t2) / den;
    GaussianRational im = (GaussianRational(2) * t) / den;
    return GaussianRational(re.re(), im.re());
}

inline void check_psd_on_circle(const LaurentMatPoly1<Cplx>& T, double tol) {
    double scale = std::max(T.max_coeff_abs(), 1e-300);
    for (int s = 0; s < 64; ++s) {
        double th = 2.0 * M_PI * (s + 0.125) / 64;
        Cplx z(std::cos(th), std::sin(th));
        require(min_eig_hermitian(T.eval_c({z})) >= -tol * scale, ErrorCode::NotPSDOnCircle,
                "matrix polynomial is not PSD on the circle");
    }
}

}  // namespace detail

/// SNF compression of a hermitian PSD Laurent polynomial to its full-rank
/// core: conj_reflect(V^{-1}) T V^{-1} = diag(T0, 0) exactly.
inline Compression<GaussianRational> compress_degenerate(
    const LaurentMatPoly1<GaussianRational>& T) {
    require(T.rows() == T.cols(), ErrorCode::NotSquare, "compress_degenerate");
    const int N = T.rows();
    require(T.hermitian(), ErrorCode::NotHermitian, "input is not hermitian as a Laurent polynomial");
    detail::check_psd_on_circle(poly_to_float(T), 1e-9);

    Compression<GaussianRational> out;
    // full-rank shortcut: exact determinant at a rational circle point
    GaussianRational z0 = detail::rational_circle_point(3, 7);
    if (!exact_det(T.eval<GaussianRational>({z0})).is_zero()) {
        out.T0 = T;
        out.V = MatPoly1<GaussianRational>::identity(N);
        out.V_inv = out.V;
        out.r = N;
        out.trivial = true;
        return out;
    }

    int shift = std::max(0, -T.min_deg());
    auto snf = smith_normal_form(T.shifted({shift}));
    out.r = snf.rank;
    out.V = snf.T2;
    out.V_inv = snf.T2_inv;

    MatPoly1<GaussianRational> M = snf.T2_inv.conj_reflect() * T * snf.T2_inv;
    // exact zero blocks outside the r x r core
    for (const auto& [k, m] : M.terms())
        for (int r_ = 0; r_ < N; ++r_)
            for (int c = 0; c < N; ++c)
                require((r_ < out.r && c < out.r) || m(r_, c).is_zero(), ErrorCode::BadInput,
                        "compression block structure violated (internal)");
    out.T0 = M.block(0, 0, out.r, out.r);

    bool det_nonzero = false;
    for (int t = 2; t <= 11 && !det_nonzero; ++t)
        det_nonzero = !exact_det(out.T0.eval<GaussianRational>(
                                     {detail::rational_circle_point(t, t + 10)}))
                           .is_zero();
    require(det_nonzero || out.r == 0, ErrorCode::BadInput,
            "compressed core still degenerate (internal)");
    return out;
}

/// Float path: only the full-rank shortcut is available; a numerically
/// vanishing determinant needs exact input (the SNF rank decision is not
/// float-stable).
inline Compression<Cplx> compress_degenerate(const LaurentMatPoly1<Cplx>& T) {
    require(T.rows() == T.cols(), ErrorCode::NotSquare, "compress_degenerate");
    const int N = T.rows();
    double scale = std::max(T.max_coeff_abs(), 1e-300);
    require(T.hermitian(1e-8), ErrorCode::NotHermitian,
            "input is not hermitian as a Laurent polynomial");
    detail::check_psd_on_circle(T, 1e-8);

    double dmax = 0.0;
    for (int s = 0; s < 9; ++s) {
        double th = 2.0 * M_PI * (s + 0.4) / 9;
        Cplx z(std::cos(th), std::sin(th));
        dmax = std::max(dmax,
                        std::abs(to_eigen(T.eval_c({z})).partialPivLu().determinant()));
    }
    require(dmax > 1e-10 * std::pow(scale, N), ErrorCode::ExactRequired,
            "determinant numerically vanishes; degenerate factorization needs exact input");
    Compression<Cplx> out;
    out.T0 = T;
    out.V = MatPoly1<GaussianRational>::identity(N);
    out.V_inv = out.V;
    out.r = N;
    out.trivial = true;
    return out;
}

// ---------------------------------------------------------------------------
// Fejer-Riesz assembly
// ---------------------------------------------------------------------------

/// T = A*A on the circle with A = (A0 0) V of degree <= n, plus the rational
/// right inverse B = V^{-1} (adj A0 / det A0 ; 0), analytic in the open disk.
struct FRFactor {
    MatPoly1<Cplx> A;       // r x N
    MatPoly1<Cplx> B_num;   // N x r
    MatPoly1<Cplx> B_den;   // scalar: det A0
    MatPoly1<Cplx> A0;      // r x r full-rank core factor
    int r = 0;
    std::optional<MatPoly1<GaussianRational>> V;  // exact compressor when the SNF path ran
};

namespace detail {

template <typename S>
FRFactor fejer_riesz_impl(const LaurentMatPoly1<S>& T, const SpectralFactorOptions& opt) {
    const int N = T.cols();
    auto comp = compress_degenerate(T);
    LaurentMatPoly1<Cplx> core = poly_to_complex(comp.T0);

    FRFactor out;
    out.r = comp.r;
    if (!comp.trivial) out.V = comp.V;
    out.A0 = comp.r == 0 ? MatPoly1<Cplx>(0, 0) : spectral_factor_full_rank(core, opt);

    MatPoly1<Cplx> Vf = poly_to_float(comp.V);
    MatPoly1<Cplx> Vinvf = poly_to_float(comp.V_inv);

    MatPoly1<Cplx> wide = poly_hstack(out.A0, MatPoly1<Cplx>::zero(out.r, N - comp.r));
    out.A = wide * Vf;
    out.A.prune(1e-12);

    MatPoly1<Cplx> adj = adjugate_poly(out.A0);
    std::vector<Cplx> detc = det_poly(out.A0);
    MatPoly1<Cplx> den(1, 1);
    for (int k = 0; k < int(detc.size()); ++k)
        if (detc[k] != Cplx(0.0)) den.set_coeff({k}, CMat(1, 1, {detc[k]}));
    out.B_den = den;
    out.B_num = Vinvf * poly_vstack(adj, MatPoly1<Cplx>::zero(N - comp.r, comp.r));
    out.B_num.prune(1e-13);

    int n = T.half_degree();
    // junk above the guaranteed degree bound is interpolation noise
    while (out.A.max_deg(0) > n) {
        int top = out.A.max_deg(0);
        require(out.A.coeff({top}).max_abs() < 1e-7 * std::max(1.0, out.A.max_coeff_abs()),
                ErrorCode::NoConvergence, "factor degree exceeds the half-degree bound");
        out.A.set_coeff({top}, CMat::zero(out.r, N));
    }
    return out;
}

}  // namespace detail

inline FRFactor fejer_riesz(const LaurentMatPoly1<GaussianRational>& T,
                            const SpectralFactorOptions& opt = {}) {
    return detail::fejer_riesz_impl(T, opt);
}
inline FRFactor fejer_riesz(const LaurentMatPoly1<Cplx>& T, const SpectralFactorOptions& opt = {}) {
    return detail::fejer_riesz_impl(T, opt);
}

// ---------------------------------------------------------------------------
// factor comparison (uniqueness up to iso-inner left factor)
// ---------------------------------------------------------------------------

struct CompareFactorsResult {
    RationalMatrixFunction<Cplx, 1> Phi;  // C = Phi * A, Phi = C * B
    bool constant_unitary = false;
    CMat constant_value;                  // meaningful when constant_unitary
    double isoinner_residual = 0.0;
    double identity_residual = 0.0;
};

/// Given factors with equal Gram data on the circle (A carrying a right
/// inverse), produce the iso-inner quotient Phi = C * B and verify C = Phi A.
inline CompareFactorsResult compare_factors(const MatPoly1<Cplx>& A, const MatPoly1<Cplx>& B_num,
                                            const MatPoly1<Cplx>& B_den, const MatPoly1<Cplx>& C,
                                            double tol = 1e-8) {
    double scale = std::max({A.max_coeff_abs(), C.max_coeff_abs(), 1.0});
    for (int s = 0; s < 64; ++s) {
        double th = 2.0 * M_PI * (s + 0.3) / 64;
        Cplx z(std::cos(th), std::sin(th));
        CMat az = A.eval_c({z});
        CMat cz = C.eval_c({z});
        double d = (az.conj_transpose() * az - cz.conj_transpose() * cz).max_abs();
        require(d <= 100.0 * tol * scale * scale, ErrorCode::MismatchedGram,
                "factors do not share Gram data on the circle");
    }

    CompareFactorsResult out;
    out.Phi = RationalMatrixFunction<Cplx, 1>(C * B_num, B_den);

    std::vector<CMat> values;
    double den_scale = B_den.max_coeff_abs();
    for (int s = 0; s < 64; ++s) {
        double th = 2.0 * M_PI * (s + 0.7) / 64;
        Cplx z(std::cos(th), std::sin(th));
        if (std::abs(B_den.eval_c({z})(0, 0)) < 1e-6 * std::max(den_scale, 1e-300)) continue;
        CMat phi = eval_rational_c(out.Phi, {z});
        values.push_back(phi);
        out.isoinner_residual = std::max(
            out.isoinner_residual,
            (phi.conj_transpose() * phi - CMat::identity(phi.cols())).max_abs());
        out.identity_residual =
            std::max(out.identity_residual, (C.eval_c({z}) - phi * A.eval_c({z})).max_abs());
    }
    require(!values.empty(), ErrorCode::BadInput, "no admissible circle samples for Phi");

    CMat mean(values[0].rows(), values[0].cols());
    for (const CMat& v : values) mean += v;
    mean *= Cplx(1.0 / double(values.size()), 0.0);
    double dev = 0.0;
    for (const CMat& v : values) dev = std::max(dev, (v - mean).max_abs());
    if (dev <= tol && out.Phi.rows() == out.Phi.cols()) {
        CMat mm = mean.conj_transpose() * mean;
        if ((mm - CMat::identity(mean.cols())).max_abs() <= 10 * tol) {
            out.constant_unitary = true;
            out.constant_value = mean;
        }
    }
    return out;
}

inline CompareFactorsResult compare_factors(const FRFactor& fr, const MatPoly1<Cplx>& C,
                                            double tol = 1e-8) {
    return compare_factors(fr.A, fr.B_num, fr.B_den, C, tol);
}

}  // namespace bidisk
