#pragma once

#include <Eigen/Eigenvalues>
#include <random>

#include "bidisk/matpoly.hpp"

namespace bidisk {

// ---------------------------------------------------------------------------
// dense univariate complex polynomials (root finding, interpolation)
// ---------------------------------------------------------------------------

/// Trim trailing coefficients below rel * max|c|.
inline std::vector<Cplx> trim_poly(std::vector<Cplx> c, double rel = 1e-12) {
    double scale = 0.0;
    for (const Cplx& v : c) scale = std::max(scale, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= rel * scale) c.pop_back();
    return c;
}

inline Cplx eval_poly(const std::vector<Cplx>& c, Cplx z) {
    Cplx acc(0.0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

namespace detail {

/// Parlett-Reinsch balancing, base 2.
inline void balance_matrix(Eigen::MatrixXcd& a) {
    const int n = int(a.rows());
    bool converged = false;
    int guard = 0;
    while (!converged && guard++ < 100) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
}

}  // namespace detail

/// All roots of the polynomial c[0] + c[1] z + ... (companion-matrix
/// eigenvalues with balancing). Leading/trailing handling is the caller's job.
inline std::vector<Cplx> poly_roots(std::vector<Cplx> c) {
    c = trim_poly(std::move(c));
    if (c.size() <= 1) return {};
    const int d = int(c.size()) - 1;
    if (d == 1) return {-c[0] / c[1]};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
    detail::balance_matrix(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Cplx> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

// ---------------------------------------------------------------------------
// interpolation of matrix polynomials from circle samples
// ---------------------------------------------------------------------------

/// Nodes rho * e^{i(2 pi j / K + offset)}, j = 0..K-1.
inline std::vector<Cplx> circle_nodes(int K, double rho = 1.0, double offset = 0.5) {
    std::vector<Cplx> z(K);
    for (int j = 0; j < K; ++j) {
        double th = 2.0 * M_PI * j / K + offset;
        z[j] = rho * Cplx(std::cos(th), std::sin(th));
    }
    return z;
}

/// Recover polynomial coefficients (degree <= K-1) from samples on circle_nodes.
inline std::vector<Cplx> poly_from_circle_samples(const std::vector<Cplx>& values, double rho,
                                                  double offset) {
    const int K = int(values.size());
    std::vector<Cplx> c(K, Cplx(0.0));
    for (int k = 0; k < K; ++k) {
        Cplx acc(0.0);
        for (int j = 0; j < K; ++j) {
            double th = -(2.0 * M_PI * j / K + offset) * k;
            acc += values[j] * Cplx(std::cos(th), std::sin(th));
        }
        c[k] = acc / (double(K) * std::pow(rho, k));
    }
    return c;
}

/// det of a one-variable matrix polynomial (must have nonnegative support),
/// via interpolation at deg*N+1 circle nodes.
inline std::vector<Cplx> det_poly(const MatPoly1<Cplx>& P) {
    require(P.rows() == P.cols(), ErrorCode::NotSquare, "det_poly");
    require(P.is_polynomial(), ErrorCode::BadInput, "det_poly needs polynomial support");
    const int N = P.rows();
    if (N == 0) return {Cplx(1.0)};
    const int K = N * std::max(0, P.max_deg(0)) + 1;
    const double rho = 1.0, offset = 0.5;
    auto nodes = circle_nodes(K, rho, offset);
    std::vector<Cplx> vals(K);
    for (int j = 0; j < K; ++j)
        vals[j] = to_eigen(P.eval_c({nodes[j]})).partialPivLu().determinant();
    return trim_poly(poly_from_circle_samples(vals, rho, offset));
}

/// Adjugate of a square one-variable matrix polynomial, entry by entry from
/// cofactor determinants (no divisions, so node singularity is harmless).
inline MatPoly1<Cplx> adjugate_poly(const MatPoly1<Cplx>& P) {
    require(P.rows() == P.cols(), ErrorCode::NotSquare, "adjugate_poly");
    const int N = P.rows();
    if (N == 0) return MatPoly1<Cplx>(0, 0);
    if (N == 1) return MatPoly1<Cplx>::identity(1);
    const int d = std::max(0, P.max_deg(0));
    const int K = (N - 1) * d + 1;
    const double rho = 1.0, offset = 0.5;
    auto nodes = circle_nodes(K, rho, offset);
    std::vector<Eigen::MatrixXcd> evals(K);
    for (int j = 0; j < K; ++j) evals[j] = to_eigen(P.eval_c({nodes[j]}));
    MatPoly1<Cplx> out(N, N);
    Eigen::MatrixXcd minor(N - 1, N - 1);
    std::vector<Cplx> vals(K);
    for (int i = 0; i < N; ++i)
        for (int jj = 0; jj < N; ++jj) {
            // adj(i, jj) = (-1)^{i+jj} det of P with row jj, column i removed
            for (int t = 0; t < K; ++t) {
                const Eigen::MatrixXcd& M = evals[t];
                int rr = 0;
                for (int r = 0; r < N; ++r) {
                    if (r == jj) continue;
                    int cc = 0;
                    for (int c = 0; c < N; ++c) {
                        if (c == i) continue;
                        minor(rr, cc) = M(r, c);
                        ++cc;
                    }
                    ++rr;
                }
                Cplx dm = minor.rows() == 0 ? Cplx(1.0) : minor.partialPivLu().determinant();
                vals[t] = (((i + jj) % 2) ? -dm : dm);
            }
            auto coef = trim_poly(poly_from_circle_samples(vals, rho, offset));
            for (int k = 0; k < int(coef.size()); ++k) {
                if (coef[k] == Cplx(0.0)) continue;
                CMat cm = out.coeff({k});
                cm(i, jj) = coef[k];
                out.set_coeff({k}, cm);
            }
        }
    out.prune();
    return out;
}

/// Reconstruct an (r x c) matrix polynomial in two variables of degrees
/// <= (d1, d2) from values at the tensor grid of scaled circle nodes.
template <typename F>
MatPoly2<Cplx> matpoly2_from_samples(int rows, int cols, int d1, int d2, F&& f, double rho1 = 0.7,
                                     double rho2 = 0.7, double off1 = 0.3, double off2 = 0.9) {
    const int K1 = d1 + 1, K2 = d2 + 1;
    auto n1 = circle_nodes(K1, rho1, off1);
    auto n2 = circle_nodes(K2, rho2, off2);
    std::vector<CMat> vals;
    vals.reserve(std::size_t(K1) * K2);
    for (int a = 0; a < K1; ++a)
        for (int b = 0; b < K2; ++b) vals.push_back(f(n1[a], n2[b]));
    MatPoly2<Cplx> out(rows, cols);
    for (int k1 = 0; k1 < K1; ++k1)
        for (int k2 = 0; k2 < K2; ++k2) {
            CMat acc(rows, cols);
            for (int a = 0; a < K1; ++a)
                for (int b = 0; b < K2; ++b) {
                    double th = -(2.0 * M_PI * a / K1 + off1) * k1 - (2.0 * M_PI * b / K2 + off2) * k2;
                    acc += vals[std::size_t(a) * K2 + b] * Cplx(std::cos(th), std::sin(th));
                }
            acc *= Cplx(1.0 / (double(K1) * K2 * std::pow(rho1, k1) * std::pow(rho2, k2)), 0.0);
            out.set_coeff({k1, k2}, acc);
        }
    out.prune();
    return out;
}

// ---------------------------------------------------------------------------
// hermitian / unitary helpers
// ---------------------------------------------------------------------------

struct HermitianEig {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors;  // columns
};

inline HermitianEig hermitian_eig(const CMat& m) {
    Eigen::MatrixXcd a = to_eigen(m);
    a = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eig_hermitian(const CMat& m) {
    if (m.empty()) return 0.0;
    return hermitian_eig(m).values(0);
}

/// Hermitian PSD square root.
inline CMat psd_sqrt(const CMat& m, double clip_tol = 0.0) {
    auto eig = hermitian_eig(m);
    Eigen::VectorXd v = eig.values;
    for (int i = 0; i < v.size(); ++i) v(i) = std::sqrt(std::max(v(i), clip_tol));
    return from_eigen(eig.vectors * v.asDiagonal() * eig.vectors.adjoint());
}

/// Columns completing the (orthonormal) columns of q to a unitary basis.
inline Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& q) {
    const int n = int(q.rows()), k = int(q.cols());
    if (k >= n) return Eigen::MatrixXcd(n, 0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q);
    Eigen::MatrixXcd full = qr.householderQ();
    return full.rightCols(n - k);
}

// ---------------------------------------------------------------------------
// deterministic seeded randomness
// ---------------------------------------------------------------------------

/// All library randomness funnels through this so byte-level determinism
/// only depends on the seed (Box-Muller over mt19937_64, no stdlib
/// distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0,1)
        return double(gen_() >> 11) * (1.0 / 9007199254740992.0);
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + int(gen_() % std::uint64_t(hi - lo + 1));
    }
    double gaussian() {
        double u1 = uniform(), u2 = uniform();
        u1 = std::max(u1, 1e-300);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    Cplx complex_gaussian() { return Cplx(gaussian(), gaussian()); }
    Cplx unit_complex() {
        double th = uniform(0.0, 2.0 * M_PI);
        return Cplx(std::cos(th), std::sin(th));
    }
    Cplx disk_point(double radius = 0.95) { return std::sqrt(uniform()) * radius * unit_complex(); }
    std::array<Cplx, 2> bidisk_point(double radius = 0.95) {
        return {disk_point(radius), disk_point(radius)};
    }
    std::array<Cplx, 2> torus_point() { return {unit_complex(), unit_complex()}; }

    /// Haar-ish random unitary: QR of a Gaussian matrix, R-diagonal phases fixed.
    CMat random_unitary(int n) {
        Eigen::MatrixXcd g(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) g(r, c) = complex_gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
        Eigen::MatrixXcd q = qr.householderQ();
        Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i) {
            Cplx d = r(i, i);
            q.col(i) *= (d == Cplx(0.0)) ? Cplx(1.0) : d / std::abs(d);
        }
        return from_eigen(q);
    }

    /// Exactly-unitary random matrix over Q(i): a product of Givens rotations
    /// with Pythagorean (c, s) pairs and rational circle-point phases.
    /// Small parameter denominators keep downstream exact arithmetic light.
    QMat random_unitary_exact(int n) {
        auto rational_t = [this]() {
            int num = uniform_int(-3, 3);
            int den = uniform_int(2, 5);
            return GaussianRational(num, den);
        };
        auto circle_point = [](const GaussianRational& t) {
            // (1 - t^2 + 2ti) / (1 + t^2), exactly unimodular for real t
            GaussianRational one(1);
            GaussianRational t2 = t * t;
            GaussianRational den = one + t2;
            GaussianRational re = (one - t2) / den;
            GaussianRational im = (GaussianRational(2) * t) / den;
            return GaussianRational(re.re(), im.re());
        };
        QMat u = QMat::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                GaussianRational t = rational_t();
                GaussianRational one(1);
                GaussianRational t2 = t * t;
                GaussianRational den = one + t2;
                GaussianRational c = (one - t2) / den;  // real
                GaussianRational s = (GaussianRational(2) * t) / den;
                GaussianRational phase = circle_point(rational_t());
                QMat g = QMat::identity(n);
                g(i, i) = c;
                g(i, j) = s * phase;
                g(j, i) = -(s * phase.conj());
                g(j, j) = c;
                u = u * g;
            }
        QMat d = QMat::identity(n);
        for (int i = 0; i < n; ++i) d(i, i) = circle_point(rational_t());
        return u * d;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace bidisk
