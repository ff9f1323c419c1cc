#include <catch2/catch_amalgamated.hpp>

#include "bidisk/numeric.hpp"
#include "bidisk/snf.hpp"

using namespace bidisk;

namespace {

using QMP = MatPoly1<GaussianRational>;

QMP zpow_entry(int rows, int cols, int r, int c, int k, GaussianRational v = GaussianRational(1)) {
    QMP p(rows, cols);
    QMat m(rows, cols);
    m(r, c) = v;
    p.set_coeff({k}, m);
    return p;
}

QMP random_poly_matrix(Rng& rng, int rows, int cols, int deg) {
    QMP p(rows, cols);
    for (int k = 0; k <= deg; ++k) {
        QMat m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m(r, c) = GaussianRational(mpq_class(rng.uniform_int(-4, 4), rng.uniform_int(1, 3)),
                                           mpq_class(rng.uniform_int(-4, 4), rng.uniform_int(1, 3)));
        p.set_coeff({k}, m);
    }
    return p;
}

/// Random unimodular polynomial matrix: product of shears and permutations.
QMP random_unimodular(Rng& rng, int n, int ops) {
    QMP u = QMP::identity(n);
    for (int t = 0; t < ops; ++t) {
        int i = rng.uniform_int(0, n - 1), j = rng.uniform_int(0, n - 1);
        if (i == j) continue;
        int deg = rng.uniform_int(0, 2);
        QMP e = QMP::identity(n);
        QMat add(n, n);
        add(i, j) = GaussianRational(rng.uniform_int(-3, 3), rng.uniform_int(1, 2));
        e.add_to_coeff({deg}, add);
        u = u * e;
    }
    return u;
}

int rank_at_point(const QMP& p, const GaussianRational& z) {
    QMat v = p.eval<GaussianRational>({z});
    // exact row reduction rank
    int rank = 0;
    int rows = v.rows(), cols = v.cols();
    int lead = 0;
    for (int r = 0; r < rows && lead < cols; ++r) {
        int piv = -1;
        for (int rr = r; rr < rows; ++rr)
            if (!v(rr, lead).is_zero()) {
                piv = rr;
                break;
            }
        if (piv < 0) {
            ++lead;
            --r;
            continue;
        }
        for (int c = 0; c < cols; ++c) std::swap(v(piv, c), v(r, c));
        for (int rr = 0; rr < rows; ++rr) {
            if (rr == r || v(rr, lead).is_zero()) continue;
            GaussianRational f = v(rr, lead) / v(r, lead);
            for (int c = 0; c < cols; ++c) v(rr, c) -= f * v(r, c);
        }
        ++rank;
        ++lead;
    }
    return rank;
}

}  // namespace

TEST_CASE("SNF of diag(z, z^2) is itself") {
    QMP p = zpow_entry(2, 2, 0, 0, 1) + zpow_entry(2, 2, 1, 1, 2);
    auto snf = smith_normal_form(p);
    CHECK(snf.rank == 2);
    CHECK(snf.invariant_factors[0].degree() == 1);
    CHECK(snf.invariant_factors[1].degree() == 2);
    CHECK(snf.D == p);
    CHECK(snf.T1 == QMP::identity(2));
    CHECK(snf.T2 == QMP::identity(2));
}

TEST_CASE("SNF of [[z,0],[0,1]] sorts invariant factors") {
    QMP p = zpow_entry(2, 2, 0, 0, 1) + zpow_entry(2, 2, 1, 1, 0);
    auto snf = smith_normal_form(p);
    REQUIRE(snf.rank == 2);
    CHECK(snf.invariant_factors[0].degree() == 0);
    CHECK(snf.invariant_factors[1].degree() == 1);
    CHECK(snf.D.coeff({0})(0, 0) == GaussianRational(1));
    CHECK(snf.D.coeff({1})(1, 1) == GaussianRational(1));
}

TEST_CASE("SNF detects generic rank drop: [[1,z],[z,z^2]]") {
    QMP p = zpow_entry(2, 2, 0, 0, 0) + zpow_entry(2, 2, 0, 1, 1) + zpow_entry(2, 2, 1, 0, 1) +
            zpow_entry(2, 2, 1, 1, 2);
    auto snf = smith_normal_form(p);
    CHECK(snf.rank == 1);
    CHECK(snf.invariant_factors[0].degree() == 0);
    CHECK(snf.invariant_factors[1].is_zero());
}

TEST_CASE("float input is rejected") {
    MatPoly1<Cplx> p = MatPoly1<Cplx>::identity(2);
    CHECK_THROWS_AS(smith_normal_form(p), Error);
}

TEST_CASE("SNF properties on random matrices") {
    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        int rows = rng.uniform_int(1, 4), cols = rng.uniform_int(1, 4);
        QMP p = random_poly_matrix(rng, rows, cols, rng.uniform_int(0, 3));
        auto snf = smith_normal_form(p);

        // reconstruction and inverse checks are asserted inside the call;
        // verify the divisibility chain and monicity here
        for (int t = 0; t + 1 < int(snf.invariant_factors.size()); ++t) {
            const auto& a = snf.invariant_factors[t];
            const auto& b = snf.invariant_factors[t + 1];
            if (!a.is_zero() && !b.is_zero()) CHECK(a.divides(b));
            if (a.is_zero()) CHECK(b.is_zero());
        }
        for (const auto& d : snf.invariant_factors)
            if (!d.is_zero()) CHECK(d.leading() == GaussianRational(1));

        // #nonzero invariant factors = rank at sample points avoiding det zeros
        for (int s = 0; s < 5; ++s) {
            GaussianRational z(rng.uniform_int(2, 40), rng.uniform_int(41, 97));
            bool kills = false;
            for (const auto& d : snf.invariant_factors) {
                if (d.is_zero()) continue;
                GaussianRational v;
                for (int k = d.degree(); k >= 0; --k) v = v * z + d.coeff(k);
                if (v.is_zero()) kills = true;
            }
            if (!kills) CHECK(rank_at_point(p, z) == snf.rank);
        }
    }
}

TEST_CASE("invariant factors are unimodular-invariant") {
    Rng rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 3;
        QMP p = random_poly_matrix(rng, n, n, 2);
        auto base = smith_normal_form(p);
        QMP u = random_unimodular(rng, n, 4);
        QMP v = random_unimodular(rng, n, 4);
        auto conj = smith_normal_form(u * p * v);
        REQUIRE(base.invariant_factors.size() == conj.invariant_factors.size());
        for (std::size_t i = 0; i < base.invariant_factors.size(); ++i)
            CHECK(base.invariant_factors[i] == conj.invariant_factors[i]);
    }
}
