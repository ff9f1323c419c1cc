#include <catch2/catch_amalgamated.hpp>

#include "bidisk/kernel.hpp"
#include "bidisk/numeric.hpp"
#include "bidisk/poly_ops.hpp"

using namespace bidisk;

namespace {

GaussianRational gq(long n, long d) { return GaussianRational(n, d); }

MatPoly2<GaussianRational> kummert_S() {
    // (1/2) [[z1(z1+z2), z1 z2 (z1-z2)], [z1-z2, z2(z1+z2)]]
    MatPoly2<GaussianRational> Q(2, 2);
    auto put = [&Q](int k1, int k2, int r, int c, GaussianRational v) {
        QMat m = Q.coeff({k1, k2});
        m(r, c) = v;
        Q.set_coeff({k1, k2}, m);
    };
    put(2, 0, 0, 0, gq(1, 2));
    put(1, 1, 0, 0, gq(1, 2));
    put(2, 1, 0, 1, gq(1, 2));
    put(1, 2, 0, 1, gq(-1, 2));
    put(1, 0, 1, 0, gq(1, 2));
    put(0, 1, 1, 0, gq(-1, 2));
    put(1, 1, 1, 1, gq(1, 2));
    put(0, 2, 1, 1, gq(1, 2));
    return Q;
}

}  // namespace

TEST_CASE("gaussian rational arithmetic is exact and canonical") {
    GaussianRational a = gq(1, 3) + gq(1, 6);
    CHECK(a == gq(1, 2));
    GaussianRational i = GaussianRational::i();
    CHECK((i * i) == gq(-1, 1));
    GaussianRational q(mpq_class(3, 4), mpq_class(-1, 2));
    CHECK(q.to_string() == "3/4-1/2i");
    CHECK(GaussianRational::parse("3/4-1/2i") == q);
    CHECK(GaussianRational::parse("-1/2+0/1i") == GaussianRational(-1, 2));
    CHECK(GaussianRational::parse("3/4") == gq(3, 4));
    CHECK(GaussianRational::from_double(0.5) == gq(1, 2));
}

TEST_CASE("exact arithmetic associativity/distributivity on random triples") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        auto r = [&]() {
            return GaussianRational(mpq_class(rng.uniform_int(-20, 20), rng.uniform_int(1, 9)),
                                    mpq_class(rng.uniform_int(-20, 20), rng.uniform_int(1, 9)));
        };
        GaussianRational a = r(), b = r(), c = r();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("eval_rational on the worked 4x4 example function") {
    auto S = RationalMatrixFunction<GaussianRational, 2>::polynomial(kummert_S());

    SECTION("value at (1,1) is the identity") {
        auto v = eval_rational<GaussianRational, 2, GaussianRational>(
            S, {GaussianRational(1), GaussianRational(1)});
        CHECK(v == QMat::identity(2));
    }
    SECTION("value at (i,-i) matches a per-entry monomial Horner oracle") {
        std::array<Cplx, 2> z{Cplx(0, 1), Cplx(0, -1)};
        CMat got = eval_rational_c(S, z);
        // independent oracle: direct monomial summation
        CMat want(2, 2);
        for (const auto& [k, m] : S.num.terms()) {
            Cplx w = std::pow(z[0], k[0]) * std::pow(z[1], k[1]);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) want(r, c) += m(r, c).to_complex() * w;
        }
        CHECK((got - want).max_abs() < 1e-14);
    }
    SECTION("zero denominator raises") {
        MatPoly1<GaussianRational> num = MatPoly1<GaussianRational>::identity(2);
        auto den = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {1});  // p = z
        RationalMatrixFunction<GaussianRational, 1> f(num, den);
        CHECK_THROWS_AS((eval_rational<GaussianRational, 1, GaussianRational>(
                            f, {GaussianRational(0)})),
                        Error);
    }
}

TEST_CASE("S = zI2 evaluates to zero at 0") {
    MatPoly1<GaussianRational> Q(2, 2);
    Q.set_coeff({1}, QMat::identity(2));
    auto S = RationalMatrixFunction<GaussianRational, 1>::polynomial(Q);
    auto v = eval_rational<GaussianRational, 1, GaussianRational>(S, {GaussianRational(0)});
    CHECK(v.is_zero());
}

TEST_CASE("breve transposes coefficients and is an involution") {
    auto S = RationalMatrixFunction<GaussianRational, 2>::polynomial(kummert_S());
    auto Sb = breve(S);
    // breve(S)(z)_{12} = (z1 - z2)/2, the conjugate-transposed (2,1) entry
    CHECK(Sb.num.coeff({1, 0})(0, 1) == gq(1, 2));
    CHECK(Sb.num.coeff({0, 1})(0, 1) == gq(-1, 2));
    auto Sbb = breve(Sb);
    CHECK(Sbb.num == S.num);
    CHECK(Sbb.den == S.den);

    // scalar S(z) = z is fixed
    auto zpoly = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {1});
    auto f = RationalMatrixFunction<GaussianRational, 1>::polynomial(zpoly);
    CHECK(breve(f).num == zpoly);
}

TEST_CASE("conj_reflect fixes hermitian Laurent polynomials and swaps coefficients") {
    SECTION("identity is fixed") {
        auto I = LaurentMatPoly1<GaussianRational>::identity(3);
        CHECK(I.conj_reflect() == I);
    }
    SECTION("1 - z/2 maps to 1 - z^{-1}/2") {
        auto L = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {0}) +
                 MatPoly1<GaussianRational>::monomial(gq(-1, 2), {1});
        auto R = L.conj_reflect();
        CHECK(R.coeff({0})(0, 0) == GaussianRational(1));
        CHECK(R.coeff({-1})(0, 0) == gq(-1, 2));
        CHECK(R.conj_reflect() == L);
    }
    SECTION("anti-multiplicativity on random Laurent pairs") {
        Rng rng(11);
        for (int t = 0; t < 10; ++t) {
            LaurentMatPoly1<Cplx> A(2, 2), B(2, 2);
            for (int k = -2; k <= 2; ++k) {
                CMat ma(2, 2), mb(2, 2);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) {
                        ma(r, c) = rng.complex_gaussian();
                        mb(r, c) = rng.complex_gaussian();
                    }
                A.set_coeff({k}, ma);
                B.set_coeff({k}, mb);
            }
            auto lhs = (A * B).conj_reflect();
            auto rhs = B.conj_reflect() * A.conj_reflect();
            CHECK((lhs - rhs).max_coeff_abs() < 1e-12);
        }
    }
}

TEST_CASE("eval of a product equals product of evals") {
    Rng rng(3);
    MatPoly2<Cplx> A(2, 3), B(3, 2);
    for (int k1 = 0; k1 <= 2; ++k1)
        for (int k2 = 0; k2 <= 1; ++k2) {
            CMat ma(2, 3), mb(3, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 3; ++c) ma(r, c) = rng.complex_gaussian();
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 2; ++c) mb(r, c) = rng.complex_gaussian();
            A.set_coeff({k1, k2}, ma);
            B.set_coeff({k1, k2}, mb);
        }
    auto AB = A * B;
    for (int t = 0; t < 50; ++t) {
        auto z = rng.bidisk_point();
        CMat lhs = AB.eval_c(z);
        CMat rhs = A.eval_c(z) * B.eval_c(z);
        CHECK((lhs - rhs).max_abs() < 1e-12 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("slice stability check") {
    SECTION("constant 1 passes with no roots") {
        auto p = MatPoly2<GaussianRational>::monomial(GaussianRational(1), {0, 0});
        auto rep = slice_stability_check(poly_to_float(p), 16);
        CHECK(rep.pass);
        CHECK(rep.sampling_based);
        CHECK(rep.min_root_modulus > 1e8);
    }
    SECTION("p = 2 - z1 passes with min modulus 2") {
        MatPoly2<Cplx> p(1, 1);
        p.set_coeff({0, 0}, CMat(1, 1, {Cplx(2.0)}));
        p.set_coeff({1, 0}, CMat(1, 1, {Cplx(-1.0)}));
        auto rep = slice_stability_check(p, 16);
        CHECK(rep.pass);
        CHECK(rep.min_root_modulus == Catch::Approx(2.0).margin(1e-9));
    }
    SECTION("p = 1 - z1 passes with boundary zeros") {
        MatPoly2<Cplx> p(1, 1);
        p.set_coeff({0, 0}, CMat(1, 1, {Cplx(1.0)}));
        p.set_coeff({1, 0}, CMat(1, 1, {Cplx(-1.0)}));
        auto rep = slice_stability_check(p, 16);
        CHECK(rep.pass);
        CHECK(rep.min_root_modulus == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("degenerate slice raises") {
        // p = (z2 - tau0)(1 + z1/2) with tau0 one of the sampled circle
        // points: the z2 = tau0 slice kills the whole polynomial in z1
        const int m = 16;
        double th = 2.0 * M_PI * 0.5 / m;
        Cplx tau0(std::cos(th), std::sin(th));
        MatPoly2<Cplx> p(1, 1);
        p.set_coeff({0, 1}, CMat(1, 1, {Cplx(1.0)}));
        p.set_coeff({0, 0}, CMat(1, 1, {-tau0}));
        p.set_coeff({1, 1}, CMat(1, 1, {Cplx(0.5)}));
        p.set_coeff({1, 0}, CMat(1, 1, {-0.5 * tau0}));
        CHECK_THROWS_AS(slice_stability_check(p, m), Error);
    }
}

TEST_CASE("divided kernel table: exact division and remainder detection") {
    SECTION("Q = z^2, p = 1 gives T = I2 pattern (1 + w̄z)") {
        MatPoly1<GaussianRational> Q = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {2});
        MatPoly1<GaussianRational> p = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {0});
        auto R = pair_table_1var(Q, p);
        auto dk = divide_one_minus_wz(R, 2);
        CHECK(dk.exact_division);
        CHECK(dk.K.get({0, 0})(0, 0) == GaussianRational(1));
        CHECK(dk.K.get({1, 1})(0, 0) == GaussianRational(1));
        CHECK(dk.K.get({0, 1})(0, 0) == GaussianRational(0));
    }
    SECTION("non iso-inner input leaves a remainder") {
        MatPoly1<GaussianRational> Q = MatPoly1<GaussianRational>::monomial(gq(1, 2), {1});
        MatPoly1<GaussianRational> p = MatPoly1<GaussianRational>::monomial(GaussianRational(1), {0});
        auto R = pair_table_1var(Q, p);
        auto dk = divide_one_minus_wz(R, 1);
        CHECK_FALSE(dk.exact_division);
    }
}
