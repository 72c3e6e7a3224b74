#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegelkit/io.hpp"
#include "siegelkit/siegel.hpp"

using namespace siegelkit;

namespace {

HalfIntMat random_diag(std::mt19937_64& rng, long p, int n, long max_exp) {
    std::uniform_int_distribution<long> ed(0, max_exp);
    std::uniform_int_distribution<int> ud(0, 3);
    std::vector<long> exps(n);
    for (int i = 0; i < n; ++i) exps[i] = ed(rng);
    std::sort(exps.begin(), exps.end());
    std::vector<Rational> d;
    for (int i = 0; i < n; ++i) {
        long u = 1;
        switch (ud(rng)) {
            case 0: u = 1; break;
            case 1: u = -1; break;
            case 2: u = p + 1; break;
            default: u = p + 2; break;
        }
        d.push_back(Rational(u) * pow_rat(Rational(p), exps[i]));
    }
    return HalfIntMat::diagonal(d);
}

}  // namespace

TEST_CASE("gamma_q") {
    CHECK(gamma_q(1, 3, 0, Rational(1, 3)) == Rational(2, 3));
    CHECK(gamma_q(2, 3, 1, Rational(1, 9)) == Rational(32, 27));
    CHECK(gamma_q(2, 3, 0, Rational(1, 9)) == Rational(64, 81));
    CHECK(gamma_q(2, 3, -1, Rational(1, 9)) == Rational(16, 81) * Rational(8, 2) / Rational(4, 3));
    CHECK_THROWS_AS(gamma_q(2, 3, 1, Rational(1, 3)), std::domain_error);  // pole at X = q^{-n/2}
}

TEST_CASE("f_tilde_matrix degree one") {
    PrimeContext p3(3);
    SiegelResult r = f_tilde_matrix(HalfIntMat::diagonal({Rational(3)}), p3);
    CHECK(r.f_tilde == BiLaurent::monomial(1, -1, 0) + BiLaurent::monomial(1, 1, 0));
    CHECK(r.f_poly == std::vector<Integer>{Integer(1), Integer(3)});
    CHECK(r.e_b == 1);

    SiegelResult u = f_tilde_matrix(HalfIntMat::diagonal({Rational(7)}), p3);
    CHECK(u.f_tilde == BiLaurent::one());
    CHECK(u.f_poly == std::vector<Integer>{Integer(1)});
}

TEST_CASE("f_tilde_matrix p=2 needs a certificate") {
    PrimeContext p2(2);
    HalfIntMat hyp = HalfIntMat::hyperbolic_plane();
    CHECK_THROWS_AS(f_tilde_matrix(hyp, p2), ValidationError);
    DyadicCert cert{GKData{{0, 0}}, Involution({2, 1})};
    SiegelResult r = f_tilde_matrix(hyp, p2, cert);
    CHECK(r.f_tilde == BiLaurent::one());
    CHECK(r.f_poly == std::vector<Integer>{Integer(1)});
}

TEST_CASE("f_tilde_matrix degree two worked example") {
    PrimeContext p3(3);
    // diag(1,9): EGK = (1,1;0,2;1,-1), F~ = X^{-1} + Y^{-1} + X, F = 1 + 3T + 27T^2
    SiegelResult r = f_tilde_matrix(HalfIntMat::diagonal({1, 9}), p3);
    CHECK(r.f_tilde == BiLaurent::monomial(1, -2, 0) + BiLaurent::monomial(1, 0, -2) +
                           BiLaurent::var_x());
    CHECK(r.f_poly == std::vector<Integer>{Integer(1), Integer(3), Integer(27)});
    CHECK(r.e_b == 2);
}

TEST_CASE("support bound and integer coefficients") {
    std::mt19937_64 rng(11);
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p);
        for (int t = 0; t < 30; ++t) {
            HalfIntMat b = random_diag(rng, p, 3, 3);
            SiegelResult r = f_tilde_matrix(b, ctx);
            CHECK(static_cast<long>(r.f_poly.size()) == r.e_b + 1);
            for (const auto& [e, c] : r.f_tilde.terms()) {
                CHECK(e.first >= -r.e_b);
                CHECK(e.first <= r.e_b);
                CHECK(is_integer(c));
            }
        }
    }
}

TEST_CASE("f_tilde_recursion_odd equals the EGK pipeline") {
    PrimeContext p3(3), p5(5);
    CHECK(f_tilde_recursion_odd(HalfIntMat::diagonal({Rational(7)}), p5) == BiLaurent::one());
    CHECK(f_tilde_recursion_odd(HalfIntMat::diagonal({1, 3}), p3) ==
          f_tilde_matrix(HalfIntMat::diagonal({1, 3}), p3).f_tilde);
    CHECK(f_tilde_recursion_odd(HalfIntMat::diagonal({1, 3, 9}), p3) ==
          f_tilde_matrix(HalfIntMat::diagonal({1, 3, 9}), p3).f_tilde);
    CHECK_THROWS_AS(f_tilde_recursion_odd(HalfIntMat::hyperbolic_plane(), p3),
                    std::invalid_argument);
    CHECK_THROWS_AS(f_tilde_recursion_odd(HalfIntMat::diagonal({1, 2}), PrimeContext(2)),
                    std::domain_error);

    std::mt19937_64 rng(13);
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx(p);
        for (int t = 0; t < 25; ++t) {
            HalfIntMat b = random_diag(rng, p, 1 + static_cast<int>(t % 4), 4);
            CHECK(f_tilde_recursion_odd(b, ctx) == f_tilde_matrix(b, ctx).f_tilde);
        }
    }
}

TEST_CASE("functional equation sign") {
    PrimeContext p3(3), p7(7);
    CHECK(functional_equation_sign(HalfIntMat::diagonal({Rational(3)}), p3) == 1);
    CHECK(functional_equation_sign(HalfIntMat::diagonal({1, 1}), p3) == 1);
    HalfIntMat b = HalfIntMat::diagonal({2, 3, 5});
    CHECK(functional_equation_sign(b, p7) == eta_b(b, p7));
    std::mt19937_64 rng(29);
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p);
        for (int t = 0; t < 20; ++t) {
            HalfIntMat m = random_diag(rng, p, 1 + static_cast<int>(t % 4), 4);
            CHECK_NOTHROW(functional_equation_sign(m, ctx));
        }
    }
}

TEST_CASE("gl invariance of the pipeline") {
    std::mt19937_64 rng(37);
    PrimeContext p3(3);
    std::uniform_int_distribution<int> idx(0, 2), coef(-2, 2);
    for (int t = 0; t < 25; ++t) {
        HalfIntMat b = random_diag(rng, 3, 3, 2);
        std::vector<Rational> u(9, Rational(0));
        for (int i = 0; i < 3; ++i) u[static_cast<std::size_t>(i) * 3 + i] = 1;
        for (int s = 0; s < 5; ++s) {
            int i = idx(rng), j = idx(rng);
            if (i == j) continue;
            Rational c(coef(rng));
            for (int r = 0; r < 3; ++r) u[static_cast<std::size_t>(r) * 3 + i] += c * u[static_cast<std::size_t>(r) * 3 + j];
        }
        HalfIntMat bu = b.transformed(u);
        CHECK(f_tilde_matrix(bu, p3).f_tilde == f_tilde_matrix(b, p3).f_tilde);
    }
}

TEST_CASE("siegel JSON output") {
    PrimeContext p3(3);
    SiegelResult r = f_tilde_matrix(HalfIntMat::diagonal({Rational(3)}), p3);
    CHECK(siegel_to_json(r) ==
          "{\"e_b\":1,\"f_tilde\":[[-1,0,\"1\"],[1,0,\"1\"]],\"f\":[\"1\",\"3\"]}");
}
