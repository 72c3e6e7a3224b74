#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegelkit/io.hpp"
#include "siegelkit/quadform.hpp"

using namespace siegelkit;

namespace {

HalfIntMat mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return HalfIntMat(2, {a, b, c, d});
}

// Random unimodular integer matrix: a product of elementary operations.
std::vector<Rational> random_unimodular(std::mt19937_64& rng, int n, int ops = 6) {
    std::vector<Rational> u(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i) * n + i] = 1;
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2), coin(0, 1);
    for (int t = 0; t < ops; ++t) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int r = 0; r < n; ++r)
            u[static_cast<std::size_t>(r) * n + i] += Rational(c) * u[static_cast<std::size_t>(r) * n + j];
        if (coin(rng)) {
            for (int r = 0; r < n; ++r)
                std::swap(u[static_cast<std::size_t>(r) * n + i], u[static_cast<std::size_t>(r) * n + j]);
        }
    }
    return u;
}

HalfIntMat random_halfint(std::mt19937_64& rng, const PrimeContext& ctx, int n) {
    std::uniform_int_distribution<int> diag(-6, 6), off(-6, 6);
    for (;;) {
        std::vector<Rational> e(static_cast<std::size_t>(n) * n, Rational(0));
        for (int i = 0; i < n; ++i) {
            e[static_cast<std::size_t>(i) * n + i] = diag(rng);
            for (int j = i + 1; j < n; ++j) {
                Rational v = Rational(off(rng), 2);
                e[static_cast<std::size_t>(i) * n + j] = v;
                e[static_cast<std::size_t>(j) * n + i] = v;
            }
        }
        HalfIntMat b(n, e);
        try {
            validate(b, ctx);
            return b;
        } catch (const ValidationError&) {
        }
    }
}

}  // namespace

TEST_CASE("validate") {
    PrimeContext p3(3), p2(2);
    CHECK_NOTHROW(validate(HalfIntMat::diagonal({1, 3}), p3));
    CHECK_NOTHROW(validate(HalfIntMat::hyperbolic_plane(), p2));
    CHECK_THROWS_WITH_AS(validate(HalfIntMat::diagonal({Rational(1, 3), 1}), p3),
                         doctest::Contains("ord(b_ii)"), ValidationError);
    CHECK_THROWS_WITH_AS(validate(mat2(1, Rational(1, 4), Rational(1, 4), 1), p2),
                         doctest::Contains("ord(2 b_ij)"), ValidationError);
    CHECK_THROWS_WITH_AS(validate(mat2(1, 1, 1, 1), p3), doctest::Contains("degenerate"),
                         ValidationError);
    // denominators prime to p are fine
    CHECK_NOTHROW(validate(HalfIntMat::diagonal({Rational(1, 2), 1}), p3));
}

TEST_CASE("d_b") {
    PrimeContext p3(3);
    CHECK(d_b(HalfIntMat::diagonal({1, 1}), p3) == Rational(-4));
    CHECK(d_b(HalfIntMat::diagonal({Rational(7)}), p3) == Rational(7));
    CHECK(d_b(HalfIntMat::hyperbolic_plane(), p3) == Rational(1));
}

TEST_CASE("xi_b and e_b") {
    PrimeContext p3(3);
    CHECK(xi_b(HalfIntMat::diagonal({1, 1}), p3) == -1);
    CHECK(e_b(HalfIntMat::diagonal({1, 1}), p3) == 0);
    CHECK(e_b(HalfIntMat::diagonal({Rational(3)}), p3) == 1);
    CHECK(xi_b(HalfIntMat::diagonal({1, 9}), p3) == -1);
    CHECK(e_b(HalfIntMat::diagonal({1, 9}), p3) == 2);
    CHECK(xi_b(HalfIntMat::hyperbolic_plane(), p3) == 1);
}

TEST_CASE("eps_b and eta_b") {
    PrimeContext p3(3), p2(2);
    CHECK(eps_b(HalfIntMat::diagonal({Rational(7)}), p3) == 1);  // empty product
    CHECK(eta_b(HalfIntMat::diagonal({Rational(7)}), p3) == 1);
    CHECK(eps_b(HalfIntMat::diagonal({1, 1}), p3) == 1);
    const int eta = eta_b(HalfIntMat::diagonal({1, -1}), p2);
    CHECK((eta == 1 || eta == -1));
    // diagonalization independence: two pivot orders agree
    std::mt19937_64 rng(5);
    for (long p : {2L, 3L, 5L}) {
        PrimeContext ctx(p);
        for (int i = 0; i < 25; ++i) {
            HalfIntMat b = random_halfint(rng, ctx, 3);
            std::vector<Rational> d0 = diagonalize(b, 0), d1 = diagonalize(b, 1);
            int e0 = 1, e1 = 1;
            for (std::size_t x = 0; x < d0.size(); ++x)
                for (std::size_t y = x + 1; y < d0.size(); ++y) {
                    e0 *= hilbert(ctx, d0[x], d0[y]);
                    e1 *= hilbert(ctx, d1[x], d1[y]);
                }
            CHECK(e0 == e1);
        }
    }
}

TEST_CASE("jordan_odd") {
    PrimeContext p3(3);
    auto [j1, u1] = jordan_odd(HalfIntMat::diagonal({3, 1}), p3);
    CHECK(j1.pairs[0].first == 0);
    CHECK(j1.pairs[1].first == 1);

    auto [j2, u2] = jordan_odd(mat2(1, 1, 1, 4), p3);
    CHECK(j2.pairs[0].first == 0);
    CHECK(j2.pairs[1].first == 1);

    auto [j3, u3] = jordan_odd(HalfIntMat::hyperbolic_plane(), p3);
    CHECK(j3.pairs[0].first == 0);
    CHECK(j3.pairs[1].first == 0);

    CHECK_THROWS_AS(jordan_odd(HalfIntMat::diagonal({1, 2}), PrimeContext(2)), std::domain_error);

    // B[U] is the sorted diagonal form; U is p-integral with unit determinant
    std::mt19937_64 rng(17);
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx(p);
        for (int t = 0; t < 30; ++t) {
            HalfIntMat b = random_halfint(rng, ctx, 3);
            auto [jf, u] = jordan_odd(b, ctx);
            HalfIntMat bu = b.transformed(u);
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    CHECK(bu.at(i, j) == 0);
                }
                CHECK(ordp(ctx, bu.at(i, i)) == jf.pairs[i].first);
                CHECK(bu.at(i, i) == pow_rat(Rational(p), jf.pairs[i].first) * jf.pairs[i].second);
                CHECK(ordp(ctx, jf.pairs[i].second) == 0);
            }
            CHECK(jf.pairs[0].first <= jf.pairs[1].first);
            CHECK(jf.pairs[1].first <= jf.pairs[2].first);
            // unimodularity of U at p
            HalfIntMat umat(3, u);
            CHECK(ordp(ctx, umat.det()) == 0);
            for (const auto& x : u) CHECK(ordp(ctx, x) >= 0);
        }
    }
}

TEST_CASE("gk_odd") {
    PrimeContext p3(3);
    CHECK(gk_odd(HalfIntMat::diagonal({1, 3}), p3) == GKData{{0, 1}});
    CHECK(gk_odd(HalfIntMat::diagonal({2, 9}), p3) == GKData{{0, 2}});
    CHECK(gk_odd(HalfIntMat::diagonal({Rational(27 * 2)}), p3) == GKData{{3}});
}

TEST_CASE("egk_odd") {
    PrimeContext p3(3);
    CHECK(egk_odd(HalfIntMat::diagonal({Rational(7)}), p3) == EGKDatum{{1}, {0}, {1}});
    CHECK(egk_odd(HalfIntMat::diagonal({1, 3}), p3) == EGKDatum{{1, 1}, {0, 1}, {1, 0}});
    CHECK(egk_odd(HalfIntMat::hyperbolic_plane(), p3) == EGKDatum{{2}, {0}, {1}});
    CHECK(egk_odd(HalfIntMat::diagonal({1, 9}), p3) == EGKDatum{{1, 1}, {0, 2}, {1, -1}});
}

TEST_CASE("egk_odd is a class invariant (gram transforms)") {
    std::mt19937_64 rng(23);
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p);
        for (int t = 0; t < 40; ++t) {
            HalfIntMat b = random_halfint(rng, ctx, 3);
            std::vector<Rational> u = random_unimodular(rng, 3);
            CHECK(egk_odd(b.transformed(u), ctx) == egk_odd(b, ctx));
        }
    }
}

TEST_CASE("e_b equals the GK profile value for odd p") {
    std::mt19937_64 rng(31);
    PrimeContext p3(3);
    for (int t = 0; t < 40; ++t) {
        HalfIntMat b = random_halfint(rng, p3, 3);
        GKData g = gk_odd(b, p3);
        std::vector<long> e = eseq(g.a);
        CHECK(e_b(b, p3) == e[g.a.size()]);
    }
}

TEST_CASE("check_admissible") {
    CHECK_NOTHROW(check_admissible(GKData{{0, 0}}, Involution({2, 1})));
    CHECK_NOTHROW(check_admissible(GKData{{0, 1}}, Involution({1, 2})));
    CHECK_THROWS_WITH_AS(check_admissible(GKData{{0, 0, 0}}, Involution({1, 2, 3})),
                         doctest::Contains("(i)"), ValidationError);
    // (iv): equal exponents must pair adjacently
    CHECK_THROWS_WITH_AS(check_admissible(GKData{{0, 0, 0}}, Involution({3, 2, 1})),
                         doctest::Contains("(iv)"), ValidationError);
    CHECK_THROWS(Involution({2, 3, 1}));  // not an involution
}

TEST_CASE("check_reduced") {
    PrimeContext p2(2);
    CHECK_NOTHROW(check_reduced(HalfIntMat::hyperbolic_plane(), GKData{{0, 0}},
                                Involution({2, 1}), p2));
    CHECK_NOTHROW(check_reduced(HalfIntMat::diagonal({1, 2}), GKData{{0, 1}},
                                Involution({1, 2}), p2));
    CHECK_THROWS_WITH_AS(check_reduced(HalfIntMat::diagonal({2, 2}), GKData{{0, 1}},
                                       Involution({1, 2}), p2),
                         doctest::Contains("(2)"), ValidationError);
    CHECK_THROWS_AS(check_reduced(HalfIntMat::diagonal({1, 3}), GKData{{0, 1}},
                                  Involution({1, 2}), PrimeContext(3)),
                    ValidationError);
}

TEST_CASE("egk_from_reduced") {
    PrimeContext p2(2);
    CHECK(egk_from_reduced(HalfIntMat::hyperbolic_plane(), GKData{{0, 0}}, Involution({2, 1}),
                           p2) == EGKDatum{{2}, {0}, {1}});
    CHECK(egk_from_reduced(HalfIntMat::diagonal({1, 2}), GKData{{0, 1}}, Involution({1, 2}),
                           p2) == EGKDatum{{1, 1}, {0, 1}, {1, 0}});
    // D_B = -3 = 5 mod 8: unramified, xi = -1
    CHECK(egk_from_reduced(mat2(1, Rational(1, 2), Rational(1, 2), 1), GKData{{0, 0}},
                           Involution({2, 1}), p2) == EGKDatum{{2}, {0}, {-1}});
}

TEST_CASE("category") {
    CHECK(category(GKData{{0, 0}}, Involution({2, 1})) == Category::I);
    CHECK(category(GKData{{5}}, Involution({1})) == Category::II);
    CHECK(category(GKData{{0, 1}}, Involution({1, 2})) == Category::II);
}

TEST_CASE("perturbation stability of reduced forms") {
    PrimeContext p2(2);
    struct Base {
        HalfIntMat b;
        GKData a;
        Involution s;
    };
    std::vector<Base> bases = {
        {HalfIntMat::hyperbolic_plane(), GKData{{0, 0}}, Involution({2, 1})},
        {HalfIntMat::diagonal({1, 2}), GKData{{0, 1}}, Involution({1, 2})},
        {mat2(1, Rational(1, 2), Rational(1, 2), 1), GKData{{0, 0}}, Involution({2, 1})},
        {HalfIntMat(3, {Rational(0), Rational(1, 2), Rational(0), Rational(1, 2), Rational(0),
                        Rational(0), Rational(0), Rational(0), Rational(2)}),
         GKData{{0, 0, 1}}, Involution({2, 1, 3})},
    };
    std::mt19937_64 rng(57);
    std::uniform_int_distribution<int> pick(-2, 2);
    for (const auto& base : bases) {
        EGKDatum expect = egk_from_reduced(base.b, base.a, base.s, p2);
        const int n = base.b.dim();
        for (int t = 0; t < 30; ++t) {
            std::vector<Rational> delta(static_cast<std::size_t>(n) * n, Rational(0));
            for (int i = 0; i < n; ++i) {
                delta[static_cast<std::size_t>(i) * n + i] =
                    Rational(pick(rng)) * pow_rat(Rational(2), base.a.a[i] + 1);
                for (int j = i + 1; j < n; ++j) {
                    long t2 = (base.a.a[i] + base.a.a[j]) / 2 + 1;
                    Rational v = Rational(pick(rng)) * pow_rat(Rational(2), t2) / 2;
                    delta[static_cast<std::size_t>(i) * n + j] = v;
                    delta[static_cast<std::size_t>(j) * n + i] = v;
                }
            }
            HalfIntMat bp = base.b + HalfIntMat(n, delta);
            CHECK_NOTHROW(check_reduced(bp, base.a, base.s, p2));
            CHECK(egk_from_reduced(bp, base.a, base.s, p2) == expect);
        }
    }
}

TEST_CASE("matrix JSON round trip") {
    HalfIntMat b = mat2(1, Rational(1, 2), Rational(1, 2), 3);
    HalfIntMat back = matrix_from_json(matrix_to_json(b));
    CHECK(back == b);
    CHECK(matrix_to_json(b) == "{\"n\":2,\"entries\":[[\"1\",\"1/2\"],[\"1/2\",\"3\"]]}");
    CHECK_THROWS(matrix_from_json("{\"n\": 2, \"entries\": [[\"1\"]]}"));
}
