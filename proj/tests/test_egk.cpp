#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "siegelkit/egk.hpp"
#include "siegelkit/io.hpp"

using namespace siegelkit;

namespace {

// Exhaustive generator of valid naive data with n <= nmax, a_i <= amax.
std::vector<NaiveEGK> all_naive(int nmax, long amax) {
    std::vector<NaiveEGK> out;
    for (int n = 1; n <= nmax; ++n) {
        std::vector<long> a(n, 0);
        std::function<void(int)> rec_a = [&](int i) {
            if (i == n) {
                std::vector<int> eps(n, 0);
                std::function<void(int)> rec_e = [&](int j) {
                    if (j == n) {
                        NaiveEGK h{a, eps};
                        if (is_valid_naive(h)) out.push_back(h);
                        return;
                    }
                    for (int v : {-1, 0, 1}) {
                        eps[j] = v;
                        rec_e(j + 1);
                    }
                };
                rec_e(0);
                return;
            }
            for (long v = (i ? a[i - 1] : 0); v <= amax; ++v) {
                a[i] = v;
                rec_a(i + 1);
            }
        };
        rec_a(0);
    }
    return out;
}

// Exhaustive generator of all (not necessarily valid) EGK tuples with
// length <= nmax and m values <= mmax.
std::vector<EGKDatum> all_egk_tuples(int nmax, long mmax) {
    std::vector<EGKDatum> out;
    std::function<void(EGKDatum&, long, long)> rec = [&](EGKDatum& g, long len, long mprev) {
        if (len > 0) out.push_back(g);
        if (len == nmax) return;
        for (long nb = 1; len + nb <= nmax; ++nb)
            for (long m = mprev + 1; m <= mmax; ++m)
                for (int z : {-1, 0, 1}) {
                    g.n.push_back(nb);
                    g.m.push_back(m);
                    g.zeta.push_back(z);
                    rec(g, len + nb, m);
                    g.n.pop_back();
                    g.m.pop_back();
                    g.zeta.pop_back();
                }
    };
    EGKDatum g;
    rec(g, 0, -1);
    return out;
}

// Random valid naive datum: free choices where the clauses leave freedom,
// forced values elsewhere.
NaiveEGK random_naive(std::mt19937_64& rng, int nmax, long amax) {
    std::uniform_int_distribution<int> nd(1, nmax);
    const int n = nd(rng);
    std::vector<long> a(n);
    std::uniform_int_distribution<long> ad(0, amax);
    a[0] = ad(rng);
    for (int i = 1; i < n; ++i) a[i] = std::max(a[i - 1], ad(rng));
    std::vector<int> eps(n, 1);
    std::uniform_int_distribution<int> coin(0, 1);
    long sum = 0;  // a_1 + ... + a_{i-1}
    for (int i = 1; i <= n; ++i) {
        const long sum_i = sum + a[i - 1];
        if (i == 1) {
            eps[0] = 1;
        } else if (i % 2 == 0) {
            eps[i - 1] = (sum_i % 2 == 0) ? (coin(rng) ? 1 : -1) : 0;
        } else if (sum % 2 == 0) {
            const int base = ((a[i - 1] + a[i - 2]) % 2 == 0) ? 1 : eps[i - 2];
            eps[i - 1] = base * eps[i - 3];
        } else {
            eps[i - 1] = coin(rng) ? 1 : -1;
        }
        sum = sum_i;
    }
    NaiveEGK h{a, eps};
    REQUIRE(is_valid_naive(h));
    return h;
}

}  // namespace

TEST_CASE("validate_naive clause checks") {
    CHECK_THROWS_WITH_AS(validate_naive(NaiveEGK{{0, 1}, {1, -1}}),
                         doctest::Contains("(N2)"), ValidationError);
    CHECK(is_valid_naive(NaiveEGK{{0, 2}, {1, 1}}));
    CHECK_THROWS_WITH_AS(validate_naive(NaiveEGK{{1, 1, 1}, {1, 0, 1}}),
                         doctest::Contains("(N2)"), ValidationError);
    CHECK_THROWS_WITH_AS(validate_naive(NaiveEGK{{1, 0}, {1, 0}}),
                         doctest::Contains("(N1)"), ValidationError);
    CHECK_THROWS_WITH_AS(validate_naive(NaiveEGK{{0}, {-1}}), doctest::Contains("(N4)"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(validate_naive(NaiveEGK{{0, 0, 0}, {1, 1, -1}}),
                         doctest::Contains("(N5)"), ValidationError);
}

TEST_CASE("validate_egk clause checks") {
    CHECK(is_valid_egk(EGKDatum{{1}, {0}, {1}}));
    CHECK(is_valid_egk(EGKDatum{{1, 1}, {0, 1}, {1, 0}}));
    CHECK_THROWS_WITH_AS(validate_egk(EGKDatum{{1}, {0}, {-1}}), doctest::Contains("(E3)"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(validate_egk(EGKDatum{{1, 1}, {0, 1}, {1, 1}}),
                         doctest::Contains("(E2)"), ValidationError);
    CHECK_THROWS_WITH_AS(validate_egk(EGKDatum{{1, 1}, {1, 1}, {1, 0}}),
                         doctest::Contains("(E1)"), ValidationError);
}

TEST_CASE("validate_egk equals the image-of-upsilon ground truth") {
    // ground truth: valid EGK data are exactly the upsilon images of valid
    // naive data with matching boundary signs
    std::set<std::string> image;
    for (const auto& h : all_naive(5, 3)) image.insert(egk_to_json(upsilon(h)));
    int checked = 0, valid_count = 0;
    for (const auto& g : all_egk_tuples(5, 3)) {
        const bool valid = is_valid_egk(g);
        const bool in_image = image.count(egk_to_json(g)) > 0;
        CAPTURE(egk_to_json(g));
        CHECK(valid == in_image);
        ++checked;
        valid_count += valid;
    }
    CHECK(checked > 1000);
    CHECK(valid_count > 100);
}

TEST_CASE("upsilon block structure") {
    EGKDatum g = upsilon(NaiveEGK{{0, 1}, {1, 0}});
    CHECK(g == EGKDatum{{1, 1}, {0, 1}, {1, 0}});
    CHECK(upsilon(NaiveEGK{{2}, {1}}) == EGKDatum{{1}, {2}, {1}});
    CHECK(upsilon(NaiveEGK{{1, 1}, {1, -1}}) == EGKDatum{{2}, {1}, {-1}});
}

TEST_CASE("lift basics") {
    auto l1 = lift(EGKDatum{{1}, {4}, {1}}, LiftMode::all);
    REQUIRE(l1.size() == 1);
    CHECK(l1[0] == NaiveEGK{{4}, {1}});

    auto l2 = lift(EGKDatum{{2}, {1}, {-1}}, LiftMode::all);
    REQUIRE(l2.size() == 1);
    CHECK(l2[0] == NaiveEGK{{1, 1}, {1, -1}});

    // no freedom when the partial sum is odd: eps_2 = 0 forced
    auto l3 = lift(EGKDatum{{1, 2}, {0, 1}, {1, 1}}, LiftMode::all);
    CHECK(l3.size() == 1);
    CHECK(l3[0] == NaiveEGK{{0, 1, 1}, {1, 0, 1}});

    // exceptional-case freedom: (3; 1; 1) lifts with either eps_2
    auto l4 = lift(EGKDatum{{3}, {1}, {1}}, LiftMode::all);
    CHECK(l4.size() == 2);
}

TEST_CASE("every lift projects back and satisfies the clauses") {
    for (const auto& g : all_egk_tuples(4, 3)) {
        if (!is_valid_egk(g)) continue;
        auto lifts = lift(g, LiftMode::all);
        CHECK(!lifts.empty());
        for (const auto& h : lifts) {
            CHECK(is_valid_naive(h));
            CHECK(upsilon(h) == g);
        }
        // the closed-form eps_{n-1} determination matches enumeration
        int det;
        if (g.length() >= 2 && eps_prev_determined(g, det)) {
            for (const auto& h : lifts) CHECK(h.eps[h.size() - 2] == det);
        }
    }
}

TEST_CASE("c and d functions") {
    // d_func(0,0,0) = 1
    CHECK(d_func(0, 0, 0) == RatFunc::one());
    // c_func(0,0,0) = X^{-1}/(X^{-1}-X), at X=1/2: (2)/(2-1/2) = 4/3
    RatFunc c = c_func(0, 0, 0);
    CHECK(c.num().eval(Rational(1, 2), Rational(7)) / c.den().eval(Rational(1, 2), Rational(7)) ==
          Rational(4, 3));
    // d_func(2,1,1) = Y^{1/2} X^{-1/2} / (1 - X): at X=1/4, Y=4 -> 16/3
    RatFunc d = d_func(2, 1, 1);
    Rational num = 0, den = 0;
    // X=1/4 has an exact square root 1/2; Y=4 likewise
    BiLaurent n4 = substitute(substitute(d.num(), Var::X, SubstValue{Rational(1, 4)}), Var::Y,
                              SubstValue{Rational(4)});
    BiLaurent d4 = substitute(substitute(d.den(), Var::X, SubstValue{Rational(1, 4)}), Var::Y,
                              SubstValue{Rational(4)});
    num = n4.eval(1, 1);
    den = d4.eval(1, 1);
    CHECK(num / den == Rational(16, 3));
}

TEST_CASE("f_recursive pinned values") {
    CHECK(f_recursive(NaiveEGK{{2}, {1}}) ==
          BiLaurent::monomial(1, -2, 0) + BiLaurent::one() + BiLaurent::var_x());
    CHECK(f_recursive(NaiveEGK{{0}, {1}}) == BiLaurent::one());
    CHECK(f_recursive(NaiveEGK{{0, 0}, {1, 1}}) == BiLaurent::one());
    CHECK(f_closed(NaiveEGK{{1}, {1}}) ==
          BiLaurent::monomial(1, -1, 0) + BiLaurent::monomial(1, 1, 0));
    // worked example: a = (1,1), eps = (1,1): X^{-1} + X + Y - Y^{-1}
    CHECK(f_recursive(NaiveEGK{{1, 1}, {1, 1}}) ==
          BiLaurent::monomial(1, -2, 0) + BiLaurent::var_x() + BiLaurent::var_y() -
              BiLaurent::monomial(1, 0, -2));
}

TEST_CASE("f_recursive equals f_closed exhaustively (n <= 4, a <= 3)") {
    auto data = all_naive(4, 3);
    CHECK(data.size() == 168);
    for (const auto& h : data) {
        CAPTURE(naive_to_json(h));
        CHECK(f_recursive(h) == f_closed(h));
    }
}

TEST_CASE("f_recursive equals f_closed on random data up to n = 6") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
        NaiveEGK h = random_naive(rng, 6, 3);
        CAPTURE(naive_to_json(h));
        CHECK(f_recursive(h) == f_closed(h));
    }
}

TEST_CASE("functional equation of the closed form") {
    auto data = all_naive(4, 2);
    for (const auto& h : data) {
        const int n = static_cast<int>(h.size());
        const int eta = (n % 2 == 1) ? h.eps[n - 1] : 1;
        BiLaurent f = f_recursive(h);
        CHECK(substitute(f, Var::X, SubstInverse{}) == f.scale(Rational(eta)));
    }
}

TEST_CASE("integrality: coefficients in Z[Y, Y^{-1}]") {
    for (const auto& h : all_naive(4, 3)) {
        BiLaurent f = f_recursive(h);
        for (const auto& [e, c] : f.terms()) {
            CHECK(is_integer(c));
            CHECK(e.second % 2 == 0);  // integral powers of Y only
        }
    }
}

TEST_CASE("skip-two identities hold and ignore eps_{n-1}") {
    int applicable = 0;
    for (const auto& h : all_naive(5, 3)) {
        if (!f_skip2_applicable(h)) continue;
        ++applicable;
        CAPTURE(naive_to_json(h));
        BiLaurent direct = f_recursive(h);
        CHECK(f_skip2(h) == direct);
        // flipping eps_{n-1} to any other legal value keeps the polynomial
        NaiveEGK flip = h;
        const std::size_t n = h.size();
        for (int v : {-1, 0, 1}) {
            if (v == h.eps[n - 2]) continue;
            flip.eps[n - 2] = v;
            if (!is_valid_naive(flip) || upsilon(flip) != upsilon(h)) continue;
            CHECK(f_recursive(flip) == direct);
        }
    }
    CHECK(applicable > 50);
}

TEST_CASE("lift independence of the polynomial (Thm 4.1 small)") {
    for (const auto& g : all_egk_tuples(4, 3)) {
        if (!is_valid_egk(g)) continue;
        auto lifts = lift(g, LiftMode::all);
        BiLaurent f0 = f_recursive(lifts[0]);
        for (const auto& h : lifts) CHECK(f_recursive(h) == f0);
        CHECK(f_tilde_egk(g) == f0);
    }
}

TEST_CASE("f_tilde_egk pinned values") {
    CHECK(f_tilde_egk(EGKDatum{{1}, {2}, {1}}) ==
          BiLaurent::monomial(1, -2, 0) + BiLaurent::one() + BiLaurent::var_x());
    CHECK(f_tilde_egk(EGKDatum{{2}, {0}, {1}}) == BiLaurent::one());
    CHECK(f_tilde_egk(EGKDatum{{1, 1}, {0, 2}, {1, 1}}) ==
          BiLaurent::monomial(1, -2, 0) - BiLaurent::monomial(1, 0, -2) + BiLaurent::var_x());
}

TEST_CASE("degree-2 and degree-3 closed forms") {
    CHECK(deg2_closed(EGKDatum{{1, 1}, {0, 1}, {1, 0}}) == BiLaurent::one());
    CHECK(deg2_closed(EGKDatum{{2}, {0}, {1}}) == BiLaurent::one());
    CHECK(deg3_closed(EGKDatum{{3}, {0}, {1}}) == f_tilde_egk(EGKDatum{{3}, {0}, {1}}));
    CHECK_THROWS(deg2_closed(EGKDatum{{3}, {0}, {1}}));
    CHECK_THROWS(deg3_closed(EGKDatum{{2}, {0}, {1}}));
    for (const auto& g : all_egk_tuples(3, 4)) {
        if (!is_valid_egk(g)) continue;
        if (g.length() == 2) CHECK(deg2_closed(g) == f_tilde_egk(g));
        if (g.length() == 3) CHECK(deg3_closed(g) == f_tilde_egk(g));
    }
}
