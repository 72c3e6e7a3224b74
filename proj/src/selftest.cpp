#include "siegelkit/selftest.hpp"

#include <functional>
#include <iostream>
#include <random>

#include "siegelkit/oracle.hpp"

namespace siegelkit {

namespace {

bool check(std::ostream& out, const char* name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    return ok;
}

bool hilbert_grid() {
    for (long p : {2L, 3L, 5L, 7L}) {
        PrimeContext ctx(p);
        std::vector<Rational> sample = {1, -1, 2, -2, 3, -3, 5, -5, Rational(p), Rational(-p),
                                        Rational(2 * p), Rational(-2 * p)};
        for (const auto& a : sample)
            for (const auto& b : sample) {
                long e = 2 * ordp(ctx, 4 * a * b) + 3;
                if (hilbert(ctx, a, b) != hilbert_bruteforce(ctx, a, b, e)) return false;
            }
    }
    return true;
}

bool ring_axioms() {
    std::mt19937_64 rng(12345);
    auto rand_poly = [&]() {
        BiLaurent b;
        std::uniform_int_distribution<int> ex(-4, 4), coef(-5, 5);
        for (int t = 0; t < 4; ++t) b.add_term(ex(rng), ex(rng), coef(rng));
        return b;
    };
    for (int i = 0; i < 50; ++i) {
        BiLaurent a = rand_poly(), b = rand_poly(), c = rand_poly();
        if ((a * b) * c != a * (b * c)) return false;
        if (a * (b + c) != a * b + a * c) return false;
        if (substitute(substitute(a, Var::X, SubstInverse{}), Var::X, SubstInverse{}) != a)
            return false;
    }
    return true;
}

bool recursion_vs_closed() {
    // all valid naive data with n <= 3, a_i <= 2
    std::vector<NaiveEGK> all;
    for (int n = 1; n <= 3; ++n) {
        std::vector<long> a(n, 0);
        std::function<void(int)> rec_a = [&](int i) {
            if (i == n) {
                std::vector<int> eps(n, 0);
                std::function<void(int)> rec_e = [&](int j) {
                    if (j == n) {
                        NaiveEGK h{a, eps};
                        if (is_valid_naive(h)) all.push_back(h);
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
            for (long v = (i ? a[i - 1] : 0); v <= 2; ++v) {
                a[i] = v;
                rec_a(i + 1);
            }
        };
        rec_a(0);
    }
    for (const auto& h : all)
        if (f_recursive(h) != f_closed(h)) return false;
    return !all.empty();
}

bool lift_independence() {
    for (long m1 = 0; m1 <= 2; ++m1)
        for (long m2 = m1 + 1; m2 <= 3; ++m2)
            for (int z1 : {-1, 0, 1})
                for (int z2 : {-1, 0, 1}) {
                    EGKDatum g{{1, 2}, {m1, m2}, {z1, z2}};
                    if (!is_valid_egk(g)) continue;
                    auto lifts = lift(g, LiftMode::all);
                    BiLaurent f0 = f_recursive(lifts[0]);
                    for (const auto& h : lifts)
                        if (f_recursive(h) != f0) return false;
                }
    return true;
}

bool oracle_smoke() {
    PrimeContext p3(3);
    HalfIntMat b3 = HalfIntMat::diagonal({Rational(3)});
    DensityReport rep = verify(b3, p3);
    if (!rep.match) return false;
    PrimeContext p2(2);
    HalfIntMat hyp = HalfIntMat::hyperbolic_plane();
    DyadicCert cert{GKData{{0, 0}}, Involution({2, 1})};
    DensityReport rep2 = verify(hyp, p2, cert);
    return rep2.match;
}

}  // namespace

bool selftest(std::ostream& out) {
    bool ok = true;
    ok &= check(out, "hilbert symbol closed form vs brute force", hilbert_grid());
    ok &= check(out, "Laurent ring axioms and involutive substitution", ring_axioms());
    ok &= check(out, "recursion equals closed form (small exhaustive)", recursion_vs_closed());
    ok &= check(out, "lift independence (small exhaustive)", lift_independence());
    ok &= check(out, "oracle verification smoke", oracle_smoke());
    out << (ok ? "selftest passed" : "selftest FAILED") << "\n";
    return ok;
}

}  // namespace siegelkit
