#include "siegelkit/egk.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace siegelkit {

namespace {

// Sign power: only the parity of the exponent matters; a zero base must never
// reach this (guarded by the (N2)/(E2) nonvanishing clauses).
int spow(int z, long m) {
    if (z == 0) throw std::logic_error("sign power with zero base");
    return (m % 2 == 0) ? 1 : z;
}

bool in_z3(int z) { return z == -1 || z == 0 || z == 1; }

}  // namespace

long EGKDatum::length() const { return std::accumulate(n.begin(), n.end(), 0L); }

std::vector<long> EGKDatum::exponents() const {
    std::vector<long> a;
    for (std::size_t s = 0; s < n.size(); ++s)
        for (long i = 0; i < n[s]; ++i) a.push_back(m[s]);
    return a;
}

std::vector<long> eseq(const std::vector<long>& a) {
    std::vector<long> e(a.size() + 1, 0);
    long sum = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        sum += a[i - 1];
        e[i] = (i % 2 == 1) ? sum : 2 * (sum / 2);
    }
    return e;
}

void validate_naive(const NaiveEGK& h) {
    const std::size_t n = h.a.size();
    if (n == 0) throw ValidationError("naive EGK datum is empty");
    if (h.eps.size() != n) throw ValidationError("naive EGK datum: a/eps length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (h.a[i] < 0) throw ValidationError("naive EGK datum: negative a_" + std::to_string(i + 1));
        if (!in_z3(h.eps[i])) throw ValidationError("naive EGK datum: eps outside {-1,0,1}");
    }
    for (std::size_t i = 1; i < n; ++i)
        if (h.a[i - 1] > h.a[i]) throw ValidationError("(N1): a not non-decreasing");
    long sum = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        sum += h.a[i - 1];
        if (i % 2 == 0) {
            if ((h.eps[i - 1] != 0) != (sum % 2 == 0))
                throw ValidationError("(N2): eps_" + std::to_string(i) + " vanishing mismatch");
        } else if (h.eps[i - 1] == 0) {
            throw ValidationError("(N3): eps_" + std::to_string(i) + " = 0 at odd index");
        }
    }
    if (h.eps[0] != 1) throw ValidationError("(N4): eps_1 != 1");
    long s_prev = 0;  // a_1 + ... + a_{i-1}
    for (std::size_t i = 1; i <= n; ++i) {
        if (i >= 3 && i % 2 == 1 && s_prev % 2 == 0) {
            int expect = spow(h.eps[i - 2], h.a[i - 1] + h.a[i - 2]) * h.eps[i - 3];
            if (h.eps[i - 1] != expect)
                throw ValidationError("(N5): eps_" + std::to_string(i) + " chain mismatch");
        }
        s_prev += h.a[i - 1];
    }
}

bool is_valid_naive(const NaiveEGK& h) {
    try {
        validate_naive(h);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

void validate_egk(const EGKDatum& g) {
    const std::size_t r = g.n.size();
    if (r == 0) throw ValidationError("EGK datum is empty");
    if (g.m.size() != r || g.zeta.size() != r)
        throw ValidationError("EGK datum: component length mismatch");
    for (std::size_t s = 0; s < r; ++s) {
        if (g.n[s] < 1) throw ValidationError("(E1): n_s < 1");
        if (g.m[s] < 0) throw ValidationError("(E1): m_s < 0");
        if (s > 0 && g.m[s - 1] >= g.m[s]) throw ValidationError("(E1): m not strictly increasing");
        if (!in_z3(g.zeta[s])) throw ValidationError("EGK datum: zeta outside {-1,0,1}");
    }
    std::vector<long> nstar(r), w(r);  // n_s^*, and W_s = m_1 n_1 + ... + m_s n_s
    long acc = 0, wacc = 0;
    for (std::size_t s = 0; s < r; ++s) {
        acc += g.n[s];
        wacc += g.m[s] * g.n[s];
        nstar[s] = acc;
        w[s] = wacc;
    }
    for (std::size_t s = 0; s < r; ++s) {
        if (nstar[s] % 2 == 0) {
            if ((g.zeta[s] != 0) != (w[s] % 2 == 0))
                throw ValidationError("(E2): zeta_" + std::to_string(s + 1) + " vanishing mismatch");
        }
    }
    for (std::size_t s = 0; s < r; ++s) {
        if (nstar[s] % 2 != 1) continue;
        if (g.zeta[s] == 0)
            throw ValidationError("(E3): zeta_" + std::to_string(s + 1) + " = 0 at odd n_s^*");
        // t = largest index below s with odd block boundary (0-based; -1 if none).
        int t = -1;
        for (int i = static_cast<int>(s) - 1; i >= 0; --i)
            if (nstar[i] % 2 == 1) {
                t = i;
                break;
            }
        if (t == -1) {
            int expect = 1;
            for (std::size_t j = 0; j < s; ++j) expect *= spow(g.zeta[j], g.m[j + 1] + g.m[j]);
            if (g.zeta[s] != expect)
                throw ValidationError("(E3)(a): zeta_" + std::to_string(s + 1) + " product mismatch");
        } else {
            // Applies exactly when a_1 + ... + a_{n_s^*-1} is even.
            long guard = (s > 0 ? w[s - 1] : 0) + (g.n[s] - 1) * g.m[s];
            if (guard % 2 != 0) continue;
            int expect = g.zeta[t];
            for (std::size_t j = t + 1; j < s; ++j)
                expect *= spow(g.zeta[j], g.m[j + 1] + g.m[j]);
            if (g.zeta[s] != expect)
                throw ValidationError("(E3)(b): zeta_" + std::to_string(s + 1) + " chain mismatch");
        }
    }
}

bool is_valid_egk(const EGKDatum& g) {
    try {
        validate_egk(g);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

EGKDatum upsilon(const NaiveEGK& h) {
    validate_naive(h);
    EGKDatum g;
    std::size_t i = 0;
    while (i < h.a.size()) {
        std::size_t j = i;
        while (j < h.a.size() && h.a[j] == h.a[i]) ++j;
        g.n.push_back(static_cast<long>(j - i));
        g.m.push_back(h.a[i]);
        g.zeta.push_back(h.eps[j - 1]);
        i = j;
    }
    return g;
}

bool eps_prev_determined(const EGKDatum& g, int& out) {
    const std::size_t r = g.blocks();
    const std::vector<long> a = g.exponents();
    const std::size_t n = a.size();
    if (n < 2) return false;
    long total = std::accumulate(a.begin(), a.end(), 0L);
    if (g.n[r - 1] == 1) {  // a_{n-1} < a_n: position n-1 is the boundary of block r-1
        out = g.zeta[r - 2];
        return true;
    }
    if (n % 2 == 1) {
        if ((total - a[n - 1]) % 2 == 0) return false;  // exceptional case, eps_{n-1} free
        out = 0;
        return true;
    }
    if (total % 2 != 0) return false;  // exceptional case
    // n even, a_{n-1} = a_n, total even: apply the chain formula to the
    // length-(n-1) prefix datum, whose final boundary sits at odd position
    // n-1. Its guard parity equals that of total, so it always applies here.
    std::vector<long> nstar(r);
    long acc = 0;
    for (std::size_t s = 0; s < r; ++s) {
        acc += g.n[s];
        nstar[s] = acc;
    }
    int t = -1;
    for (int i = static_cast<int>(r) - 2; i >= 0; --i)
        if (nstar[i] % 2 == 1) {
            t = i;
            break;
        }
    int v = 1;
    std::size_t start = 0;
    if (t >= 0) {
        v = g.zeta[t];
        start = static_cast<std::size_t>(t) + 1;
    }
    for (std::size_t j = start; j + 1 < r; ++j) v *= spow(g.zeta[j], g.m[j + 1] + g.m[j]);
    out = v;
    return true;
}

std::vector<NaiveEGK> lift(const EGKDatum& g, LiftMode mode) {
    validate_egk(g);
    const std::vector<long> a = g.exponents();
    const std::size_t n = a.size();
    // boundary[i] = required eps at 1-based position i+1, or 2 when free.
    std::vector<int> boundary(n, 2);
    {
        long pos = 0;
        for (std::size_t s = 0; s < g.blocks(); ++s) {
            pos += g.n[s];
            boundary[pos - 1] = g.zeta[s];
        }
    }
    std::vector<NaiveEGK> found;
    std::vector<int> eps(n, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long sum) {
        if (!found.empty() && mode == LiftMode::one) return;
        if (i == n) {
            found.push_back(NaiveEGK{a, eps});
            return;
        }
        const std::size_t pos = i + 1;  // 1-based
        long sum_i = sum + a[i];
        std::vector<int> cand;
        if (pos == 1) {
            cand = {1};
        } else if (pos % 2 == 0) {
            if (sum_i % 2 == 0)
                cand = {1, -1};
            else
                cand = {0};
        } else if (sum % 2 == 0) {
            cand = {spow(eps[i - 1], a[i] + a[i - 1]) * eps[i - 2]};
        } else {
            cand = {1, -1};
        }
        for (int v : cand) {
            if (boundary[i] != 2 && boundary[i] != v) continue;
            eps[i] = v;
            rec(i + 1, sum_i);
        }
    };
    rec(0, 0);
    if (found.empty()) throw std::logic_error("no naive lift exists (contradicts surjectivity)");
    return found;
}

RatFunc c_i_at(int i, long e, long ee, int xi, const BiLaurent& xarg) {
    if (!in_z3(xi)) throw std::invalid_argument("xi outside {-1,0,1}");
    BiLaurent yhalf = BiLaurent::monomial(1, 0, static_cast<int>(ee));  // Y^{ee/2}
    if (i % 2 == 1) {
        BiLaurent num = yhalf * xarg.monomial_pow_half(static_cast<int>(ee - e));
        BiLaurent den = BiLaurent::one() - Rational(xi) * xarg;
        return {num, den};
    }
    BiLaurent num = yhalf * xarg.monomial_pow_half(static_cast<int>(ee - e - 2)) *
                    (BiLaurent::one() - Rational(xi) * (BiLaurent::monomial(1, 0, -2) * xarg));
    BiLaurent den = xarg.monomial_pow_half(-2) - xarg;
    return {num, den};
}

RatFunc c_func(long e, long ee, int xi) { return c_i_at(2, e, ee, xi, BiLaurent::var_x()); }
RatFunc d_func(long e, long ee, int xi) { return c_i_at(1, e, ee, xi, BiLaurent::var_x()); }
RatFunc c_i(int i, long e, long ee, int xi) { return c_i_at(i, e, ee, xi, BiLaurent::var_x()); }

namespace {

BiLaurent base_case(long a1) {
    BiLaurent b;
    for (long i = 0; i <= a1; ++i) b.add_term(static_cast<int>(2 * i - a1), 0, 1);
    return b;
}

BiLaurent f_rec_impl(const NaiveEGK& h) {
    const std::size_t n = h.size();
    if (n == 1) return base_case(h.a[0]);
    const std::vector<long> e = eseq(h.a);
    BiLaurent fp = f_rec_impl(h.prefix(n - 1));
    const int xi = (n % 2 == 0) ? h.eps[n - 1] : h.eps[n - 2];
    const int zeta = (n % 2 == 0) ? 1 : h.eps[n - 1];
    RatFunc c1 = c_i_at(static_cast<int>(n), e[n], e[n - 1], xi, BiLaurent::var_x());
    RatFunc c2 = c_i_at(static_cast<int>(n), e[n], e[n - 1], xi, BiLaurent::monomial(1, -2, 0));
    BiLaurent f_yx = substitute(fp, Var::X, SubstScale{0, 2});
    BiLaurent f_yxi = substitute(substitute(fp, Var::X, SubstScale{0, 2}), Var::X, SubstInverse{});
    RatFunc total = c1 * RatFunc(f_yx) + Rational(zeta) * (c2 * RatFunc(f_yxi));
    return total.to_polynomial();
}

// A denominator kept as a multiset of canonical primitive factors. A factor f
// decomposes as f = scal * X^{mx/2} Y^{my/2} * fhat with fhat having
// component-wise minimal exponents 0 and leading coefficient 1.
struct CanonFactor {
    BiLaurent fhat;
    int mx, my;
    Rational scal;
};

CanonFactor canonicalize_factor(const BiLaurent& f) {
    if (f.is_zero()) throw std::domain_error("zero denominator factor");
    int mx = f.terms().begin()->first.first;
    int my = f.terms().begin()->first.second;
    for (const auto& [ep, c] : f.terms()) {
        (void)c;
        my = std::min(my, ep.second);
    }
    BiLaurent fhat = f.shift(-mx, -my);
    Rational lc = fhat.leading().second;
    fhat = fhat.scale(1 / lc);
    return {fhat, mx, my, lc};
}

}  // namespace

BiLaurent f_recursive(const NaiveEGK& h) {
    validate_naive(h);
    return f_rec_impl(h);
}

BiLaurent f_closed(const NaiveEGK& h) {
    validate_naive(h);
    const int n = static_cast<int>(h.size());
    const std::vector<long> e = eseq(h.a);
    auto eps_at = [&](int j) { return (j == 0) ? 1 : h.eps[j - 1]; };  // eps_0 = 1

    struct Term {
        BiLaurent num;
        std::map<BiLaurent, int> den;
    };
    std::vector<Term> terms;
    std::map<BiLaurent, int> common;

    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sign(n + 1);
        for (int j = 1; j <= n; ++j) sign[j] = (mask & (1u << (j - 1))) ? 1 : -1;
        // s_j = i_j (1 + s_{j+1}), t_j = i_j t_{j+1}; argument of slot j is Y^{s_j} X^{t_j}.
        std::vector<long> s(n + 2, 0);
        std::vector<int> t(n + 2, 1);
        for (int j = n; j >= 1; --j) {
            s[j] = (j == n) ? 0 : sign[j] * (1 + s[j + 1]);
            t[j] = sign[j] * t[j + 1];
        }
        Term term;
        term.num = BiLaurent::one();
        Rational scal_acc(1);
        int sign_acc = 1;
        for (int j = 1; j <= n; ++j) {
            const int xi_j = (j % 2 == 0) ? eps_at(j) : eps_at(j - 1);
            if (j % 2 == 1 && sign[j] == -1) sign_acc *= eps_at(j);  // eta_j^{(1-i_j)/2}
            BiLaurent arg = BiLaurent::monomial(1, 2 * t[j], static_cast<int>(2 * s[j]));
            RatFunc f = c_i_at(j, e[j], e[j - 1], xi_j, arg);
            term.num *= f.num();
            CanonFactor cf = canonicalize_factor(f.den());
            scal_acc *= cf.scal;
            term.num = term.num.shift(-cf.mx, -cf.my);
            if (!cf.fhat.is_one()) term.den[cf.fhat] += 1;
        }
        term.num = term.num.scale(Rational(sign_acc) / scal_acc);
        for (const auto& [f, k] : term.den) {
            auto it = common.find(f);
            if (it == common.end())
                common.emplace(f, k);
            else
                it->second = std::max(it->second, k);
        }
        terms.push_back(std::move(term));
    }

    BiLaurent total;
    for (auto& term : terms) {
        BiLaurent num = std::move(term.num);
        for (const auto& [f, k] : common) {
            auto it = term.den.find(f);
            int have = (it == term.den.end()) ? 0 : it->second;
            for (int i = have; i < k; ++i) num *= f;
        }
        total += num;
    }
    for (const auto& [f, k] : common)
        for (int i = 0; i < k; ++i) total = total.divide_exact(f);
    return total;
}

bool f_skip2_applicable(const NaiveEGK& h) {
    const std::size_t n = h.size();
    if (n < 3) return false;
    if (h.a[n - 2] != h.a[n - 1]) return false;
    long total = std::accumulate(h.a.begin(), h.a.end(), 0L);
    if (n % 2 == 1) return (total - h.a[n - 1]) % 2 == 0;
    return total % 2 == 1;
}

BiLaurent f_skip2(const NaiveEGK& h) {
    validate_naive(h);
    if (!f_skip2_applicable(h)) throw std::domain_error("skip-two identity not applicable");
    const std::size_t n = h.size();
    const std::vector<long> e = eseq(h.a);
    BiLaurent f2 = (n == 2) ? BiLaurent::one() : f_rec_impl(h.prefix(n - 2));
    BiLaurent f2_up = substitute(f2, Var::X, SubstScale{0, 4});  // X -> Y^2 X
    BiLaurent f2_dn = substitute(substitute(f2, Var::X, SubstScale{0, 4}), Var::X, SubstInverse{});
    const int dh = static_cast<int>(e[n] - e[n - 2]);  // even here
    if (n % 2 == 1) {
        const int eps_n = h.eps[n - 1];
        BiLaurent dyx = BiLaurent::monomial(1, -2, -2) - BiLaurent::monomial(1, 2, 2);
        BiLaurent dyxi = BiLaurent::monomial(1, 2, -2) - BiLaurent::monomial(1, -2, 2);
        RatFunc t1(BiLaurent::monomial(1, -dh - 2, 0) * f2_up, dyx);
        RatFunc t2(Rational(eps_n) * BiLaurent::monomial(1, dh + 2, 0) * f2_dn, dyxi);
        BiLaurent y2my2 = BiLaurent::monomial(1, 0, 4) - BiLaurent::monomial(1, 0, -4);
        RatFunc t3(BiLaurent::monomial(Rational(eps_n), 0, static_cast<int>(2 * e[n - 1])) * y2my2 * f2,
                   dyx * dyxi);
        RatFunc total = RatFunc(BiLaurent::monomial(1, 0, static_cast<int>(2 * (e[n - 2] - 1)))) *
                            (t1 + t2) +
                        t3;
        return total.to_polynomial();
    }
    BiLaurent dx = BiLaurent::monomial(1, -2, 0) - BiLaurent::monomial(1, 2, 0);
    RatFunc t1(BiLaurent::monomial(1, -dh - 2, 0) * f2_up, dx);
    RatFunc t2(BiLaurent::monomial(1, dh + 2, 0) * f2_dn, -dx);
    RatFunc total = RatFunc(BiLaurent::monomial(1, 0, static_cast<int>(2 * e[n - 2]))) * (t1 + t2);
    return total.to_polynomial();
}

BiLaurent f_tilde_egk(const EGKDatum& g) {
    auto lifts = lift(g, LiftMode::one);
    return f_rec_impl(lifts.front());
}

BiLaurent deg2_closed(const EGKDatum& g) {
    validate_egk(g);
    if (g.length() != 2) throw std::invalid_argument("deg2_closed needs an EGK datum of length 2");
    const std::vector<long> a = g.exponents();
    const std::vector<long> e = eseq(a);
    const int xi = (g.blocks() == 1) ? g.zeta[0] : g.zeta[1];
    BiLaurent out;
    for (long i = 0; i <= e[1]; ++i)
        for (long j = 0; 2 * j <= e[2] - 2 * i; ++j)
            out.add_term(static_cast<int>(-e[2] + 2 * i + 4 * j), static_cast<int>(2 * i), 1);
    if (xi != 0) {
        for (long i = 0; i <= e[1]; ++i)
            for (long j = 0; 2 * j <= e[2] - 2 * i - 2; ++j)
                out.add_term(static_cast<int>(-e[2] + 2 * i + 2 + 4 * j), static_cast<int>(2 * (i - 1)),
                             -xi);
    }
    return out;
}

BiLaurent deg3_closed(const EGKDatum& g) {
    validate_egk(g);
    if (g.length() != 3) throw std::invalid_argument("deg3_closed needs an EGK datum of length 3");
    const std::vector<long> a = g.exponents();
    const long e1 = a[0];
    const long e3 = a[0] + a[1] + a[2];
    const long e2p = 2 * ((a[0] + a[1] + 1) / 2);
    int xi, eta;
    const auto& nb = g.n;
    if (nb.size() == 3) {  // (1,1,1)
        xi = g.zeta[1];
        eta = g.zeta[2];
    } else if (nb.size() == 2 && nb[0] == 1) {  // (1,2)
        xi = ((a[0] + a[1]) % 2 == 0) ? 1 : 0;
        eta = g.zeta[1];
    } else if (nb.size() == 2) {  // (2,1)
        xi = g.zeta[0];
        eta = g.zeta[1];
    } else {  // (3)
        xi = ((a[0] + a[1]) % 2 == 0) ? 1 : 0;
        eta = 1;
    }
    BiLaurent out;
    for (long i = 0; i <= e1; ++i)
        for (long j = 0; j <= e2p / 2 - i - 1; ++j)
            out.add_term(static_cast<int>(-e3 + 2 * i + 4 * j), static_cast<int>(4 * i + 4 * j), 1);
    for (long i = 0; i <= e1; ++i)
        for (long j = 0; j <= e2p / 2 - i - 1; ++j)
            out.add_term(static_cast<int>(e3 - 2 * i - 4 * j), static_cast<int>(4 * i + 4 * j), eta);
    if (xi != 0) {
        for (long j = 0; j <= e3 - 2 * e2p + e1; ++j) {
            const int cj = (j % 2 == 0) ? 1 : xi;
            for (long i = 0; i <= e1; ++i)
                out.add_term(static_cast<int>(-e3 + 2 * (e2p - e1) + 2 * j + 2 * i),
                             static_cast<int>(2 * e2p), cj);
        }
    }
    return out;
}

}  // namespace siegelkit
