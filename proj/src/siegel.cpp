#include "siegelkit/siegel.hpp"

namespace siegelkit {

Rational gamma_q(int n, long q, int xi, const Rational& at) {
    Rational out = 1 - at;
    const Rational q2(q);
    for (int i = 1; i <= n / 2; ++i) out *= 1 - pow_rat(q2, 2 * i) * at * at;
    if (n % 2 == 0) {
        Rational denom = 1 - pow_rat(q2, n / 2) * Rational(xi) * at;
        if (denom == 0) throw std::domain_error("gamma_q pole at the requested point");
        out /= denom;
    }
    return out;
}

namespace {

// F(B,T) = (q^{(n+1)/2} T)^{e_B/2} * F~(B, q^{(n+1)/2} T) with Y^2 -> q.
std::vector<Integer> recover_f_poly(const BiLaurent& f_tilde, int n, long q, long eb) {
    std::vector<Rational> coeff(static_cast<std::size_t>(eb) + 1, Rational(0));
    for (const auto& [e, c] : f_tilde.terms()) {
        const long hx = e.first, hy = e.second;
        if ((hx + eb) % 2 != 0 || hx + eb < 0 || hx > eb)
            throw std::runtime_error("f_tilde support escapes [-e_B/2, e_B/2]");
        const long tpow = (hx + eb) / 2;
        const long ypow = (n + 1) * (hx + eb) + hy;  // exponent of Y^{1/2}... in quarter-q units
        if (ypow % 4 != 0)
            throw std::runtime_error("half-power of q survives the F~ -> F substitution");
        coeff[static_cast<std::size_t>(tpow)] += c * pow_rat(Rational(q), ypow / 4);
    }
    std::vector<Integer> out;
    out.reserve(coeff.size());
    for (const auto& c : coeff) {
        if (!is_integer(c)) throw std::runtime_error("F has a non-integer coefficient");
        out.push_back(Integer(c.get_num()));
    }
    return out;
}

}  // namespace

SiegelResult f_tilde_from_egk(const EGKDatum& g, long q) {
    validate_egk(g);
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    SiegelResult r;
    r.egk = g;
    r.n = static_cast<int>(g.length());
    r.q = q;
    const std::vector<long> e = eseq(g.exponents());
    r.e_b = e[static_cast<std::size_t>(r.n)];
    r.f_tilde = f_tilde_egk(g);
    r.f_poly = recover_f_poly(r.f_tilde, r.n, q, r.e_b);
    return r;
}

SiegelResult f_tilde_matrix(const HalfIntMat& b, const PrimeContext& ctx,
                            const std::optional<DyadicCert>& cert) {
    validate(b, ctx);
    EGKDatum g;
    if (ctx.dyadic()) {
        if (!cert)
            throw ValidationError("p = 2 requires a reduced-form certificate (--gk/--sigma)");
        g = egk_from_reduced(b, cert->gk, cert->sigma, ctx);
    } else {
        g = egk_odd(b, ctx);
    }
    SiegelResult r = f_tilde_from_egk(g, ctx.p);
    const long eb_matrix = e_b(b, ctx);
    if (eb_matrix != r.e_b)
        throw std::runtime_error("e_B from the discriminant disagrees with the GK profile");
    return r;
}

BiLaurent f_tilde_recursion_odd(const HalfIntMat& b, const PrimeContext& ctx) {
    if (ctx.dyadic()) throw std::domain_error("f_tilde_recursion_odd requires p odd");
    validate(b, ctx);
    const int n = b.dim();
    std::vector<long> a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (i != j && b.at(i, j) != 0)
                throw std::invalid_argument("recursion path needs a diagonal matrix");
        a[i] = ordp(ctx, b.at(i, i));
    }
    for (int i = 1; i < n; ++i)
        if (a[i - 1] > a[i]) throw std::invalid_argument("diagonal not sorted by valuation");
    if (n == 1) {
        BiLaurent out;
        for (long i = 0; i <= a[0]; ++i) out.add_term(static_cast<int>(2 * i - a[0]), 0, 1);
        return out;
    }
    const std::vector<long> e = eseq(a);
    BiLaurent fp = f_tilde_recursion_odd(b.principal(n - 1), ctx);
    BiLaurent f_up = substitute(fp, Var::X, SubstScale{0, 2});
    BiLaurent f_dn = substitute(substitute(fp, Var::X, SubstScale{0, 2}), Var::X, SubstInverse{});
    RatFunc total;
    if (n % 2 == 1) {
        const int xi = xi_b(b.principal(n - 1), ctx);
        const int eta = eta_b(b, ctx);
        RatFunc d1 = c_i_at(1, e[n], e[n - 1], xi, BiLaurent::var_x());
        RatFunc d2 = c_i_at(1, e[n], e[n - 1], xi, BiLaurent::monomial(1, -2, 0));
        total = d1 * RatFunc(f_up) + Rational(eta) * (d2 * RatFunc(f_dn));
    } else {
        const int xi = xi_b(b, ctx);
        RatFunc c1 = c_i_at(2, e[n], e[n - 1], xi, BiLaurent::var_x());
        RatFunc c2 = c_i_at(2, e[n], e[n - 1], xi, BiLaurent::monomial(1, -2, 0));
        total = c1 * RatFunc(f_up) + c2 * RatFunc(f_dn);
    }
    return total.to_polynomial();
}

int functional_equation_sign(const HalfIntMat& b, const PrimeContext& ctx,
                             const std::optional<DyadicCert>& cert) {
    const int sign = (b.dim() % 2 == 1) ? eta_b(b, ctx) : 1;
    SiegelResult r = f_tilde_matrix(b, ctx, cert);
    BiLaurent flipped = substitute(r.f_tilde, Var::X, SubstInverse{});
    if (flipped != r.f_tilde.scale(Rational(sign)))
        throw std::runtime_error("functional equation fails (bug)");
    return sign;
}

}  // namespace siegelkit
