#include "siegelkit/localfield.hpp"

#include <cstdint>
#include <vector>

namespace siegelkit {

PrimeContext::PrimeContext(long prime) : p(prime), e0(prime == 2 ? 1 : 0) {
    if (prime < 2) throw std::invalid_argument("p must be a prime >= 2");
    Integer z(prime);
    if (mpz_probab_prime_p(z.get_mpz_t(), 32) == 0)
        throw std::invalid_argument("p = " + std::to_string(prime) + " is not prime");
}

long ordp_int(const PrimeContext& ctx, const Integer& a) {
    if (a == 0) return kOrdInfinity;
    Integer rest, pz(ctx.p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t()));
}

long ordp(const PrimeContext& ctx, const Rational& a) {
    if (a == 0) return kOrdInfinity;
    return ordp_int(ctx, Integer(a.get_num())) - ordp_int(ctx, Integer(a.get_den()));
}

Rational unit_part(const PrimeContext& ctx, const Rational& a) {
    if (a == 0) throw std::domain_error("unit part of 0");
    long v = ordp(ctx, a);
    Rational r = a * pow_rat(Rational(ctx.p), -v);
    return r;
}

Integer unit_mod(const PrimeContext& ctx, const Rational& a, unsigned long k) {
    Integer m = pow_int(Integer(ctx.p), k);
    Integer num = a.get_num(), den = a.get_den();
    Integer dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible mod p^k");
    Integer r = (num * dinv) % m;
    if (r < 0) r += m;
    return r;
}

int legendre_unit(const PrimeContext& ctx, const Rational& u) {
    if (ctx.p == 2) throw std::domain_error("Legendre symbol needs odd p");
    if (ordp(ctx, u) != 0) throw std::domain_error("Legendre symbol of a non-unit");
    Integer r = unit_mod(ctx, u, 1);
    Integer pz(ctx.p);
    int j = mpz_legendre(r.get_mpz_t(), pz.get_mpz_t());
    return j;
}

int hilbert(const PrimeContext& ctx, const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) throw std::domain_error("Hilbert symbol of 0");
    long alpha = ordp(ctx, a), beta = ordp(ctx, b);
    Rational u = unit_part(ctx, a), v = unit_part(ctx, b);
    if (ctx.p != 2) {
        int sign = 1;
        if ((alpha & 1) && (beta & 1) && ((ctx.p - 1) / 2) % 2 == 1) sign = -sign;
        if (beta & 1) sign *= legendre_unit(ctx, u);
        if (alpha & 1) sign *= legendre_unit(ctx, v);
        return sign;
    }
    long u8 = unit_mod(ctx, u, 3).get_si();
    long v8 = unit_mod(ctx, v, 3).get_si();
    auto eps = [](long x8) { return (x8 % 4 == 3) ? 1 : 0; };      // (x-1)/2 mod 2
    auto omega = [](long x8) { return (x8 == 3 || x8 == 5) ? 1 : 0; };  // (x^2-1)/8 mod 2
    long expo = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
    return (expo % 2 == 0) ? 1 : -1;
}

int hilbert_bruteforce(const PrimeContext& ctx, const Rational& a, const Rational& b, long e) {
    if (a == 0 || b == 0) throw std::domain_error("Hilbert symbol of 0");
    if (e < 1) throw std::invalid_argument("precision e must be >= 1");
    // Clear denominators within the square class: a*den(a)^2 = num*den.
    Integer ai = Integer(a.get_num()) * Integer(a.get_den());
    Integer bi = Integer(b.get_num()) * Integer(b.get_den());
    Integer mz = pow_int(Integer(ctx.p), static_cast<unsigned long>(e));
    if (mz > Integer(1) << 26) throw std::invalid_argument("p^e too large for brute force");
    const std::uint64_t m = mz.get_ui();
    auto mod = [&](const Integer& x) {
        Integer r = x % mz;
        if (r < 0) r += mz;
        return r.get_ui();
    };
    const std::uint64_t am = mod(ai), bm = mod(bi);
    // A primitive solution has a unit coordinate; scale it to 1. Three cases:
    // x = 1: a + b t^2 = s^2;  y = 1: a t^2 + b = s^2;  z = 1: a t^2 + b s^2 = 1.
    std::vector<char> sq(m, 0), bsq(m, 0);
    for (std::uint64_t s = 0; s < m; ++s) {
        std::uint64_t s2 = (s * s) % m;
        sq[s2] = 1;
        bsq[(bm * s2) % m] = 1;
    }
    for (std::uint64_t t = 0; t < m; ++t) {
        std::uint64_t t2 = (t * t) % m;
        if (sq[(am + bm * t2) % m]) return 1;
        if (sq[(am * t2 + bm) % m]) return 1;
        if (bsq[(1 + m - (am * t2) % m) % m]) return 1;
    }
    return -1;
}

QuadExtKind quad_ext(const PrimeContext& ctx, const Rational& d) {
    if (d == 0) throw std::domain_error("quad_ext of 0");
    long v = ordp(ctx, d);
    Rational u = unit_part(ctx, d);
    if (ctx.p != 2) {
        if (v % 2 != 0) return QuadExtKind::ramified;
        return legendre_unit(ctx, u) == 1 ? QuadExtKind::split : QuadExtKind::unramified;
    }
    long u8 = unit_mod(ctx, u, 3).get_si();
    if (v % 2 != 0) return QuadExtKind::ramified;
    if (u8 == 1) return QuadExtKind::split;
    if (u8 == 5) return QuadExtKind::unramified;
    return QuadExtKind::ramified;
}

long disc_valuation(const PrimeContext& ctx, const Rational& d) {
    switch (quad_ext(ctx, d)) {
        case QuadExtKind::split:
        case QuadExtKind::unramified:
            return 0;
        case QuadExtKind::ramified:
            break;
    }
    if (ctx.p != 2) return 1;
    long v = ordp(ctx, d);
    if (v % 2 != 0) return 3;
    return 2;  // unit part = 3 mod 4
}

long conductor_check(const PrimeContext& ctx, const Rational& d) {
    if (d == 0) throw std::domain_error("conductor of 0");
    const long cap = disc_valuation(ctx, d) + 2;
    for (long f = 0; f <= cap; ++f) {
        Integer pf = pow_int(Integer(ctx.p), static_cast<unsigned long>(f));
        // Sampling depth f+2 is short by one at p = 2, f = 0: the symbol
        // depends on z mod 8 while p^{f+2} = 4.
        Integer mod = pow_int(Integer(ctx.p), static_cast<unsigned long>(f + 2 + ctx.e0));
        bool trivial = true;
        for (Integer z = 1; z < mod && trivial; z += pf) {
            if (z % ctx.p == 0) continue;
            if (hilbert(ctx, Rational(z), d) != 1) trivial = false;
        }
        if (trivial) return f;
    }
    throw std::runtime_error("conductor exceeds disc_valuation + 2 (bug)");
}

}  // namespace siegelkit
