#pragma once

#include <limits>

#include "siegelkit/rational.hpp"

namespace siegelkit {

// ord(0) = +infinity, larger than every finite valuation.
inline constexpr long kOrdInfinity = std::numeric_limits<long>::max();

struct PrimeContext {
    long p;
    int e0;  // ord_p(2): 1 for p = 2, else 0

    explicit PrimeContext(long prime);
    bool dyadic() const { return p == 2; }
};

enum class QuadExtKind { split, unramified, ramified };

// p-adic valuation of a rational; ordp(0) = kOrdInfinity.
long ordp(const PrimeContext& ctx, const Rational& a);
long ordp_int(const PrimeContext& ctx, const Integer& a);

// Unit part: a / p^ordp(a); requires a != 0.
Rational unit_part(const PrimeContext& ctx, const Rational& a);

// Residue of a p-adic unit (or integer) modulo p^k, as an integer in [0, p^k).
Integer unit_mod(const PrimeContext& ctx, const Rational& a, unsigned long k);

// Legendre symbol of a p-adic unit, p odd.
int legendre_unit(const PrimeContext& ctx, const Rational& u);

// Hilbert symbol <a,b> on Q_p via the classical closed forms
// (valuation/Legendre for odd p, mod-8 classification for p = 2).
int hilbert(const PrimeContext& ctx, const Rational& a, const Rational& b);

// Independent oracle: +1 iff z^2 = a x^2 + b y^2 has a primitive solution
// modulo p^e after clearing square denominators. A true decision procedure
// once e >= 2 ord(4ab) + 3.
int hilbert_bruteforce(const PrimeContext& ctx, const Rational& a, const Rational& b, long e);

// Splitting type of Q_p(sqrt(d))/Q_p.
QuadExtKind quad_ext(const PrimeContext& ctx, const Rational& d);

// ord of the discriminant ideal of Q_p(sqrt(d))/Q_p.
long disc_valuation(const PrimeContext& ctx, const Rational& d);

// Smallest f >= 0 with <z,d> = +1 for every unit z = 1 mod p^f, found by
// sampling all residues mod p^{f+2}. Must equal disc_valuation for
// nonsquare d.
long conductor_check(const PrimeContext& ctx, const Rational& d);

}  // namespace siegelkit
