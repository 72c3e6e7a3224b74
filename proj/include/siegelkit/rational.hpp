#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace siegelkit {

// Exact arithmetic lives on GMP. mpq_class is always canonical: reduced to
// lowest terms, positive denominator, zero stored as 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for possibly negative e; base must be nonzero when e < 0.
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::domain_error("0 to a negative power");
    Rational num(pow_int(Integer(base.get_num()), static_cast<unsigned long>(e < 0 ? -e : e)),
                 pow_int(Integer(base.get_den()), static_cast<unsigned long>(e < 0 ? -e : e)));
    num.canonicalize();
    if (e < 0) num = 1 / num;
    return num;
}

// Exact square root when it exists.
inline bool exact_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    Integer n = r.get_num(), d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    out = Rational(sn, sd);
    out.canonicalize();
    return true;
}

}  // namespace siegelkit
