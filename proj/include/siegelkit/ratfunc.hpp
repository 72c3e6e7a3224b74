#pragma once

#include "siegelkit/bilaurent.hpp"

namespace siegelkit {

// Quotient of two BiLaurent values. Canonical form: the denominator's
// lex-greatest term has coefficient 1. No gcd reduction is performed;
// equality is tested by cross-multiplication.
class RatFunc {
  public:
    RatFunc() : num_(BiLaurent::zero()), den_(BiLaurent::one()) {}
    /* implicit */ RatFunc(BiLaurent n) : num_(std::move(n)), den_(BiLaurent::one()) {}
    RatFunc(BiLaurent n, BiLaurent d);

    static RatFunc one() { return RatFunc(BiLaurent::one()); }

    const BiLaurent& num() const { return num_; }
    const BiLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator+(const RatFunc& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    RatFunc operator-(const RatFunc& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    RatFunc operator*(const RatFunc& o) const { return {num_ * o.num_, den_ * o.den_}; }
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const { return {-num_, den_}; }
    bool operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // Exact conversion to a Laurent polynomial; throws ExactDivisionError if
    // the denominator does not divide the numerator.
    BiLaurent to_polynomial() const { return num_.divide_exact(den_); }

    RatFunc substituted(Var target, const Subst& image) const {
        return {substitute(num_, target, image), substitute(den_, target, image)};
    }

  private:
    void canonicalize();

    BiLaurent num_, den_;
};

inline RatFunc operator*(const Rational& c, const RatFunc& f) {
    return RatFunc(f.num().scale(c), f.den());
}

}  // namespace siegelkit
