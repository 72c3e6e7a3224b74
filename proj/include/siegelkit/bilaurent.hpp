#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <variant>

#include "siegelkit/rational.hpp"

namespace siegelkit {

// Exponent pair in half-units: a key (hx, hy) denotes X^{hx/2} * Y^{hy/2}.
using ExpPair = std::pair<int, int>;

enum class Var { X, Y };

struct SubstInverse {};                 // X -> X^{-1} (resp. Y)
struct SubstScale { int hx; int hy; };  // X -> m*X with monomial m = X^{hx/2} Y^{hy/2}
struct SubstValue { Rational r; };      // X -> r
using Subst = std::variant<SubstInverse, SubstScale, SubstValue>;

struct ExactDivisionError : std::runtime_error {
    explicit ExactDivisionError(std::string what) : std::runtime_error(std::move(what)) {}
};

// Sparse Laurent polynomial in X^{1/2}, Y^{1/2} over Q. Zero coefficients are
// never stored; the zero polynomial is the empty map. Terms iterate in
// ascending lexicographic (hx, hy) order, which is also the canonical
// rendering order; the lex-greatest term is the leading term.
class BiLaurent {
  public:
    BiLaurent() = default;

    static BiLaurent constant(const Rational& c) { return monomial(c, 0, 0); }
    static BiLaurent monomial(const Rational& c, int hx, int hy) {
        BiLaurent b;
        if (c != 0) b.terms_[{hx, hy}] = c;
        return b;
    }
    static BiLaurent zero() { return {}; }
    static BiLaurent one() { return constant(1); }
    static BiLaurent var_x() { return monomial(1, 2, 0); }
    static BiLaurent var_y() { return monomial(1, 0, 2); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const std::map<ExpPair, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    const std::pair<const ExpPair, Rational>& leading() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    void add_term(int hx, int hy, const Rational& c);

    BiLaurent operator-() const;
    BiLaurent operator+(const BiLaurent& o) const;
    BiLaurent operator-(const BiLaurent& o) const;
    BiLaurent operator*(const BiLaurent& o) const;
    BiLaurent& operator+=(const BiLaurent& o) { return *this = *this + o; }
    BiLaurent& operator-=(const BiLaurent& o) { return *this = *this - o; }
    BiLaurent& operator*=(const BiLaurent& o) { return *this = *this * o; }
    bool operator==(const BiLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const BiLaurent& o) const { return !(*this == o); }
    // Lexicographic on the term map; gives BiLaurent a total order for use as
    // a container key. Not a ring-compatible order.
    bool operator<(const BiLaurent& o) const { return terms_ < o.terms_; }

    BiLaurent scale(const Rational& c) const;
    // Multiply by the monomial X^{hx/2} Y^{hy/2}.
    BiLaurent shift(int hx, int hy) const;

    // Raise a monomial (single term, coefficient 1) to the power num2/2.
    // Exponents must stay in half-units.
    BiLaurent monomial_pow_half(int num2) const;

    Rational eval(const Rational& x, const Rational& y) const;

    // Exact division in the Laurent ring; throws ExactDivisionError carrying a
    // rendering of the remainder when den does not divide *this.
    BiLaurent divide_exact(const BiLaurent& den) const;
    // Non-throwing variant; returns false and leaves rem = remainder on failure.
    bool try_divide(const BiLaurent& den, BiLaurent& quot, BiLaurent& rem) const;

    friend BiLaurent substitute(const BiLaurent& a, Var target, const Subst& image);

  private:
    std::map<ExpPair, Rational> terms_;
};

BiLaurent substitute(const BiLaurent& a, Var target, const Subst& image);

inline BiLaurent operator*(const Rational& c, const BiLaurent& b) { return b.scale(c); }

}  // namespace siegelkit
