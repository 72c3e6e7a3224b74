#include "siegelkit/bilaurent.hpp"

namespace siegelkit {

bool BiLaurent::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ExpPair{0, 0} &&
           terms_.begin()->second == 1;
}

void BiLaurent::add_term(int hx, int hy, const Rational& c) {
    if (c == 0) return;
    auto key = ExpPair{hx, hy};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

BiLaurent BiLaurent::operator-() const {
    BiLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

BiLaurent BiLaurent::operator+(const BiLaurent& o) const {
    BiLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
    return r;
}

BiLaurent BiLaurent::operator-(const BiLaurent& o) const {
    BiLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, -c);
    return r;
}

BiLaurent BiLaurent::operator*(const BiLaurent& o) const {
    BiLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
}

BiLaurent BiLaurent::scale(const Rational& c) const {
    BiLaurent r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

BiLaurent BiLaurent::shift(int hx, int hy) const {
    BiLaurent r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(ExpPair{e.first + hx, e.second + hy}, k);
    return r;
}

BiLaurent BiLaurent::monomial_pow_half(int num2) const {
    if (terms_.size() != 1 || terms_.begin()->second != 1)
        throw std::domain_error("monomial_pow_half needs a monic monomial");
    auto [hx, hy] = terms_.begin()->first;
    if ((hx * num2) % 2 != 0 || (hy * num2) % 2 != 0)
        throw std::domain_error("monomial power leaves half-unit lattice");
    return monomial(1, hx * num2 / 2, hy * num2 / 2);
}

Rational BiLaurent::eval(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        if (e.first % 2 != 0 || e.second % 2 != 0)
            throw std::domain_error("eval with half-integral exponent");
        acc += c * pow_rat(x, e.first / 2) * pow_rat(y, e.second / 2);
    }
    return acc;
}

bool BiLaurent::try_divide(const BiLaurent& den, BiLaurent& quot, BiLaurent& rem) const {
    if (den.is_zero()) throw std::domain_error("division by zero polynomial");
    quot = BiLaurent{};
    rem = *this;
    if (rem.is_zero()) return true;
    const auto& dlead = den.leading();
    // Subtracting (lead(rem)/lead(den))*den strictly lowers the lex-leading
    // term, and when den | num the generated quotient terms are exactly the
    // terms of the true quotient Q. Comparing lex-minimal (resp. hy-minimal)
    // terms of num = Q*den gives min(Q) = min(num) - min(den) component-wise,
    // so any quotient exponent escaping that lower bound proves inexactness;
    // the bound also forces termination for non-multiples.
    auto min_exps = [](const BiLaurent& b) {
        int mx = b.terms().begin()->first.first;  // lex order: begin() has minimal hx
        int my = b.terms().begin()->first.second;
        for (const auto& [e, c] : b.terms()) {
            (void)c;
            if (e.second < my) my = e.second;
        }
        return ExpPair{mx, my};
    };
    auto [nminx, nminy] = min_exps(rem);
    auto [dminx, dminy] = min_exps(den);
    const int min_hx_bound = nminx - dminx;
    const int min_hy_bound = nminy - dminy;
    while (!rem.is_zero()) {
        const auto& rlead = rem.leading();
        int qhx = rlead.first.first - dlead.first.first;
        int qhy = rlead.first.second - dlead.first.second;
        if (qhx < min_hx_bound || qhy < min_hy_bound) return false;
        Rational qc = rlead.second / dlead.second;
        quot.add_term(qhx, qhy, qc);
        rem -= den.shift(qhx, qhy).scale(qc);
    }
    return true;
}

BiLaurent BiLaurent::divide_exact(const BiLaurent& den) const {
    BiLaurent q, r;
    if (!try_divide(den, q, r)) {
        std::string msg = "non-exact Laurent division, remainder has " +
                          std::to_string(r.term_count()) + " term(s)";
        throw ExactDivisionError(msg);
    }
    return q;
}

BiLaurent substitute(const BiLaurent& a, Var target, const Subst& image) {
    BiLaurent r;
    if (std::holds_alternative<SubstInverse>(image)) {
        for (const auto& [e, c] : a.terms_) {
            if (target == Var::X)
                r.add_term(-e.first, e.second, c);
            else
                r.add_term(e.first, -e.second, c);
        }
        return r;
    }
    if (const auto* sc = std::get_if<SubstScale>(&image)) {
        // X -> m*X maps X^{hx/2} to m^{hx/2} X^{hx/2}.
        for (const auto& [e, c] : a.terms_) {
            int h = (target == Var::X) ? e.first : e.second;
            if ((sc->hx * h) % 2 != 0 || (sc->hy * h) % 2 != 0)
                throw std::domain_error("scale substitution leaves half-unit lattice");
            int dx = sc->hx * h / 2, dy = sc->hy * h / 2;
            r.add_term(e.first + dx, e.second + dy, c);
        }
        return r;
    }
    const auto& val = std::get<SubstValue>(image);
    Rational sqrt_r;
    bool have_sqrt = exact_sqrt(val.r, sqrt_r);
    for (const auto& [e, c] : a.terms_) {
        int h = (target == Var::X) ? e.first : e.second;
        Rational mult;
        if (h % 2 == 0) {
            mult = pow_rat(val.r, h / 2);
        } else if (have_sqrt) {
            mult = pow_rat(sqrt_r, h);
        } else {
            throw std::domain_error("value substitution needs a square root not exactly representable");
        }
        if (target == Var::X)
            r.add_term(0, e.second, c * mult);
        else
            r.add_term(e.first, 0, c * mult);
    }
    return r;
}

}  // namespace siegelkit
