#include "siegelkit/ratfunc.hpp"

namespace siegelkit {

RatFunc::RatFunc(BiLaurent n, BiLaurent d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    const Rational& lc = den_.leading().second;
    if (lc != 1) {
        Rational inv = 1 / lc;
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    return {num_ * o.den_, den_ * o.num_};
}

}  // namespace siegelkit
