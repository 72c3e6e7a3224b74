#pragma once

#include <optional>

#include "siegelkit/quadform.hpp"

namespace siegelkit {

struct DyadicCert {
    GKData gk;
    Involution sigma;
};

struct SiegelResult {
    BiLaurent f_tilde;            // Y kept symbolic, read at Y = sqrt(q)
    std::vector<Integer> f_poly;  // F coefficients, ascending, degree e_b
    long e_b = 0;
    int n = 0;
    long q = 0;
    EGKDatum egk;
};

// Normalizing factor evaluated at a rational point.
Rational gamma_q(int n, long q, int xi, const Rational& at);

// Full pipeline: EGK data of the matrix (Jordan splitting for odd p, the
// certified reduced path for p = 2), then the universal polynomial, then the
// polynomial F recovered through Y^2 -> q.
SiegelResult f_tilde_matrix(const HalfIntMat& b, const PrimeContext& ctx,
                            const std::optional<DyadicCert>& cert = std::nullopt);

// Same conversion for a bare EGK datum at a given q.
SiegelResult f_tilde_from_egk(const EGKDatum& g, long q);

// Independent odd-p path: recursion peeling the last diagonal entry of a
// sorted diagonal Jordan form. Y stays symbolic.
BiLaurent f_tilde_recursion_odd(const HalfIntMat& b, const PrimeContext& ctx);

// eta_B for odd n, +1 for even n; asserts the symmetry of the computed
// polynomial under X -> X^{-1}.
int functional_equation_sign(const HalfIntMat& b, const PrimeContext& ctx,
                             const std::optional<DyadicCert>& cert = std::nullopt);

}  // namespace siegelkit
