#pragma once

#include <map>
#include <string>

#include "siegelkit/siegel.hpp"

namespace siegelkit {

struct ResourceError : std::runtime_error {
    explicit ResourceError(std::string what) : std::runtime_error(std::move(what)) {}
};

struct CountCaps {
    // p^{e*2k*n} bound for direct enumeration.
    double max_direct = 1e8;
    // p^{e*n(n+1)/2} state bound and p^{2en} per-plane tuple bound for the
    // convolution strategy.
    double max_states = double(1 << 22);
    double max_tuples = double(1 << 26);
    int threads = 1;
};

struct CountJob {
    long k;  // hyperbolic rank: m = 2k rows
    HalfIntMat b;
    long p;
    long e;  // precision exponent
    CountCaps caps;
};

struct DensityReport {
    std::map<long, Rational> alphas;   // k -> alpha_p(H_k, B)
    std::vector<Integer> f_interp;     // oracle-interpolated F, ascending
    std::vector<Integer> f_formula;    // formula-side F
    bool match = false;
    std::string detail;                // mismatch description, empty on match
};

// #X in (Z/p^e)^{2k x n} with H_k[X] = B as half-integral congruences mod p^e.
// Runs the convolution strategy, plus direct enumeration when within caps,
// and insists the two agree.
Integer count_reps(const CountJob& job);

// Counts for several k in one pass of the convolution strategy.
std::map<long, Integer> count_reps_many(const HalfIntMat& b, const PrimeContext& ctx, long e,
                                        const std::vector<long>& ks, const CountCaps& caps);

// alpha_p(H_k, B) at the stabilization precision e* = 2 ord(det 2B) + 1,
// recomputed at e*+1 and asserted equal.
Rational alpha(long k, const HalfIntMat& b, const PrimeContext& ctx, const CountCaps& caps = {});

// Exact Vandermonde solve of F at the points q^{-k}, k = n..n+e_B.
std::vector<Integer> interpolate_f(const HalfIntMat& b, const PrimeContext& ctx,
                                   const CountCaps& caps = {}, long max_k = -1);

DensityReport verify(const HalfIntMat& b, const PrimeContext& ctx,
                     const std::optional<DyadicCert>& cert = std::nullopt,
                     const CountCaps& caps = {}, long max_k = -1);

}  // namespace siegelkit
