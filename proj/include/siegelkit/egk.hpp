#pragma once

#include <string>
#include <vector>

#include "siegelkit/ratfunc.hpp"

namespace siegelkit {

struct ValidationError : std::runtime_error {
    explicit ValidationError(std::string what) : std::runtime_error(std::move(what)) {}
};

// Per-index datum (a_1..a_n; eps_1..eps_n), eps_i in {-1,0,+1}.
struct NaiveEGK {
    std::vector<long> a;
    std::vector<int> eps;

    std::size_t size() const { return a.size(); }
    NaiveEGK prefix(std::size_t k) const {
        return {std::vector<long>(a.begin(), a.begin() + k),
                std::vector<int>(eps.begin(), eps.begin() + k)};
    }
    bool operator==(const NaiveEGK& o) const { return a == o.a && eps == o.eps; }
};

// Block datum (n_1..n_r; m_1..m_r; zeta_1..zeta_r).
struct EGKDatum {
    std::vector<long> n;
    std::vector<long> m;
    std::vector<int> zeta;

    std::size_t blocks() const { return n.size(); }
    long length() const;
    // Expanded exponent sequence (m_s repeated n_s times).
    std::vector<long> exponents() const;
    bool operator==(const EGKDatum& o) const { return n == o.n && m == o.m && zeta == o.zeta; }
};

// e_0..e_n of a (partial sums, rounded down to even at even indices).
std::vector<long> eseq(const std::vector<long>& a);

// Def 4.1 clauses (N1)-(N5); throws ValidationError naming the first failure.
void validate_naive(const NaiveEGK& h);
bool is_valid_naive(const NaiveEGK& h);

// Def 4.5 clauses (E1)-(E3) including both zeta product formulas.
void validate_egk(const EGKDatum& g);
bool is_valid_egk(const EGKDatum& g);

// Block projection: zeta_s = eps at each block boundary.
EGKDatum upsilon(const NaiveEGK& h);

enum class LiftMode { one, all };

// Inverse images of upsilon: naive data with the given block structure and
// boundary signs, enumerated by backtracking over (N1)-(N5).
std::vector<NaiveEGK> lift(const EGKDatum& g, LiftMode mode);

// Closed-form determination of eps_{n-1} for a lift of g, when unique
// (everywhere except the two exceptional cases); nullopt-like: returns true
// and sets out when determined.
bool eps_prev_determined(const EGKDatum& g, int& out);

// The two building-block rational functions, with the X slot substituted by
// an integral monic monomial xarg (X itself by default).
RatFunc c_func(long e, long ee, int xi);
RatFunc d_func(long e, long ee, int xi);
RatFunc c_i(int i, long e, long ee, int xi);
RatFunc c_i_at(int i, long e, long ee, int xi, const BiLaurent& xarg);

// Laurent polynomial attached to a naive datum: two-term recursion peeling
// the last index.
BiLaurent f_recursive(const NaiveEGK& h);

// Same value as a sum of 2^n products over sign tuples.
BiLaurent f_closed(const NaiveEGK& h);

// Skip-two identities (odd n three-term / even n two-term); defined exactly
// when a_{n-1} = a_n and the relevant partial sum parity holds. Used to
// cross-check f_recursive.
bool f_skip2_applicable(const NaiveEGK& h);
BiLaurent f_skip2(const NaiveEGK& h);

// Well-defined polynomial of an EGK datum (any lift gives the same value).
BiLaurent f_tilde_egk(const EGKDatum& g);

// Direct evaluation of the degree-2 / degree-3 closed forms.
BiLaurent deg2_closed(const EGKDatum& g);
BiLaurent deg3_closed(const EGKDatum& g);

}  // namespace siegelkit
