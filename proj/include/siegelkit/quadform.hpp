#pragma once

#include <vector>

#include "siegelkit/egk.hpp"
#include "siegelkit/localfield.hpp"

namespace siegelkit {

// Symmetric matrix of exact rationals; half-integrality is a per-prime
// property checked by validate().
class HalfIntMat {
  public:
    HalfIntMat(int n, std::vector<Rational> entries);
    static HalfIntMat diagonal(const std::vector<Rational>& d);
    static HalfIntMat hyperbolic_plane();

    int dim() const { return n_; }
    const Rational& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    Rational& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    Rational det() const;
    HalfIntMat principal(int k) const;  // upper-left k x k block
    // Congruence transform B[U] = U^T B U; U given row-major, n x n.
    HalfIntMat transformed(const std::vector<Rational>& u) const;
    HalfIntMat operator+(const HalfIntMat& o) const;
    bool operator==(const HalfIntMat& o) const { return n_ == o.n_ && e_ == o.e_; }

  private:
    int n_;
    std::vector<Rational> e_;
};

struct JordanForm {
    // (exponent, unit) pairs sorted by non-decreasing exponent.
    std::vector<std::pair<long, Rational>> pairs;
};

struct GKData {
    std::vector<long> a;  // non-decreasing
    bool operator==(const GKData& o) const { return a == o.a; }
};

// Involution of {1..n} stored as a 1-based image array.
struct Involution {
    std::vector<int> sigma;

    explicit Involution(std::vector<int> img);
    int size() const { return static_cast<int>(sigma.size()); }
    int operator()(int i) const { return sigma[i - 1]; }  // 1-based
};

enum class Category { I, II };

// Half-integrality at p plus non-degeneracy; error names entry and condition.
void validate(const HalfIntMat& b, const PrimeContext& ctx);

Rational d_b(const HalfIntMat& b, const PrimeContext& ctx);
int xi_b(const HalfIntMat& b, const PrimeContext& ctx);    // {-1,0,+1}
long e_b(const HalfIntMat& b, const PrimeContext& ctx);    // >= 0
int eps_b(const HalfIntMat& b, const PrimeContext& ctx);   // {+-1}
int eta_b(const HalfIntMat& b, const PrimeContext& ctx);   // {+-1}

// Rational congruence diagonalization (no p-integrality); strategy 1 pivots
// in index order, strategy 2 in reverse, for independence checks.
std::vector<Rational> diagonalize(const HalfIntMat& b, int strategy = 0);

// Diagonal Jordan splitting over Z_p, p odd: B[U] = diag(p^{a_i} u_i) with
// the exponents sorted non-decreasingly, U p-integral with unit determinant.
std::pair<JordanForm, std::vector<Rational>> jordan_odd(const HalfIntMat& b,
                                                        const PrimeContext& ctx);

GKData gk_odd(const HalfIntMat& b, const PrimeContext& ctx);
EGKDatum egk_odd(const HalfIntMat& b, const PrimeContext& ctx);

// Def 3.3 clauses (i)-(iv); throws naming the violated clause.
void check_admissible(const GKData& a, const Involution& sigma);

// Def 3.5 clauses (1)-(3) plus membership in M(ua); requires p = 2.
void check_reduced(const HalfIntMat& b, const GKData& a, const Involution& sigma,
                   const PrimeContext& ctx);

// EGK datum of a certified reduced form (its GK invariant is a, Thm 3.1).
EGKDatum egk_from_reduced(const HalfIntMat& b, const GKData& a, const Involution& sigma,
                          const PrimeContext& ctx);

Category category(const GKData& a, const Involution& sigma);

}  // namespace siegelkit
