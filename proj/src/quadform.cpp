#include "siegelkit/quadform.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace siegelkit {

HalfIntMat::HalfIntMat(int n, std::vector<Rational> entries) : n_(n), e_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (e_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("matrix entry count mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at(i, j) != at(j, i)) throw std::invalid_argument("matrix not symmetric");
}

HalfIntMat HalfIntMat::diagonal(const std::vector<Rational>& d) {
    int n = static_cast<int>(d.size());
    std::vector<Rational> e(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = d[i];
    return {n, std::move(e)};
}

HalfIntMat HalfIntMat::hyperbolic_plane() {
    return {2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)}};
}

Rational HalfIntMat::det() const {
    std::vector<Rational> m = e_;
    const int n = n_;
    Rational d(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[static_cast<std::size_t>(r) * n + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(piv) * n + j],
                          m[static_cast<std::size_t>(col) * n + j]);
            d = -d;
        }
        const Rational& p = m[static_cast<std::size_t>(col) * n + col];
        d *= p;
        for (int r = col + 1; r < n; ++r) {
            Rational f = m[static_cast<std::size_t>(r) * n + col] / p;
            if (f == 0) continue;
            for (int j = col; j < n; ++j)
                m[static_cast<std::size_t>(r) * n + j] -= f * m[static_cast<std::size_t>(col) * n + j];
        }
    }
    return d;
}

HalfIntMat HalfIntMat::principal(int k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("principal block size out of range");
    std::vector<Rational> e;
    e.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) e.push_back(at(i, j));
    return {k, std::move(e)};
}

HalfIntMat HalfIntMat::transformed(const std::vector<Rational>& u) const {
    const int n = n_;
    if (u.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("transform size mismatch");
    std::vector<Rational> bu(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational acc(0);
            for (int k = 0; k < n; ++k) acc += at(i, k) * u[static_cast<std::size_t>(k) * n + j];
            bu[static_cast<std::size_t>(i) * n + j] = acc;
        }
    std::vector<Rational> out(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational acc(0);
            for (int k = 0; k < n; ++k) acc += u[static_cast<std::size_t>(k) * n + i] * bu[static_cast<std::size_t>(k) * n + j];
            out[static_cast<std::size_t>(i) * n + j] = acc;
        }
    return {n, std::move(out)};
}

HalfIntMat HalfIntMat::operator+(const HalfIntMat& o) const {
    if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
    std::vector<Rational> e(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e[i] = e_[i] + o.e_[i];
    return {n_, std::move(e)};
}

Involution::Involution(std::vector<int> img) : sigma(std::move(img)) {
    const int n = static_cast<int>(sigma.size());
    for (int i = 1; i <= n; ++i) {
        int s = sigma[i - 1];
        if (s < 1 || s > n) throw std::invalid_argument("involution image out of range");
        if (sigma[s - 1] != i) throw std::invalid_argument("permutation is not an involution");
    }
}

void validate(const HalfIntMat& b, const PrimeContext& ctx) {
    const int n = b.dim();
    for (int i = 0; i < n; ++i) {
        if (ordp(ctx, b.at(i, i)) < 0)
            throw ValidationError("entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                  "): ord(b_ii) < 0");
        for (int j = i + 1; j < n; ++j)
            if (ordp(ctx, 2 * b.at(i, j)) < 0)
                throw ValidationError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      "): ord(2 b_ij) < 0");
    }
    if (b.det() == 0) throw ValidationError("matrix is degenerate");
}

Rational d_b(const HalfIntMat& b, const PrimeContext& ctx) {
    (void)ctx;
    Rational d = b.det();
    if (d == 0) throw ValidationError("matrix is degenerate");
    return pow_rat(Rational(-4), b.dim() / 2) * d;
}

int xi_b(const HalfIntMat& b, const PrimeContext& ctx) {
    switch (quad_ext(ctx, d_b(b, ctx))) {
        case QuadExtKind::split:
            return 1;
        case QuadExtKind::unramified:
            return -1;
        case QuadExtKind::ramified:
            return 0;
    }
    return 0;
}

long e_b(const HalfIntMat& b, const PrimeContext& ctx) {
    Rational d = d_b(b, ctx);
    long v = ordp(ctx, d);
    if (b.dim() % 2 == 0) return v - disc_valuation(ctx, d);
    return v;
}

std::vector<Rational> diagonalize(const HalfIntMat& b, int strategy) {
    const int n = b.dim();
    std::vector<Rational> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = b.at(i, j);
    auto mm = [&](int i, int j) -> Rational& { return m[static_cast<std::size_t>(i) * n + j]; };
    std::vector<Rational> diag;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (strategy == 1) std::reverse(order.begin(), order.end());
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i : order)
            if (!used[i] && mm(i, i) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // all remaining diagonal entries vanish; create one
            int a = -1, bj = -1;
            for (int i : order) {
                if (used[i] || a >= 0) continue;
                for (int j : order)
                    if (!used[j] && j != i && mm(i, j) != 0) {
                        a = i;
                        bj = j;
                        break;
                    }
            }
            if (a < 0) throw ValidationError("matrix is degenerate");
            // e_a += e_b: row/col update
            for (int j = 0; j < n; ++j) mm(a, j) += mm(bj, j);
            for (int i = 0; i < n; ++i) mm(i, a) += mm(i, bj);
            piv = a;
        }
        used[piv] = true;
        Rational p = mm(piv, piv);
        diag.push_back(p);
        for (int i = 0; i < n; ++i) {
            if (used[i] || i == piv) continue;
            Rational f = mm(piv, i) / p;
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) mm(i, j) -= f * mm(piv, j);
            for (int j = 0; j < n; ++j) mm(j, i) -= f * mm(j, piv);
        }
    }
    return diag;
}

int eps_b(const HalfIntMat& b, const PrimeContext& ctx) {
    std::vector<Rational> d = diagonalize(b);
    int s = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) s *= hilbert(ctx, d[i], d[j]);
    return s;
}

int eta_b(const HalfIntMat& b, const PrimeContext& ctx) {
    const int n = b.dim();
    const Rational det = b.det();
    if (det == 0) throw ValidationError("matrix is degenerate");
    const int m = n / 2;
    int s = eps_b(b, ctx);
    const int h11 = hilbert(ctx, Rational(-1), Rational(-1));
    if (n % 2 == 1) {
        if ((static_cast<long>(m) * (m + 1) / 2) % 2 == 1) s *= h11;
        s *= hilbert(ctx, pow_rat(Rational(-1), m), det);
    } else {
        if ((static_cast<long>(m) * (m - 1) / 2) % 2 == 1) s *= h11;
        s *= hilbert(ctx, pow_rat(Rational(-1), m + 1), det);
    }
    return s;
}

std::pair<JordanForm, std::vector<Rational>> jordan_odd(const HalfIntMat& b,
                                                        const PrimeContext& ctx) {
    if (ctx.dyadic()) throw std::domain_error("jordan_odd requires p odd");
    validate(b, ctx);
    const int n = b.dim();
    std::vector<Rational> m(static_cast<std::size_t>(n) * n), u(static_cast<std::size_t>(n) * n,
                                                               Rational(0));
    for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(i) * n + i] = 1;
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = b.at(i, j);
    }
    auto mm = [&](int i, int j) -> Rational& { return m[static_cast<std::size_t>(i) * n + j]; };
    auto uu = [&](int i, int j) -> Rational& { return u[static_cast<std::size_t>(i) * n + j]; };
    // Column operation on the change of basis: u_col_i += f * u_col_j.
    auto add_col = [&](int i, int j, const Rational& f) {
        for (int r = 0; r < n; ++r) uu(r, i) += f * uu(r, j);
        for (int r = 0; r < n; ++r) mm(r, i) += f * mm(r, j);
        for (int c = 0; c < n; ++c) mm(i, c) += f * mm(j, c);
    };
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        // minimal valuation among remaining b_ii and 2 b_ij; diagonal preferred on ties
        long best = kOrdInfinity;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            long v = ordp(ctx, mm(i, i));
            if (v < best) {
                best = v;
                bi = i;
                bj = i;
            }
        }
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (done[j]) continue;
                long v = ordp(ctx, 2 * mm(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0 || best == kOrdInfinity) throw ValidationError("matrix is degenerate");
        if (bi != bj) {
            // ord(b_ii + 2 b_ij + b_jj) equals the off-diagonal minimum for odd p
            add_col(bi, bj, Rational(1));
        }
        done[bi] = true;
        const Rational piv = mm(bi, bi);
        for (int j = 0; j < n; ++j) {
            if (done[j] || j == bi) continue;
            Rational f = -mm(bi, j) / piv;
            if (f != 0) add_col(j, bi, f);
        }
    }
    // Sort by valuation (stable permutation applied to U's columns).
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
        return ordp(ctx, m[static_cast<std::size_t>(x) * n + x]) <
               ordp(ctx, m[static_cast<std::size_t>(y) * n + y]);
    });
    JordanForm jf;
    std::vector<Rational> usorted(static_cast<std::size_t>(n) * n, Rational(0));
    for (int c = 0; c < n; ++c) {
        int src = idx[c];
        for (int r = 0; r < n; ++r) usorted[static_cast<std::size_t>(r) * n + c] = uu(r, src);
        Rational d = m[static_cast<std::size_t>(src) * n + src];
        long a = ordp(ctx, d);
        jf.pairs.emplace_back(a, d * pow_rat(Rational(ctx.p), -a));
    }
    return {jf, usorted};
}

GKData gk_odd(const HalfIntMat& b, const PrimeContext& ctx) {
    auto [jf, u] = jordan_odd(b, ctx);
    GKData g;
    for (const auto& [a, unit] : jf.pairs) {
        (void)unit;
        g.a.push_back(a);
    }
    return g;
}

namespace {

EGKDatum egk_from_blocks(const std::vector<long>& a,
                         const std::function<int(int, bool)>& zeta_of_prefix) {
    EGKDatum g;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        g.n.push_back(static_cast<long>(j - i));
        g.m.push_back(a[i]);
        g.zeta.push_back(zeta_of_prefix(static_cast<int>(j), j % 2 == 0));
        i = j;
    }
    return g;
}

}  // namespace

EGKDatum egk_odd(const HalfIntMat& b, const PrimeContext& ctx) {
    auto [jf, u] = jordan_odd(b, ctx);
    const int n = b.dim();
    std::vector<Rational> diag;
    for (const auto& [a, unit] : jf.pairs) diag.push_back(pow_rat(Rational(ctx.p), a) * unit);
    HalfIntMat c = HalfIntMat::diagonal(diag);
    std::vector<long> a;
    for (const auto& [av, unit] : jf.pairs) {
        (void)unit;
        a.push_back(av);
    }
    (void)n;
    EGKDatum g = egk_from_blocks(a, [&](int k, bool even) {
        HalfIntMat blk = c.principal(k);
        return even ? xi_b(blk, ctx) : eta_b(blk, ctx);
    });
    validate_egk(g);
    return g;
}

namespace {

struct SigmaSets {
    std::vector<int> p0, pplus, pminus;  // 1-based indices
};

SigmaSets sigma_sets(const GKData& a, const Involution& sigma) {
    SigmaSets s;
    const int n = static_cast<int>(a.a.size());
    for (int i = 1; i <= n; ++i) {
        if (sigma(i) == i)
            s.p0.push_back(i);
        else if (a.a[i - 1] > a.a[sigma(i) - 1])
            s.pplus.push_back(i);
        else if (a.a[i - 1] < a.a[sigma(i) - 1])
            s.pminus.push_back(i);
    }
    return s;
}

// Block intervals I_s as (first, last) 1-based pairs.
std::vector<std::pair<int, int>> blocks_of(const std::vector<long>& a) {
    std::vector<std::pair<int, int>> out;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j));
        i = j;
    }
    return out;
}

}  // namespace

void check_admissible(const GKData& a, const Involution& sigma) {
    const int n = static_cast<int>(a.a.size());
    if (sigma.size() != n) throw ValidationError("involution size mismatch");
    for (int i = 1; i < n; ++i)
        if (a.a[i - 1] > a.a[i]) throw ValidationError("GK sequence not non-decreasing");
    for (long v : a.a)
        if (v < 0) throw ValidationError("GK sequence has a negative entry");
    SigmaSets s = sigma_sets(a, sigma);
    auto av = [&](int i) { return a.a[i - 1]; };
    if (s.p0.size() > 2) throw ValidationError("(i): P0 has more than two elements");
    if (s.p0.size() == 2 && (av(s.p0[0]) - av(s.p0[1])) % 2 == 0)
        throw ValidationError("(i): the two P0 elements have equal parity");
    auto blocks = blocks_of(a.a);
    for (const auto& [lo, hi] : blocks) {
        int count0 = 0, cplus = 0, cminus = 0;
        for (int i = lo; i <= hi; ++i) {
            if (sigma(i) == i) {
                ++count0;
                if (i != hi) throw ValidationError("(i): P0 element not maximal in its block");
                int mx = 0;
                for (int j = 1; j <= n; ++j) {
                    bool in = (sigma(j) == j) || av(j) > av(sigma(j));
                    if (in && (av(j) - av(i)) % 2 == 0) mx = std::max(mx, j);
                }
                if (mx != i) throw ValidationError("(i): P0 element not maximal among matching parity");
            } else if (av(i) < av(sigma(i))) {
                ++cminus;
                if (i != hi) throw ValidationError("(ii): P- element not maximal in its block");
                int want = 0;
                for (int j = n; j >= 1; --j)
                    if (av(j) > av(sigma(j)) && j > i && (av(j) - av(i)) % 2 == 0) want = j;
                if (want == 0 || sigma(i) != want)
                    throw ValidationError("(ii): sigma(i) is not the minimal matching P+ element");
            } else if (av(i) > av(sigma(i))) {
                ++cplus;
                if (i != lo) throw ValidationError("(iii): P+ element not minimal in its block");
                int want = 0;
                for (int j = 1; j <= n; ++j)
                    if (av(j) < av(sigma(j)) && j < i && (av(j) - av(i)) % 2 == 0) want = j;
                if (want == 0 || sigma(i) != want)
                    throw ValidationError("(iii): sigma(i) is not the maximal matching P- element");
            }
        }
        if (cminus > 1) throw ValidationError("(ii): more than one P- element in a block");
        if (cplus > 1) throw ValidationError("(iii): more than one P+ element in a block");
        (void)count0;
    }
    for (int i = 1; i <= n; ++i)
        if (av(i) == av(sigma(i)) && std::abs(i - sigma(i)) > 1)
            throw ValidationError("(iv): |i - sigma(i)| > 1 with equal exponents");
}

void check_reduced(const HalfIntMat& b, const GKData& a, const Involution& sigma,
                   const PrimeContext& ctx) {
    if (!ctx.dyadic()) throw ValidationError("reduced-form certification is a p = 2 path");
    check_admissible(a, sigma);
    validate(b, ctx);
    const int n = b.dim();
    if (static_cast<int>(a.a.size()) != n) throw ValidationError("GK sequence length mismatch");
    auto av = [&](int i) { return a.a[i - 1]; };
    // membership in M(ua)
    for (int i = 1; i <= n; ++i) {
        if (ordp(ctx, b.at(i - 1, i - 1)) < av(i))
            throw ValidationError("M(ua): ord(b_" + std::to_string(i) + std::to_string(i) +
                                  ") < a_i");
        for (int j = i + 1; j <= n; ++j) {
            long o = ordp(ctx, 2 * b.at(i - 1, j - 1));
            if (o != kOrdInfinity && 2 * o < av(i) + av(j))
                throw ValidationError("M(ua): ord(2 b_" + std::to_string(i) + std::to_string(j) +
                                      ") < (a_i+a_j)/2");
        }
    }
    for (int i = 1; i <= n; ++i) {
        int si = sigma(i);
        if (si != i && i < si) {  // clause (1), once per pair
            long o = ordp(ctx, 2 * b.at(i - 1, si - 1));
            if (o == kOrdInfinity || 2 * o != av(i) + av(si))
                throw ValidationError("(1): ord(2 b_{i sigma(i)}) != (a_i+a_sigma(i))/2 at i=" +
                                      std::to_string(i));
        }
        if (si == i || av(i) < av(si)) {  // clause (2)
            if (ordp(ctx, b.at(i - 1, i - 1)) != av(i))
                throw ValidationError("(2): ord(b_ii) != a_i at i=" + std::to_string(i));
        }
        for (int j = i + 1; j <= n; ++j) {  // clause (3)
            if (j == si) continue;
            long o = ordp(ctx, 2 * b.at(i - 1, j - 1));
            if (o != kOrdInfinity && 2 * o <= av(i) + av(j))
                throw ValidationError("(3): ord(2 b_" + std::to_string(i) + std::to_string(j) +
                                      ") not strictly above (a_i+a_j)/2");
        }
    }
}

EGKDatum egk_from_reduced(const HalfIntMat& b, const GKData& a, const Involution& sigma,
                          const PrimeContext& ctx) {
    check_reduced(b, a, sigma, ctx);
    EGKDatum g = egk_from_blocks(a.a, [&](int k, bool even) {
        HalfIntMat blk = b.principal(k);
        if (blk.det() == 0)
            throw ValidationError("degenerate principal block B^(" + std::to_string(k) + ")");
        return even ? xi_b(blk, ctx) : eta_b(blk, ctx);
    });
    validate_egk(g);
    return g;
}

Category category(const GKData& a, const Involution& sigma) {
    const int n = static_cast<int>(a.a.size());
    if (n < 2) return Category::II;
    if (sigma(n - 1) == n && a.a[n - 2] == a.a[n - 1]) return Category::I;
    return Category::II;
}

}  // namespace siegelkit
