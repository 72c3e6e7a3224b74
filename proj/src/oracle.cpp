#include "siegelkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>

namespace siegelkit {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

constexpr int kOrdInf = 127;

u64 upow(u64 b, long e) {
    u64 r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

int ord_loop(u64 v, u64 p) {
    if (v == 0) return kOrdInf;
    int o = 0;
    while (v % p == 0) {
        v /= p;
        ++o;
    }
    return o;
}

int ord_i128(i128 v, u64 p) {
    if (v < 0) v = -v;
    if (v == 0) return kOrdInf;
    int o = 0;
    while (v % static_cast<i128>(p) == 0) {
        v /= static_cast<i128>(p);
        ++o;
    }
    return o;
}

// Target congruence coordinates: diagonal entries b_aa, then doubled
// off-diagonal entries 2 b_ab for a < b in row-major order, all mod p^e.
std::vector<u64> target_coords(const HalfIntMat& b, const PrimeContext& ctx, long e) {
    const int n = b.dim();
    std::vector<u64> t;
    for (int a = 0; a < n; ++a) t.push_back(unit_mod(ctx, b.at(a, a), static_cast<unsigned long>(e)).get_ui());
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c)
            t.push_back(unit_mod(ctx, 2 * b.at(a, c), static_cast<unsigned long>(e)).get_ui());
    return t;
}

struct ConvPlan {
    u64 m;       // p^e
    long e;
    long p;
    int n;
    int d;       // n(n+1)/2
    int kmax;    // kernel exponent range: 0..n*e
    std::vector<u64> target;
};

// Histogram over (kernel exponent class, character pairing residue).
using Buckets = std::vector<u64>;  // size (n*e+1) * m, index kappa*m + j

void conv_scan_n1(const ConvPlan& pl, u64 x_begin, u64 x_end, Buckets& out) {
    std::vector<std::uint8_t> ord1(pl.m, 0);
    for (u64 v = 1; v < pl.m; ++v) ord1[v] = static_cast<std::uint8_t>(ord_loop(v, pl.p));
    u64 j = (pl.target[0] * (x_begin % pl.m)) % pl.m;
    for (u64 x = x_begin; x < x_end; ++x) {
        int kappa = (x == 0) ? static_cast<int>(pl.e) : ord1[x];
        ++out[static_cast<std::size_t>(kappa) * pl.m + j];
        j += pl.target[0];
        if (j >= pl.m) j -= pl.m;
    }
}

void conv_scan_n2(const ConvPlan& pl, u64 x_begin, u64 x_end, Buckets& out) {
    const u64 m = pl.m;
    const long e = pl.e;
    std::vector<std::uint8_t> ord1(m, 0);
    for (u64 v = 1; v < m; ++v) ord1[v] = static_cast<std::uint8_t>(ord_loop(v, pl.p));
    // table of ord over [0, m^2) when affordable, else divide on the fly
    const bool table2 = m * m <= (u64(1) << 24);
    std::vector<std::uint8_t> ord2;
    if (table2) {
        ord2.assign(m * m, 0);
        for (u64 v = 1; v < m * m; ++v) ord2[v] = static_cast<std::uint8_t>(ord_loop(v, pl.p));
    }
    const u64 t00 = pl.target[0], t11 = pl.target[1], t01 = pl.target[2];
    for (u64 x = x_begin; x < x_end; ++x) {
        const int ox = (x == 0) ? kOrdInf : ord1[x];
        const u64 jx = (t00 * x) % m;
        for (u64 z = 0; z < m; ++z) {
            const int oz = (z == 0) ? kOrdInf : ord1[z];
            const int d1xz = std::min(ox, oz);
            u64 j = (jx + t01 * z) % m;
            i64 det = -static_cast<i64>(z * z);  // x*y - z^2 at y = 0
            for (u64 y = 0; y < m; ++y) {
                const int oy = (y == 0) ? kOrdInf : ord1[y];
                const int d1 = std::min(d1xz, oy);
                int kappa;
                if (d1 == kOrdInf) {
                    kappa = static_cast<int>(2 * e);
                } else {
                    const u64 ad = static_cast<u64>(det < 0 ? -det : det);
                    int dd;
                    if (ad == 0)
                        dd = kOrdInf;
                    else if (table2)
                        dd = ord2[ad];
                    else
                        dd = ord_loop(ad, pl.p);
                    const int k1 = std::min<long>(d1, e);
                    const int k2 =
                        (dd == kOrdInf) ? static_cast<int>(e) : std::min<long>(dd - d1, e);
                    kappa = k1 + k2;
                }
                ++out[static_cast<std::size_t>(kappa) * m + j];
                j += t11;
                if (j >= m) j -= m;
                det += static_cast<i64>(x);
            }
        }
    }
}

// Generic odometer scan, n >= 3: recompute minor valuations per state.
void conv_scan_generic(const ConvPlan& pl, Buckets& out) {
    const u64 m = pl.m;
    const int n = pl.n, d = pl.d;
    std::vector<u64> xi(d, 0);
    // entry index map: (a,b) -> coordinate
    std::vector<std::vector<int>> coord(n, std::vector<int>(n));
    {
        int idx = 0;
        for (int a = 0; a < n; ++a) coord[a][a] = idx++;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) coord[a][b] = coord[b][a] = idx++;
    }
    auto kappa_of = [&]() {
        // v_r = minimal valuation over r x r minors; kernel exponent from
        // successive differences, capped at e.
        std::vector<int> v(n + 1, 0);
        std::vector<int> rows(n), cols(n);
        for (int r = 1; r <= n; ++r) {
            int best = kOrdInf;
            std::vector<int> ri(r), ci(r);
            std::function<void(int, int)> pick_rows = [&](int pos, int from) {
                if (pos == r) {
                    std::function<void(int, int)> pick_cols = [&](int cpos, int cfrom) {
                        if (cpos == r) {
                            // determinant of the r x r submatrix via cofactor expansion
                            std::function<i128(std::vector<int>&, std::vector<int>&)> det_of =
                                [&](std::vector<int>& rr, std::vector<int>& cc) -> i128 {
                                if (rr.size() == 1) return static_cast<i128>(xi[coord[rr[0]][cc[0]]]);
                                i128 acc = 0;
                                for (std::size_t t = 0; t < cc.size(); ++t) {
                                    std::vector<int> rr2(rr.begin() + 1, rr.end());
                                    std::vector<int> cc2;
                                    for (std::size_t u = 0; u < cc.size(); ++u)
                                        if (u != t) cc2.push_back(cc[u]);
                                    i128 sub = det_of(rr2, cc2);
                                    i128 term = static_cast<i128>(xi[coord[rr[0]][cc[t]]]) * sub;
                                    acc += (t % 2 == 0) ? term : -term;
                                }
                                return acc;
                            };
                            best = std::min(best, ord_i128(det_of(ri, ci), pl.p));
                        } else {
                            for (int c = cfrom; c < n; ++c) {
                                ci[cpos] = c;
                                pick_cols(cpos + 1, c + 1);
                            }
                        }
                    };
                    pick_cols(0, 0);
                } else {
                    for (int q = from; q < n; ++q) {
                        ri[pos] = q;
                        pick_rows(pos + 1, q + 1);
                    }
                }
            };
            pick_rows(0, 0);
            v[r] = best;
        }
        int kappa = 0;
        int prev = 0;
        bool dead = false;
        for (int r = 1; r <= n; ++r) {
            if (dead || v[r] == kOrdInf) {
                dead = true;
                kappa += static_cast<int>(pl.e);
            } else {
                kappa += static_cast<int>(std::min<long>(v[r] - prev, pl.e));
                prev = v[r];
            }
        }
        return kappa;
    };
    u64 j = 0;
    for (;;) {
        ++out[static_cast<std::size_t>(kappa_of()) * m + j];
        int c = 0;
        for (; c < d; ++c) {
            j += pl.target[c];
            if (j >= m) j -= m;
            if (++xi[c] < m) break;
            xi[c] = 0;
        }
        if (c == d) break;
    }
}

// Exact single-point inverse transform: counts for each requested k from the
// (kappa, j) histogram, via reduction in Z[zeta_{p^e}].
std::map<long, Integer> assemble_counts(const ConvPlan& pl, const Buckets& buckets,
                                        const std::vector<long>& ks) {
    const u64 m = pl.m;
    const long p = pl.p, e = pl.e;
    const int kclasses = pl.n * static_cast<int>(e) + 1;
    std::map<long, Integer> out;
    const u64 L = upow(static_cast<u64>(p), e - 1);
    for (long k : ks) {
        // coefficient of omega^{-j}: C_j = sum_kappa buckets * p^{k(en+kappa)}
        std::vector<Integer> cj(m, Integer(0));
        std::vector<Integer> ppow(kclasses);
        for (int kap = 0; kap < kclasses; ++kap)
            ppow[kap] = pow_int(Integer(p), static_cast<unsigned long>(k * (e * pl.n + kap)));
        for (int kap = 0; kap < kclasses; ++kap)
            for (u64 j = 0; j < m; ++j) {
                const u64 cnt = buckets[static_cast<std::size_t>(kap) * m + j];
                if (cnt) cj[j] += ppow[kap] * Integer(static_cast<unsigned long>(cnt));
            }
        // S = sum_j C_j omega^{-j}; reduce in the power basis of Z[omega]
        std::vector<Integer> r(static_cast<std::size_t>((p - 1) * L), Integer(0));
        for (u64 j = 0; j < m; ++j) {
            const u64 t = (m - j) % m;
            const u64 a = t % L, bq = t / L;
            if (bq < static_cast<u64>(p - 1)) {
                r[a + bq * L] += cj[j];
            } else {
                for (u64 bp = 0; bp + 1 < static_cast<u64>(p); ++bp) r[a + bp * L] -= cj[j];
            }
        }
        for (std::size_t t = 1; t < r.size(); ++t)
            if (r[t] != 0) throw std::logic_error("character sum is not rational (bug)");
        // count * p^{ed} = S * p^{enk}
        Integer s = r[0];
        const long shift = e * pl.n * k - e * pl.d;
        Integer count;
        if (shift >= 0) {
            count = s * pow_int(Integer(p), static_cast<unsigned long>(shift));
        } else {
            Integer denom = pow_int(Integer(p), static_cast<unsigned long>(-shift));
            if (s % denom != 0) throw std::logic_error("non-integral representation count (bug)");
            count = s / denom;
        }
        if (count < 0) throw std::logic_error("negative representation count (bug)");
        out[k] = count;
    }
    return out;
}

std::map<long, Integer> count_conv_many(const HalfIntMat& b, const PrimeContext& ctx, long e,
                                        const std::vector<long>& ks, const CountCaps& caps) {
    const int n = b.dim();
    const int d = n * (n + 1) / 2;
    const double states = std::pow(static_cast<double>(ctx.p), static_cast<double>(e) * d);
    const double tuples = std::pow(static_cast<double>(ctx.p), 2.0 * e * n);
    if (states > caps.max_states)
        throw ResourceError("convolution state space p^(e n(n+1)/2) exceeds cap; shrink e/n or raise SIEGELKIT_MAX_STATES");
    if (tuples > caps.max_tuples)
        throw ResourceError("per-plane tuple space p^(2en) exceeds cap; shrink e/n or raise SIEGELKIT_MAX_STATES");
    if (n >= 4 && states > double(1 << 16))
        throw ResourceError("convolution oracle limited to small state spaces for n >= 4");
    ConvPlan pl;
    pl.m = upow(static_cast<u64>(ctx.p), e);
    pl.e = e;
    pl.p = ctx.p;
    pl.n = n;
    pl.d = d;
    pl.kmax = n * static_cast<int>(e);
    pl.target = target_coords(b, ctx, e);
    const std::size_t bsize = static_cast<std::size_t>(pl.kmax + 1) * pl.m;
    Buckets buckets(bsize, 0);
    const int nthreads = std::max(1, std::min(caps.threads, static_cast<int>(pl.m)));
    if (n <= 2 && nthreads > 1) {
        std::vector<Buckets> partial(nthreads, Buckets(bsize, 0));
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            const u64 lo = pl.m * static_cast<u64>(t) / nthreads;
            const u64 hi = pl.m * static_cast<u64>(t + 1) / nthreads;
            pool.emplace_back([&, t, lo, hi] {
                if (n == 1)
                    conv_scan_n1(pl, lo, hi, partial[t]);
                else
                    conv_scan_n2(pl, lo, hi, partial[t]);
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : partial)
            for (std::size_t i = 0; i < bsize; ++i) buckets[i] += part[i];
    } else if (n == 1) {
        conv_scan_n1(pl, 0, pl.m, buckets);
    } else if (n == 2) {
        conv_scan_n2(pl, 0, pl.m, buckets);
    } else {
        conv_scan_generic(pl, buckets);
    }
    return assemble_counts(pl, buckets, ks);
}

// Direct enumeration over X in (Z/p^e)^{2k x n}, column by column with early
// Gram pruning.
Integer count_direct(const HalfIntMat& b, const PrimeContext& ctx, long e, long k) {
    const int n = b.dim();
    const u64 m = upow(static_cast<u64>(ctx.p), e);
    const int rows = static_cast<int>(2 * k);
    std::vector<u64> tdiag(n), tcross(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        tdiag[a] = unit_mod(ctx, b.at(a, a), static_cast<unsigned long>(e)).get_ui();
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            tcross[static_cast<std::size_t>(a) * n + c] =
                unit_mod(ctx, 2 * b.at(a, c), static_cast<unsigned long>(e)).get_ui();
    std::vector<std::vector<u64>> cols(n, std::vector<u64>(rows, 0));
    Integer total = 0;
    std::function<void(int)> place = [&](int c) {
        std::vector<u64>& x = cols[c];
        std::fill(x.begin(), x.end(), 0);
        for (;;) {
            // check constraints involving column c
            u64 diag = 0;
            for (int i = 0; i < rows; i += 2) diag = (diag + x[i] * x[i + 1]) % m;
            bool ok = diag == tdiag[c];
            for (int cp = 0; ok && cp < c; ++cp) {
                u64 cross = 0;
                for (int i = 0; i < rows; i += 2)
                    cross = (cross + cols[cp][i] * x[i + 1] + cols[cp][i + 1] * x[i]) % m;
                ok = cross == tcross[static_cast<std::size_t>(cp) * n + c];
            }
            if (ok) {
                if (c + 1 == n)
                    total += 1;
                else
                    place(c + 1);
            }
            int i = 0;
            for (; i < rows; ++i) {
                if (++x[i] < m) break;
                x[i] = 0;
            }
            if (i == rows) break;
        }
    };
    place(0);
    return total;
}

// Literal small-case path: materialize the one-plane distribution and fold it
// k times by naive convolution over the abelian group (Z/p^e)^d.
Integer count_literal(const HalfIntMat& b, const PrimeContext& ctx, long e, long k) {
    const int n = b.dim();
    const int d = n * (n + 1) / 2;
    const u64 m = upow(static_cast<u64>(ctx.p), e);
    u64 states = 1;
    for (int i = 0; i < d; ++i) states *= m;
    std::vector<u64> dist(states, 0);
    std::vector<u64> uv(static_cast<std::size_t>(2 * n), 0);
    for (;;) {
        const u64* u = uv.data();
        const u64* v = uv.data() + n;
        u64 idx = 0, mul = 1;
        for (int a = 0; a < n; ++a) {
            idx += ((u[a] * v[a]) % m) * mul;
            mul *= m;
        }
        for (int a = 0; a < n; ++a)
            for (int c = a + 1; c < n; ++c) {
                idx += ((u[a] * v[c] + u[c] * v[a]) % m) * mul;
                mul *= m;
            }
        ++dist[idx];
        int i = 0;
        for (; i < 2 * n; ++i) {
            if (++uv[i] < m) break;
            uv[i] = 0;
        }
        if (i == 2 * n) break;
    }
    // group addition on packed indices
    auto add_idx = [&](u64 a, u64 bidx) {
        u64 out = 0, mul = 1;
        for (int i = 0; i < d; ++i) {
            out += ((a % m + bidx % m) % m) * mul;
            a /= m;
            bidx /= m;
            mul *= m;
        }
        return out;
    };
    std::vector<Integer> acc(states, Integer(0));
    acc[0] = 1;
    for (long step = 0; step < k; ++step) {
        std::vector<Integer> next(states, Integer(0));
        for (u64 s = 0; s < states; ++s) {
            if (acc[s] == 0) continue;
            for (u64 t = 0; t < states; ++t) {
                if (dist[t] == 0) continue;
                next[add_idx(s, t)] += acc[s] * Integer(static_cast<unsigned long>(dist[t]));
            }
        }
        acc.swap(next);
    }
    const std::vector<u64> tc = target_coords(b, ctx, e);
    u64 idx = 0, mul = 1;
    for (int i = 0; i < d; ++i) {
        idx += tc[i] * mul;
        mul *= m;
    }
    return acc[idx];
}

double direct_cost(long p, long e, long k, int n) {
    return std::pow(static_cast<double>(p), static_cast<double>(e) * 2 * k * n);
}

}  // namespace

Integer count_reps(const CountJob& job) {
    PrimeContext ctx(job.p);
    validate(job.b, ctx);
    if (job.e < 1) throw std::invalid_argument("precision e must be >= 1");
    if (job.k < job.b.dim()) throw std::invalid_argument("hyperbolic rank k must be >= n");
    auto counts = count_conv_many(job.b, ctx, job.e, {job.k}, job.caps);
    Integer conv = counts[job.k];
    if (direct_cost(job.p, job.e, job.k, job.b.dim()) <= job.caps.max_direct) {
        Integer direct = count_direct(job.b, ctx, job.e, job.k);
        if (direct != conv) throw std::logic_error("direct and convolution counts disagree (bug)");
    }
    const int d = job.b.dim() * (job.b.dim() + 1) / 2;
    if (std::pow(static_cast<double>(job.p), static_cast<double>(job.e) * d) <= 1024.0 &&
        std::pow(static_cast<double>(job.p), 2.0 * job.e * job.b.dim()) <= double(1 << 20)) {
        Integer lit = count_literal(job.b, ctx, job.e, job.k);
        if (lit != conv) throw std::logic_error("literal convolution count disagrees (bug)");
    }
    return conv;
}

std::map<long, Integer> count_reps_many(const HalfIntMat& b, const PrimeContext& ctx, long e,
                                        const std::vector<long>& ks, const CountCaps& caps) {
    auto counts = count_conv_many(b, ctx, e, ks, caps);
    for (long k : ks) {
        if (direct_cost(ctx.p, e, k, b.dim()) <= caps.max_direct) {
            Integer direct = count_direct(b, ctx, e, k);
            if (direct != counts[k])
                throw std::logic_error("direct and convolution counts disagree (bug)");
        }
    }
    return counts;
}

namespace {

long stabilization_e(const HalfIntMat& b, const PrimeContext& ctx) {
    Rational det2b = pow_rat(Rational(2), b.dim()) * b.det();
    return 2 * ordp(ctx, det2b) + 1;
}

Rational alpha_from_count(const HalfIntMat& b, const PrimeContext& ctx, long e, long k,
                          const Integer& count) {
    const int n = b.dim();
    const long expo = e * (static_cast<long>(n) * (n + 1) / 2 - 2 * k * n);
    return Rational(count) * pow_rat(Rational(ctx.p), expo);
}

}  // namespace

Rational alpha(long k, const HalfIntMat& b, const PrimeContext& ctx, const CountCaps& caps) {
    validate(b, ctx);
    if (k < b.dim()) throw std::invalid_argument("alpha requires k >= n");
    const long estar = stabilization_e(b, ctx);
    auto c1 = count_reps_many(b, ctx, estar, {k}, caps);
    auto c2 = count_reps_many(b, ctx, estar + 1, {k}, caps);
    Rational a1 = alpha_from_count(b, ctx, estar, k, c1[k]);
    Rational a2 = alpha_from_count(b, ctx, estar + 1, k, c2[k]);
    if (a1 != a2) throw std::logic_error("alpha not stabilized at e* (bug or bad precondition)");
    return a1;
}

std::vector<Integer> interpolate_f(const HalfIntMat& b, const PrimeContext& ctx,
                                   const CountCaps& caps, long max_k) {
    validate(b, ctx);
    const int n = b.dim();
    const long eb = e_b(b, ctx);
    const long khi = n + eb;
    if (max_k >= 0 && khi > max_k)
        throw ResourceError("interpolation needs k up to n + e_B = " + std::to_string(khi) +
                            " > max-k");
    std::vector<long> ks;
    for (long k = n; k <= khi; ++k) ks.push_back(k);
    const long estar = stabilization_e(b, ctx);
    auto c1 = count_reps_many(b, ctx, estar, ks, caps);
    auto c2 = count_reps_many(b, ctx, estar + 1, ks, caps);
    const int xi = xi_b(b, ctx);
    std::vector<Rational> values;
    for (long k : ks) {
        Rational a1 = alpha_from_count(b, ctx, estar, k, c1[k]);
        Rational a2 = alpha_from_count(b, ctx, estar + 1, k, c2[k]);
        if (a1 != a2) throw std::logic_error("alpha not stabilized at e* (bug)");
        Rational g = gamma_q(n, ctx.p, xi, pow_rat(Rational(ctx.p), -k));
        values.push_back(a1 / g);
    }
    // Vandermonde solve at x_k = q^{-k} for the e_B+1 coefficients of F.
    const std::size_t dim = static_cast<std::size_t>(eb) + 1;
    std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim + 1));
    for (std::size_t r = 0; r < dim; ++r) {
        Rational x = pow_rat(Rational(ctx.p), -(n + static_cast<long>(r)));
        Rational xp(1);
        for (std::size_t c = 0; c < dim; ++c) {
            mat[r][c] = xp;
            xp *= x;
        }
        mat[r][dim] = values[r];
    }
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        while (piv < dim && mat[piv][col] == 0) ++piv;
        if (piv == dim) throw std::logic_error("singular Vandermonde system (bug)");
        std::swap(mat[col], mat[piv]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col || mat[r][col] == 0) continue;
            Rational f = mat[r][col] / mat[col][col];
            for (std::size_t c = col; c <= dim; ++c) mat[r][c] -= f * mat[col][c];
        }
    }
    std::vector<Integer> coeffs;
    for (std::size_t r = 0; r < dim; ++r) {
        Rational c = mat[r][dim] / mat[r][r];
        if (!is_integer(c))
            throw std::runtime_error("interpolated F has a non-integer coefficient");
        coeffs.push_back(Integer(c.get_num()));
    }
    return coeffs;
}

DensityReport verify(const HalfIntMat& b, const PrimeContext& ctx,
                     const std::optional<DyadicCert>& cert, const CountCaps& caps, long max_k) {
    DensityReport rep;
    SiegelResult formula = f_tilde_matrix(b, ctx, cert);
    rep.f_formula = formula.f_poly;
    rep.f_interp = interpolate_f(b, ctx, caps, max_k);
    {
        const int n = b.dim();
        const long estar = stabilization_e(b, ctx);
        std::vector<long> ks;
        for (long k = n; k <= n + formula.e_b; ++k) ks.push_back(k);
        auto counts = count_reps_many(b, ctx, estar, ks, caps);
        for (long k : ks) rep.alphas[k] = alpha_from_count(b, ctx, estar, k, counts[k]);
    }
    if (rep.f_interp == rep.f_formula) {
        rep.match = true;
    } else {
        rep.match = false;
        rep.detail = "interpolated F differs from the formula value";
    }
    return rep;
}

}  // namespace siegelkit
