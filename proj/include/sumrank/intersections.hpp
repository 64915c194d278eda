#pragma once

// Intersection volumes of rank-metric and sum-rank-metric spheres and balls.
//
// The rank-metric numbers J (spheres) and I (balls) come from the bilinear-forms
// association scheme. The sum-rank intersection for a concrete center pair factors
// over blocks once the per-block distances between the centers are fixed, which is
// why the ground-truth API takes a distance profile rather than a scalar distance.
//
// The *_literal functions evaluate the closed forms for the sum-rank case exactly as
// they are usually printed (sums over all compositions of the scalar radii and
// distance). They are kept for comparison against the oracle; they are not
// guaranteed to equal the intersection volume of any particular center pair.

#include <algorithm>
#include <string>
#include <vector>

#include "compositions.hpp"
#include "count.hpp"
#include "params.hpp"
#include "qkit.hpp"

namespace sumrank {

namespace detail {

inline void require_profile(const Params& p, const RankProfile& profile, const char* what) {
    if (profile.size() != p.ell()) {
        throw InvalidArgument(std::string(what) + ": profile has " + std::to_string(profile.size()) +
                              " parts, expected ell=" + std::to_string(p.ell()));
    }
    for (unsigned part : profile) {
        if (part > p.mu()) {
            throw InvalidArgument(std::string(what) + ": profile part " + std::to_string(part) +
                                  " exceeds mu=" + std::to_string(p.mu()));
        }
    }
}

// Dense multi-index array of counts, row-major.
class CountGrid {
public:
    explicit CountGrid(std::vector<unsigned> extents) : extents_(std::move(extents)) {
        std::size_t size = 1;
        for (unsigned e : extents_) size *= e;
        cells_.assign(size, Count(0));
    }

    Count& at(std::initializer_list<unsigned> index) { return cells_[offset(index)]; }
    const Count& at(std::initializer_list<unsigned> index) const { return cells_[offset(index)]; }
    const std::vector<unsigned>& extents() const noexcept { return extents_; }

private:
    std::size_t offset(std::initializer_list<unsigned> index) const {
        std::size_t off = 0;
        std::size_t axis = 0;
        for (unsigned i : index) off = off * extents_[axis++] + i;
        return off;
    }

    std::vector<unsigned> extents_;
    std::vector<Count> cells_;
};

}  // namespace detail

/// Rank-metric intersection numbers for m x n matrices over F_q, with the
/// Krawtchouk values and rank counts cached for repeated queries.
class RankIntersections {
public:
    RankIntersections(unsigned n, unsigned m, unsigned q) : n_(n), m_(m), q_(q) {
        detail::require_q(q, "RankIntersections");
        rank_counts_.reserve(n + 1);
        for (unsigned i = 0; i <= n; ++i) rank_counts_.push_back(num_matrices_rank(n, m, i, q));
        krawtchouk_.resize(n + 1);
        for (unsigned j = 0; j <= n; ++j) {
            krawtchouk_[j].reserve(n + 1);
            for (unsigned i = 0; i <= n; ++i) krawtchouk_[j].push_back(q_krawtchouk(j, i, n, m, q));
        }
        space_size_ = ipow(q, static_cast<std::uint64_t>(m) * n);
    }

    unsigned n() const noexcept { return n_; }
    unsigned m() const noexcept { return m_; }
    unsigned q() const noexcept { return q_; }
    unsigned max_rank() const noexcept { return std::min(n_, m_); }

    /// sum_{i=0..n} NM_q(n,m,i) K_u(i) K_s(i) K_t(i); requires u, s, t <= n.
    SignedCount triple_sum(unsigned u, unsigned s, unsigned t) const {
        if (u > n_ || s > n_ || t > n_) {
            throw InvalidArgument("RankIntersections::triple_sum: indices must be <= n");
        }
        SignedCount sum = 0;
        for (unsigned i = 0; i <= n_; ++i) {
            sum += rank_counts_[i] * krawtchouk_[u][i] * krawtchouk_[s][i] * krawtchouk_[t][i];
        }
        return sum;
    }

    /// q^{mn} NM_q(n,m,t), the normalising denominator of J.
    Count denominator(unsigned t) const { return space_size_ * rank_counts_.at(t); }

    /// Number of matrices at rank distance exactly u from X and exactly s from Y,
    /// where rk(X - Y) = t.
    Count sphere(unsigned u, unsigned s, unsigned t) const {
        require_distance(t, "J");
        const unsigned top = max_rank();
        if (u > top || s > top || u + s < t || (u > s ? u - s : s - u) > t) return 0;
        Count value = exact_div(triple_sum(u, s, t), denominator(t), "J");
        if (value < 0) throw InternalInconsistency("J: negative intersection count");
        return value;
    }

    /// Number of matrices within rank distance u of X and s of Y, where rk(X - Y) = t.
    Count ball(unsigned u, unsigned s, unsigned t) const {
        require_distance(t, "I");
        const unsigned top = max_rank();
        Count total = 0;
        for (unsigned i = 0; i <= std::min(u, top); ++i) {
            for (unsigned j = 0; j <= std::min(s, top); ++j) total += sphere(i, j, t);
        }
        return total;
    }

private:
    void require_distance(unsigned t, const char* what) const {
        if (t > max_rank()) {
            throw InvalidArgument(std::string(what) + ": center distance t=" + std::to_string(t) +
                                  " exceeds min(m,n)=" + std::to_string(max_rank()));
        }
    }

    unsigned n_;
    unsigned m_;
    unsigned q_;
    std::vector<Count> rank_counts_;
    std::vector<std::vector<SignedCount>> krawtchouk_;
    Count space_size_;
};

/// J(u,s,t,n,m): matrices at rank distance u and s from two centers at rank distance t.
inline Count rank_sphere_intersection_J(unsigned u, unsigned s, unsigned t, unsigned n, unsigned m,
                                        unsigned q) {
    return RankIntersections(n, m, q).sphere(u, s, t);
}

/// I(u,s,t,n,m) = sum_{i<=u} sum_{j<=s} J(i,j,t,n,m).
inline Count rank_ball_intersection_I(unsigned u, unsigned s, unsigned t, unsigned n, unsigned m,
                                      unsigned q) {
    return RankIntersections(n, m, q).ball(u, s, t);
}

/// Two sum-rank balls of radii u and s whose centers differ by a vector with the
/// given per-block ranks. Radii above ell*mu are clamped to ell*mu.
struct IntersectionQuery {
    IntersectionQuery(Params params, unsigned u_radius, unsigned s_radius, RankProfile profile)
        : p(params), u(std::min(u_radius, params.max_weight())),
          s(std::min(s_radius, params.max_weight())), distance_profile(std::move(profile)) {
        detail::require_profile(p, distance_profile, "IntersectionQuery");
    }

    Params p;
    unsigned u;
    unsigned s;
    RankProfile distance_profile;
};

/// |B(x,u) ∩ B(y,s)| for centers whose block differences have ranks query.distance_profile.
///
/// Sums prod_i J(a_i, b_i, t_i, eta, m) over all block radii a, b with sum(a) <= u and
/// sum(b) <= s, accumulated block by block over the partial sums.
inline Count sumrank_intersection_exact(const IntersectionQuery& query) {
    const Params& p = query.p;
    const RankIntersections block(p.eta(), p.m(), p.q());
    const unsigned mu = p.mu();

    detail::CountGrid dp({query.u + 1, query.s + 1});
    dp.at({0, 0}) = 1;
    for (unsigned t : query.distance_profile) {
        detail::CountGrid next({query.u + 1, query.s + 1});
        for (unsigned a = 0; a <= mu; ++a) {
            for (unsigned b = 0; b <= mu; ++b) {
                const Count j = block.sphere(a, b, t);
                if (j == 0) continue;
                for (unsigned su = 0; su + a <= query.u; ++su) {
                    for (unsigned ss = 0; ss + b <= query.s; ++ss) {
                        const Count& prev = dp.at({su, ss});
                        if (prev != 0) next.at({su + a, ss + b}) += prev * j;
                    }
                }
            }
        }
        dp = std::move(next);
    }
    Count total = 0;
    for (unsigned su = 0; su <= query.u; ++su) {
        for (unsigned ss = 0; ss <= query.s; ++ss) total += dp.at({su, ss});
    }
    return total;
}

/// The general sum-rank intersection formula as printed:
///
///   sum_{u in tau(u)} sum_{s in tau(s)} sum_{t in tau(t)} prod_i I(u_i, s_i, t_i, eta, m)
///
/// over compositions into ell parts bounded by mu. Evaluated as the coefficient of
/// x^u y^s z^t in (sum_{a,b,c<=mu} I(a,b,c) x^a y^b z^c)^ell.
inline Count theorem1_literal(const Params& p, unsigned u, unsigned s, unsigned t) {
    if (u + s < t) {
        throw InvalidArgument("theorem1_literal: requires u + s >= t");
    }
    const unsigned top = p.max_weight();
    if (u > top || s > top || t > top) return 0;
    const unsigned mu = p.mu();
    const RankIntersections block(p.eta(), p.m(), p.q());

    detail::CountGrid factor({mu + 1, mu + 1, mu + 1});
    for (unsigned a = 0; a <= mu; ++a)
        for (unsigned b = 0; b <= mu; ++b)
            for (unsigned c = 0; c <= mu; ++c) factor.at({a, b, c}) = block.ball(a, b, c);

    detail::CountGrid dp({u + 1, s + 1, t + 1});
    dp.at({0, 0, 0}) = 1;
    for (unsigned blk = 0; blk < p.ell(); ++blk) {
        detail::CountGrid next({u + 1, s + 1, t + 1});
        for (unsigned a = 0; a <= mu; ++a)
            for (unsigned b = 0; b <= mu; ++b)
                for (unsigned c = 0; c <= mu; ++c) {
                    const Count& f = factor.at({a, b, c});
                    if (f == 0) continue;
                    for (unsigned x = 0; x + a <= u; ++x)
                        for (unsigned y = 0; y + b <= s; ++y)
                            for (unsigned z = 0; z + c <= t; ++z) {
                                const Count& prev = dp.at({x, y, z});
                                if (prev != 0) next.at({x + a, y + b, z + c}) += prev * f;
                            }
                }
        dp = std::move(next);
    }
    return dp.at({u, s, t});
}

/// Number of rank-1 matrices Y with rk(X) + 1 = rk(X - Y), for a fixed m x n matrix X of
/// rank r: (q^n - q^r)(q^m - q^r) / (q - 1).
inline Count rank1_additive_pairs(unsigned n, unsigned m, unsigned r, unsigned q) {
    detail::require_q(q, "rank1_additive_pairs");
    if (r > std::min(m, n)) {
        throw InvalidArgument("rank1_additive_pairs: r=" + std::to_string(r) + " exceeds min(m,n)");
    }
    const Count qr = ipow(q, r);
    return exact_div((ipow(q, n) - qr) * (ipow(q, m) - qr), Count(q - 1), "rank1_additive_pairs");
}

/// |B(x, delta) ∩ B(y, 1)| for centers whose block differences have ranks `delta_profile`,
/// delta = sum of the profile:
///
///   1 + |S(y,1)| - sum_i (q^eta - q^{delta_i})(q^m - q^{delta_i}) / (q - 1)
///
/// where |S(y,1)| = ell * NM_q(eta, m, 1) counts the vectors with exactly one rank-1 block.
inline Count theorem2_per_profile(const Params& p, const RankProfile& delta_profile) {
    detail::require_profile(p, delta_profile, "theorem2_per_profile");
    if (delta_profile.is_zero()) {
        throw InvalidArgument("theorem2_per_profile: centers coincide (distance 0)");
    }
    Count value = 1 + p.ell() * num_matrices_rank(p.eta(), p.m(), 1, p.q());
    for (unsigned d : delta_profile) value -= rank1_additive_pairs(p.eta(), p.m(), d, p.q());
    return value;
}

/// The special-case formula for Vol(delta, 1, delta) as printed:
///
///   1 + (q^m - 1)(q^n - 1)/(q - 1)
///     - sum_{delta in tau(delta, ell, mu)} sum_i (q^eta - q^{delta_i})(q^m - q^{delta_i})/(q - 1)
///
/// The double sum is evaluated as ell * sum_d f(d) * |tau(delta - d, ell - 1, mu)|.
/// May be negative.
inline SignedCount theorem2_literal(const Params& p, unsigned delta) {
    if (delta < 1 || delta > p.max_weight()) {
        throw InvalidArgument("theorem2_literal: requires 1 <= delta <= ell*mu (delta=" +
                              std::to_string(delta) + ")");
    }
    const unsigned q = p.q();
    SignedCount value =
        1 + exact_div((ipow(q, p.m()) - 1) * (ipow(q, p.n()) - 1), Count(q - 1), "theorem2_literal");
    SignedCount subtracted = 0;
    for (unsigned d = 0; d <= std::min(delta, p.mu()); ++d) {
        subtracted += rank1_additive_pairs(p.eta(), p.m(), d, q) * count_uniform(delta - d, p.ell() - 1, p.mu());
    }
    return value - p.ell() * subtracted;
}

/// Number of v with rk(v) = gamma and rk(y - v) = delta - gamma inside one block
/// where rk(y) = delta: q^{gamma (delta - gamma)} [delta choose gamma]_q.
inline Count midpoint_count(unsigned gamma, unsigned delta, unsigned q) {
    if (gamma > delta) return 0;
    return ipow(q, static_cast<std::uint64_t>(gamma) * (delta - gamma)) * gaussian_binomial(delta, gamma, q);
}

/// prod_i q^{gamma_i (delta_i - gamma_i)} [delta_i choose gamma_i]_q: the number of
/// v in B(x, gamma) ∩ B(y, delta - gamma) whose block ranks are exactly gamma_profile.
inline Count theorem3_per_profile(const Params& p, const RankProfile& gamma_profile,
                                  const RankProfile& delta_profile) {
    detail::require_profile(p, delta_profile, "theorem3_per_profile");
    if (gamma_profile.size() != delta_profile.size()) {
        throw InvalidArgument("theorem3_per_profile: gamma and delta profiles differ in length");
    }
    Count product = 1;
    for (std::size_t i = 0; i < delta_profile.size(); ++i) {
        if (gamma_profile[i] > delta_profile[i]) {
            throw InvalidArgument("theorem3_per_profile: gamma_i > delta_i at block " + std::to_string(i));
        }
        product *= midpoint_count(gamma_profile[i], delta_profile[i], p.q());
    }
    return product;
}

/// |B(x, gamma) ∩ B(y, delta - gamma)| for centers with per-block distances `delta_profile`
/// and delta = its total: theorem3_per_profile summed over gamma in tau(gamma, ell, delta_profile).
inline Count theorem3_aggregate(const Params& p, unsigned gamma, const RankProfile& delta_profile) {
    detail::require_profile(p, delta_profile, "theorem3_aggregate");
    if (gamma > delta_profile.total()) {
        throw InvalidArgument("theorem3_aggregate: gamma exceeds the center distance");
    }
    std::vector<Count> dp{1};
    for (unsigned d : delta_profile) {
        std::vector<Count> block(d + 1);
        for (unsigned g = 0; g <= d; ++g) block[g] = midpoint_count(g, d, p.q());
        std::vector<Count> next(std::min<std::size_t>(dp.size() + d, gamma + 1));
        for (std::size_t i = 0; i < dp.size(); ++i)
            for (unsigned g = 0; g <= d && i + g < next.size(); ++g) next[i + g] += dp[i] * block[g];
        dp = std::move(next);
    }
    return gamma < dp.size() ? dp[gamma] : Count(0);
}

/// The special-case formula for Vol(gamma, delta - gamma, delta) as printed:
///
///   sum_{delta in tau(delta, ell, mu)} sum_{gamma in tau(gamma, ell, delta)}
///       sum_i q^{gamma_i (delta_i - gamma_i)} [delta_i choose gamma_i]_q
///
/// Evaluated by counting, for each block value (d, g), the pairs of compositions of the
/// remaining ell - 1 blocks.
inline Count theorem3_literal(const Params& p, unsigned gamma, unsigned delta) {
    if (gamma > delta) throw InvalidArgument("theorem3_literal: requires gamma <= delta");
    if (delta > p.max_weight()) return 0;
    const unsigned mu = p.mu();

    // pairs.at({D, G}): number of (delta', gamma') over ell - 1 blocks, delta' in tau(D, ell-1, mu),
    // gamma' in tau(G, ell-1, delta').
    detail::CountGrid pairs({delta + 1, gamma + 1});
    pairs.at({0, 0}) = 1;
    for (unsigned blk = 1; blk < p.ell(); ++blk) {
        detail::CountGrid next({delta + 1, gamma + 1});
        for (unsigned D = 0; D <= delta; ++D)
            for (unsigned G = 0; G <= gamma; ++G) {
                const Count& prev = pairs.at({D, G});
                if (prev == 0) continue;
                for (unsigned d = 0; d <= mu && D + d <= delta; ++d)
                    for (unsigned g = 0; g <= d && G + g <= gamma; ++g) next.at({D + d, G + g}) += prev;
            }
        pairs = std::move(next);
    }

    Count per_block = 0;
    for (unsigned d = 0; d <= std::min(mu, delta); ++d)
        for (unsigned g = 0; g <= std::min(d, gamma); ++g)
            per_block += midpoint_count(g, d, p.q()) * pairs.at({delta - d, gamma - g});
    return p.ell() * per_block;
}

}  // namespace sumrank
