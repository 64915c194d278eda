#pragma once

#include <vector>

#include "compositions.hpp"
#include "count.hpp"
#include "params.hpp"
#include "qkit.hpp"

namespace sumrank {

/// Rank distribution of a single block: entry r is NM_q(eta, m, r), r = 0..mu.
inline std::vector<Count> block_rank_distribution(const Params& p) {
    std::vector<Count> dist(p.mu() + 1);
    for (unsigned r = 0; r <= p.mu(); ++r) {
        dist[r] = num_matrices_rank(p.eta(), p.m(), r, p.q());
    }
    return dist;
}

/// Product of two count polynomials given by coefficient vectors.
inline std::vector<Count> convolve(const std::vector<Count>& a, const std::vector<Count>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Count> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// Sum-rank weight distribution of F_{q^m}^n: entry t is the number of vectors of
/// sum-rank weight t, for t = 0..ell*mu. Computed as the ell-fold self-convolution of
/// the single-block rank distribution.
inline std::vector<Count> weight_distribution(const Params& p) {
    const std::vector<Count> block = block_rank_distribution(p);
    std::vector<Count> dist{1};
    for (unsigned i = 0; i < p.ell(); ++i) {
        dist = convolve(dist, block);
    }
    return dist;
}

/// Sphere volume by the defining sum over rank profiles,
/// sum_{t in tau(t, ell, mu)} prod_i NM_q(eta, m, t_i). Reference path; the DP is faster.
inline Count sphere_volume_partition_sum(const Params& p, unsigned t) {
    const std::vector<Count> block = block_rank_distribution(p);
    Count total = 0;
    for (const RankProfile& profile : enumerate_uniform(t, p.ell(), p.mu())) {
        Count product = 1;
        for (unsigned part : profile) product *= block[part];
        total += product;
    }
    return total;
}

/// Number of vectors at sum-rank distance exactly t from any fixed center.
inline Count sphere_volume(const Params& p, unsigned t) {
    if (t > p.max_weight()) return 0;
    return weight_distribution(p)[t];
}

/// Number of vectors at sum-rank distance at most t from any fixed center.
/// Radii beyond ell*mu give the whole space, q^{mn}.
inline Count ball_volume(const Params& p, unsigned t) {
    if (t >= p.max_weight()) return ipow(p.q(), static_cast<std::uint64_t>(p.m()) * p.n());
    const std::vector<Count> dist = weight_distribution(p);
    Count total = 0;
    for (unsigned j = 0; j <= t; ++j) total += dist[j];
    return total;
}

}  // namespace sumrank
