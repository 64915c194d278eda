#pragma once

// Brute-force ground truth over prime fields.
//
// Vectors of F_{q^m}^n are handled as ell blocks, each an m x eta matrix over F_q,
// and all q^{mn} vectors are visited as a mixed-radix counter whose digits are block
// indices. Block ranks come from Gaussian elimination mod q, tabulated once per block
// index, so the inner loop only adds table entries.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "compositions.hpp"
#include "count.hpp"
#include "errors.hpp"
#include "params.hpp"

namespace sumrank::oracle {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Upper limit on the number of vectors (or matrices) a single oracle run may visit.
struct Budget {
    std::uint64_t max_items = kDefaultBudget;
};

inline bool is_prime(unsigned q) {
    if (q < 2) return false;
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

inline void require_prime(unsigned q) {
    if (!is_prime(q)) {
        throw InvalidArgument("oracle supports prime q only (got q=" + std::to_string(q) + ")");
    }
}

/// Throws BudgetExceeded unless q^exponent <= budget.
inline void require_budget(unsigned q, std::uint64_t exponent, const Budget& budget, const char* what) {
    const Count needed = ipow(q, exponent);
    if (needed > budget.max_items) {
        throw BudgetExceeded(std::string(what) + ": needs " + needed.str() + " items, budget is " +
                                 std::to_string(budget.max_items),
                             needed.str());
    }
}

/// Dense rows x cols matrix over F_q with entries in [0, q).
class Matrix {
public:
    Matrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), entries_(std::size_t{rows} * cols, 0) {}
    Matrix(unsigned rows, unsigned cols, std::vector<unsigned> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != std::size_t{rows} * cols) {
            throw InvalidArgument("Matrix: entry count does not match shape");
        }
    }

    unsigned rows() const noexcept { return rows_; }
    unsigned cols() const noexcept { return cols_; }
    unsigned& operator()(unsigned r, unsigned c) { return entries_[std::size_t{r} * cols_ + c]; }
    unsigned operator()(unsigned r, unsigned c) const { return entries_[std::size_t{r} * cols_ + c]; }
    const std::vector<unsigned>& entries() const noexcept { return entries_; }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (unsigned r = 0; r < rows_; ++r)
            for (unsigned c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    unsigned rows_;
    unsigned cols_;
    std::vector<unsigned> entries_;
};

namespace detail {

inline unsigned inverse_mod(unsigned a, unsigned q) {
    // q prime: a^{q-2}
    std::uint64_t result = 1;
    std::uint64_t base = a % q;
    for (unsigned e = q - 2; e > 0; e >>= 1) {
        if (e & 1u) result = result * base % q;
        base = base * base % q;
    }
    return static_cast<unsigned>(result);
}

// Reduced row echelon form in place; returns the rank.
inline unsigned row_reduce(Matrix& a, unsigned q) {
    unsigned rank = 0;
    for (unsigned col = 0; col < a.cols() && rank < a.rows(); ++col) {
        unsigned pivot = rank;
        while (pivot < a.rows() && a(pivot, col) % q == 0) ++pivot;
        if (pivot == a.rows()) continue;
        for (unsigned c = 0; c < a.cols(); ++c) std::swap(a(rank, c), a(pivot, c));
        const std::uint64_t inv = inverse_mod(a(rank, col), q);
        for (unsigned c = 0; c < a.cols(); ++c) a(rank, c) = static_cast<unsigned>(a(rank, c) * inv % q);
        for (unsigned r = 0; r < a.rows(); ++r) {
            if (r == rank) continue;
            const std::uint64_t factor = a(r, col) % q;
            if (factor == 0) continue;
            for (unsigned c = 0; c < a.cols(); ++c) {
                a(r, c) = static_cast<unsigned>((a(r, c) + (q - factor) * a(rank, c)) % q);
            }
        }
        ++rank;
    }
    return rank;
}

// Entries of block index `index` in base q, row-major, least significant first.
inline Matrix decode_block(std::uint64_t index, unsigned rows, unsigned cols, unsigned q) {
    Matrix out(rows, cols);
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c) {
            out(r, c) = static_cast<unsigned>(index % q);
            index /= q;
        }
    return out;
}

inline Matrix subtract(const Matrix& a, const Matrix& b, unsigned q) {
    Matrix out(a.rows(), a.cols());
    for (unsigned r = 0; r < a.rows(); ++r)
        for (unsigned c = 0; c < a.cols(); ++c) out(r, c) = (a(r, c) + q - b(r, c)) % q;
    return out;
}

}  // namespace detail

/// Rank of a matrix over the prime field F_q.
inline unsigned matrix_rank(const Matrix& mat, unsigned q) {
    require_prime(q);
    Matrix work = mat;
    for (auto r = 0u; r < work.rows(); ++r)
        for (auto c = 0u; c < work.cols(); ++c)
            if (work(r, c) >= q) throw InvalidArgument("matrix_rank: entry out of range for F_q");
    return detail::row_reduce(work, q);
}

/// A vector of F_{q^m}^n as ell blocks of m x eta matrices over F_q.
struct BlockVector {
    std::vector<Matrix> blocks;

    static BlockVector zero(const Params& p) { return {std::vector<Matrix>(p.ell(), Matrix(p.m(), p.eta()))}; }
};

inline unsigned sumrank_weight(const BlockVector& v, unsigned q) {
    unsigned weight = 0;
    for (const Matrix& block : v.blocks) weight += matrix_rank(block, q);
    return weight;
}

inline BlockVector difference(const BlockVector& a, const BlockVector& b, unsigned q) {
    if (a.blocks.size() != b.blocks.size()) throw InvalidArgument("difference: block counts differ");
    BlockVector out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) out.blocks.push_back(detail::subtract(a.blocks[i], b.blocks[i], q));
    return out;
}

inline unsigned sumrank_distance(const BlockVector& a, const BlockVector& b, unsigned q) {
    return sumrank_weight(difference(a, b, q), q);
}

/// Two centers together with the per-block ranks of their difference.
struct CenterPair {
    BlockVector x;
    BlockVector y;
    RankProfile profile;
};

/// x = 0 and y with profile[i] leading diagonal ones in block i.
inline CenterPair canonical_centers(const Params& p, const RankProfile& profile) {
    require_prime(p.q());
    if (profile.size() != p.ell()) throw InvalidArgument("canonical_centers: profile length must equal ell");
    CenterPair pair{BlockVector::zero(p), BlockVector::zero(p), profile};
    for (unsigned i = 0; i < p.ell(); ++i) {
        if (profile[i] > p.mu()) throw InvalidArgument("canonical_centers: profile part exceeds mu");
        for (unsigned j = 0; j < profile[i]; ++j) pair.y.blocks[i](j, j) = 1;
    }
    return pair;
}

/// Joint distribution of (d(v, x), d(v, y)) over all v, for the canonical centers of `profile`:
/// cell [a][b] counts vectors at distance a from x and b from y.
class DistanceHistogram {
public:
    DistanceHistogram(const Params& p, const RankProfile& profile, const Budget& budget = {})
        : max_weight_(p.max_weight()),
          cells_(std::size_t{max_weight_ + 1} * (max_weight_ + 1), 0) {
        require_prime(p.q());
        require_budget(p.q(), std::uint64_t{p.m()} * p.n(), budget, "oracle enumeration");
        const CenterPair centers = canonical_centers(p, profile);

        const unsigned q = p.q();
        const std::uint64_t block_count = static_cast<std::uint64_t>(ipow(q, std::uint64_t{p.m()} * p.eta()));
        // rank of each block, and rank of (block - y_i) for every block position i
        std::vector<std::uint8_t> rank_from_x(block_count);
        std::vector<std::vector<std::uint8_t>> rank_from_y(p.ell(), std::vector<std::uint8_t>(block_count));
        for (std::uint64_t index = 0; index < block_count; ++index) {
            const Matrix block = detail::decode_block(index, p.m(), p.eta(), q);
            rank_from_x[index] = static_cast<std::uint8_t>(matrix_rank(block, q));
            for (unsigned i = 0; i < p.ell(); ++i) {
                rank_from_y[i][index] =
                    static_cast<std::uint8_t>(matrix_rank(detail::subtract(block, centers.y.blocks[i], q), q));
            }
        }

        std::vector<std::uint64_t> digits(p.ell(), 0);
        while (true) {
            unsigned a = 0;
            unsigned b = 0;
            for (unsigned i = 0; i < p.ell(); ++i) {
                a += rank_from_x[digits[i]];
                b += rank_from_y[i][digits[i]];
            }
            ++cells_[std::size_t{a} * (max_weight_ + 1) + b];
            unsigned pos = 0;
            while (pos < p.ell() && ++digits[pos] == block_count) digits[pos++] = 0;
            if (pos == p.ell()) break;
        }
    }

    unsigned max_weight() const noexcept { return max_weight_; }

    std::uint64_t at(unsigned from_x, unsigned from_y) const {
        if (from_x > max_weight_ || from_y > max_weight_) return 0;
        return cells_[std::size_t{from_x} * (max_weight_ + 1) + from_y];
    }

    /// Vectors within distance u of x and s of y.
    Count within(unsigned u, unsigned s) const {
        std::uint64_t total = 0;
        for (unsigned a = 0; a <= std::min(u, max_weight_); ++a)
            for (unsigned b = 0; b <= std::min(s, max_weight_); ++b) total += at(a, b);
        return total;
    }

    /// Vectors at distance exactly t from x.
    Count sphere(unsigned t) const {
        std::uint64_t total = 0;
        for (unsigned b = 0; b <= max_weight_; ++b) total += at(t, b);
        return total;
    }

private:
    unsigned max_weight_;
    std::vector<std::uint64_t> cells_;
};

/// Exhaustive count of vectors of sum-rank weight exactly t.
inline Count count_sphere(const Params& p, unsigned t, const Budget& budget = {}) {
    if (t > p.max_weight()) {
        require_prime(p.q());
        require_budget(p.q(), std::uint64_t{p.m()} * p.n(), budget, "oracle enumeration");
        return 0;
    }
    return DistanceHistogram(p, RankProfile(std::vector<unsigned>(p.ell(), 0)), budget).sphere(t);
}

/// Exhaustive |B(x,u) ∩ B(y,s)| for the canonical centers with per-block distances `profile`.
inline Count count_intersection(const Params& p, unsigned u, unsigned s, const RankProfile& profile,
                                const Budget& budget = {}) {
    return DistanceHistogram(p, profile, budget).within(u, s);
}

/// For a fixed m x n matrix X of rank r, count rank-1 matrices Y with rk(X - Y) = r + 1.
inline Count count_rank1_additive(unsigned n, unsigned m, unsigned r, unsigned q, const Budget& budget = {}) {
    require_prime(q);
    if (r > std::min(m, n)) throw InvalidArgument("count_rank1_additive: r exceeds min(m,n)");
    require_budget(q, std::uint64_t{m} * n, budget, "rank-1 enumeration");
    Matrix x(m, n);
    for (unsigned j = 0; j < r; ++j) x(j, j) = 1;
    const std::uint64_t total = static_cast<std::uint64_t>(ipow(q, std::uint64_t{m} * n));
    std::uint64_t hits = 0;
    for (std::uint64_t index = 0; index < total; ++index) {
        const Matrix y = detail::decode_block(index, m, n, q);
        if (matrix_rank(y, q) == 1 && matrix_rank(detail::subtract(x, y, q), q) == r + 1) ++hits;
    }
    return hits;
}

namespace detail {

// All subspaces of F_q^k of dimension a, each as its reduced row echelon basis.
inline std::set<std::vector<unsigned>> subspaces(unsigned k, unsigned a, unsigned q) {
    std::set<std::vector<unsigned>> found;
    const std::uint64_t total = static_cast<std::uint64_t>(ipow(q, std::uint64_t{k} * a));
    for (std::uint64_t index = 0; index < total; ++index) {
        Matrix basis = decode_block(index, a, k, q);
        if (row_reduce(basis, q) == a) found.insert(basis.entries());
    }
    return found;
}

}  // namespace detail

/// Counts ordered pairs (A, B) of subspaces of a fixed k-dimensional F_q-space with
/// dim A = a and A ⊕ B the whole space, by enumerating all subspaces.
/// Spaces of dimension above 4 are refused.
inline Count els_pair_count_check(unsigned k, unsigned a, unsigned q, const Budget& budget = {}) {
    require_prime(q);
    if (k > 4) throw InvalidArgument("els_pair_count_check: ambient dimension must be <= 4");
    if (a > k) throw InvalidArgument("els_pair_count_check: requires a <= k");
    const unsigned b = k - a;
    require_budget(q, std::uint64_t{k} * std::max(a, b), budget, "subspace enumeration");

    const auto first = detail::subspaces(k, a, q);
    const auto second = detail::subspaces(k, b, q);
    std::uint64_t pairs = 0;
    for (const auto& basis_a : first) {
        for (const auto& basis_b : second) {
            std::vector<unsigned> stacked = basis_a;
            stacked.insert(stacked.end(), basis_b.begin(), basis_b.end());
            Matrix joint(k, k, std::move(stacked));
            if (detail::row_reduce(joint, q) == k) ++pairs;
        }
    }
    return pairs;
}

}  // namespace sumrank::oracle
