#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "count.hpp"
#include "qkit.hpp"

namespace sumrank {

/// Per-block rank vector, e.g. the ranks of the blocks of a vector or the
/// per-block distances between two centers.
class RankProfile {
public:
    RankProfile() = default;
    explicit RankProfile(std::vector<unsigned> parts) : parts_(std::move(parts)) {}
    RankProfile(std::initializer_list<unsigned> parts) : parts_(parts) {}

    std::size_t size() const noexcept { return parts_.size(); }
    unsigned operator[](std::size_t i) const { return parts_[i]; }
    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    unsigned total() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

    bool is_zero() const noexcept {
        return std::all_of(parts_.begin(), parts_.end(), [](unsigned p) { return p == 0; });
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    friend auto operator<=>(const RankProfile&, const RankProfile&) = default;
    friend bool operator==(const RankProfile&, const RankProfile&) = default;

    friend std::ostream& operator<<(std::ostream& os, const RankProfile& p) {
        return os << '(' << p.to_string() << ')';
    }

private:
    std::vector<unsigned> parts_;
};

/// Streams every composition of `total` into bounds.size() parts with part i <= bounds[i],
/// in lexicographic order. Only the current composition is held in memory.
///
///   for (const RankProfile& p : BoundedCompositions(3, {2, 2})) { ... }  // (1,2), (2,1)
class BoundedCompositions {
public:
    BoundedCompositions(unsigned total, std::vector<unsigned> bounds)
        : total_(total), bounds_(std::move(bounds)) {}

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = RankProfile;
        using difference_type = std::ptrdiff_t;
        using pointer = const RankProfile*;
        using reference = const RankProfile&;

        iterator() = default;

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++() {
            if (!advance()) owner_ = nullptr;
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& a, const iterator& b) { return a.owner_ == b.owner_; }

    private:
        friend class BoundedCompositions;

        explicit iterator(const BoundedCompositions* owner) : owner_(owner) {
            std::vector<unsigned> parts(owner->bounds_.size(), 0);
            if (!fill_smallest(parts, 0, owner->total_)) {
                owner_ = nullptr;
                return;
            }
            current_ = RankProfile(std::move(parts));
        }

        // Lexicographically smallest fill of positions [from, end) summing to `remaining`:
        // saturate from the right.
        bool fill_smallest(std::vector<unsigned>& parts, std::size_t from, unsigned remaining) const {
            for (std::size_t i = parts.size(); i-- > from;) {
                const unsigned take = std::min(remaining, owner_->bounds_[i]);
                parts[i] = take;
                remaining -= take;
            }
            return remaining == 0;
        }

        bool advance() {
            std::vector<unsigned> parts = current_.parts();
            const auto& bounds = owner_->bounds_;
            unsigned suffix = 0;
            // Rightmost position that can grow by one while the suffix gives one unit back.
            for (std::size_t i = parts.size(); i-- > 0;) {
                if (suffix > 0 && parts[i] < bounds[i]) {
                    ++parts[i];
                    fill_smallest(parts, i + 1, suffix - 1);
                    current_ = RankProfile(std::move(parts));
                    return true;
                }
                suffix += parts[i];
            }
            return false;
        }

        const BoundedCompositions* owner_ = nullptr;
        RankProfile current_;
    };

    iterator begin() const { return iterator(this); }
    iterator end() const { return iterator(); }

    std::vector<RankProfile> to_vector() const { return {begin(), end()}; }

private:
    unsigned total_;
    std::vector<unsigned> bounds_;
};

/// Compositions of t into exactly `parts` summands, each <= bound.
inline BoundedCompositions enumerate_uniform(unsigned t, unsigned parts, unsigned bound) {
    return BoundedCompositions(t, std::vector<unsigned>(parts, bound));
}

/// Compositions of t where summand i is at most bounds[i].
inline BoundedCompositions enumerate_bounded(unsigned t, std::vector<unsigned> bounds) {
    return BoundedCompositions(t, std::move(bounds));
}

/// Number of compositions of t into `parts` summands each <= bound, by inclusion-exclusion:
///
///   sum_{i=0}^{floor(t/(bound+1))} (-1)^i C(parts, i) C(t + parts - 1 - (bound+1) i, parts - 1)
///
/// Binomials with a top argument below the bottom one count as 0.
inline Count count_uniform(unsigned t, unsigned parts, unsigned bound) {
    if (parts == 0) return t == 0 ? 1 : 0;
    SignedCount sum = 0;
    const unsigned width = bound + 1;
    for (unsigned i = 0; i <= t / width; ++i) {
        const unsigned top = t + parts - 1 - width * i;
        SignedCount term = binomial(parts, i) * binomial(top, parts - 1);
        if (i % 2 == 1) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    if (sum < 0) throw InternalInconsistency("count_uniform: negative composition count");
    return sum;
}

/// Stars-and-bars bound C(t + parts - 1, parts - 1) on count_uniform.
inline Count count_upper_bound(unsigned t, unsigned parts) {
    if (parts == 0) return t == 0 ? 1 : 0;
    return binomial(t + parts - 1, parts - 1);
}

}  // namespace sumrank
