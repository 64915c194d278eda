#pragma once

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace sumrank {

/// Ambient space F_{q^m}^n split into `ell` blocks of length `eta`.
///
/// Each block is identified with an m x eta matrix over F_q, so a block has rank
/// at most mu = min(m, eta) and a vector has sum-rank weight at most ell * mu.
class Params {
public:
    Params(unsigned q, unsigned m, unsigned eta, unsigned ell) : q_(q), m_(m), eta_(eta), ell_(ell) {
        if (q < 2) throw InvalidArgument("q must be >= 2 (got " + std::to_string(q) + ")");
        if (m == 0) throw InvalidArgument("m must be positive");
        if (eta == 0) throw InvalidArgument("eta must be positive");
        if (ell == 0) throw InvalidArgument("ell must be positive");
    }

    unsigned q() const noexcept { return q_; }
    unsigned m() const noexcept { return m_; }
    unsigned eta() const noexcept { return eta_; }
    unsigned ell() const noexcept { return ell_; }
    unsigned n() const noexcept { return ell_ * eta_; }
    unsigned mu() const noexcept { return std::min(m_, eta_); }
    /// Largest attainable sum-rank weight.
    unsigned max_weight() const noexcept { return ell_ * mu(); }

    friend bool operator==(const Params&, const Params&) = default;

private:
    unsigned q_;
    unsigned m_;
    unsigned eta_;
    unsigned ell_;
};

}  // namespace sumrank
