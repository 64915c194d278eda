#pragma once

// Exact q-analogue arithmetic over arbitrary-precision integers.
//
// All functions are q-generic: q may be any integer >= 2, prime power or not.

#include <algorithm>
#include <string>

#include "count.hpp"
#include "errors.hpp"

namespace sumrank {

namespace detail {

inline void require_q(unsigned q, const char* where) {
    if (q < 2) {
        throw InvalidArgument(std::string(where) + ": q must be >= 2 (got " + std::to_string(q) + ")");
    }
}

}  // namespace detail

/// Ordinary binomial coefficient C(n, k); 0 when k > n.
inline Count binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Count result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // result == C(n-k+i-1, i-1) before this step
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// Gaussian binomial [n choose k]_q, the number of k-dimensional subspaces of F_q^n.
///
/// Evaluated as the telescoping product prod_{i=1..k} (q^{n-k+i} - 1) / (q^i - 1),
/// dividing after every multiplication; each partial product is [n-k+i choose i]_q,
/// so every division is exact.
inline Count gaussian_binomial(unsigned n, unsigned k, unsigned q) {
    detail::require_q(q, "gaussian_binomial");
    if (k > n) return 0;
    Count result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= ipow(q, n - k + i) - 1;
        result = exact_div(result, ipow(q, i) - 1, "gaussian_binomial");
    }
    return result;
}

/// Number of m x n matrices over F_q of rank exactly t:
/// [n choose t]_q * prod_{i<t} (q^m - q^i). Zero when t > min(m, n).
inline Count num_matrices_rank(unsigned n, unsigned m, unsigned t, unsigned q) {
    detail::require_q(q, "num_matrices_rank");
    if (t > std::min(m, n)) return 0;
    Count result = gaussian_binomial(n, t, q);
    const Count qm = ipow(q, m);
    for (unsigned i = 0; i < t; ++i) {
        result *= qm - ipow(q, i);
    }
    return result;
}

/// q-Krawtchouk polynomial K_j(i; n, m) of the bilinear-forms scheme, evaluated at i:
///
///   sum_{l=0..j} (-1)^{j-l} q^{l m + C(j-l, 2)} [n-l choose n-j]_q [n-i choose l]_q
///
/// with C(0,2) = C(1,2) = 0.
inline SignedCount q_krawtchouk(unsigned j, unsigned i, unsigned n, unsigned m, unsigned q) {
    detail::require_q(q, "q_krawtchouk");
    if (i > n || j > n) {
        throw InvalidArgument("q_krawtchouk: requires i, j <= n (i=" + std::to_string(i) +
                              ", j=" + std::to_string(j) + ", n=" + std::to_string(n) + ")");
    }
    SignedCount sum = 0;
    for (unsigned l = 0; l <= j; ++l) {
        const unsigned gap = j - l;
        const unsigned pair_count = gap * (gap - (gap > 0 ? 1 : 0)) / 2;
        SignedCount term = ipow(q, static_cast<std::uint64_t>(l) * m + pair_count);
        term *= gaussian_binomial(n - l, n - j, q);
        if (term == 0) continue;
        term *= gaussian_binomial(n - i, l, q);
        if (gap % 2 == 1) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    return sum;
}

}  // namespace sumrank
