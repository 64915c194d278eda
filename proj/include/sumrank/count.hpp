#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace sumrank {

/// Exact cardinality. Kept nonnegative by every producing function.
using Count = boost::multiprecision::cpp_int;

/// Exact signed integer for alternating sums (q-Krawtchouk values, literal formulas).
using SignedCount = boost::multiprecision::cpp_int;

inline Count ipow(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(Count(base), static_cast<unsigned>(exponent));
}

inline std::string to_decimal(const Count& value) { return value.str(); }

inline Count from_decimal(const std::string& text) {
    const std::size_t digits_from = (!text.empty() && text[0] == '-') ? 1 : 0;
    if (text.size() == digits_from ||
        text.find_first_not_of("0123456789", digits_from) != std::string::npos) {
        throw InvalidArgument("not a decimal integer: '" + text + "'");
    }
    return Count(text);
}

/// Divides and throws InternalInconsistency if the remainder is nonzero.
inline Count exact_div(const Count& numerator, const Count& denominator, const char* where) {
    if (denominator == 0) {
        throw InternalInconsistency(std::string(where) + ": division by zero");
    }
    Count quotient;
    Count remainder;
    boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
    if (remainder != 0) {
        throw InternalInconsistency(std::string(where) + ": non-exact division " + numerator.str() +
                                    " / " + denominator.str());
    }
    return quotient;
}

}  // namespace sumrank
