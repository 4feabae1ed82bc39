#pragma once

/**
 * @file scalar.hpp
 * @brief Exact rational scalars and small helpers around them.
 *
 * All arithmetic in the library is done over Q using GMP rationals.
 * Values are kept in canonical form (reduced, positive denominator).
 */

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superweyl {

using Scalar = mpq_class;

/// Error raised for malformed user input (bad literals, bad parameters).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Error raised when an operation is well-formed but not supported for the
/// given family or system (root-data-only families, failing condition checks).
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Error raised when an internal invariant fails; always a bug.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

inline Scalar make_scalar(long num, long den = 1) {
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

/// "p/q" (or "p" for integers) rendering used by every serialized format.
inline std::string to_string(const Scalar& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Scalar parse_scalar(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw InvalidInput("empty scalar literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/' || c == '+'))
            throw InvalidInput("bad scalar literal '" + s + "'");
    }
    if (s.front() == '+') s.erase(s.begin());
    Scalar q;
    if (q.set_str(s, 10) != 0) throw InvalidInput("bad scalar literal '" + std::string(text) + "'");
    if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

inline bool is_natural(const Scalar& q) { return is_integer(q) && sgn(q) >= 0; }

/// Nonnegative integer power; 0^0 = 1.
inline Scalar power(const Scalar& base, unsigned exponent) {
    Scalar r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

using ScalarVector = std::vector<Scalar>;

inline std::vector<std::string> to_strings(const ScalarVector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

}  // namespace superweyl
