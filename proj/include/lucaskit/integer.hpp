#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "lucaskit/error.hpp"

namespace lucaskit {

/// Arbitrary-precision signed integer. All arithmetic in this library is
/// exact; nothing is ever rounded.
using Integer = mpz_class;

/// Exact rational, kept canonical (positive denominator, reduced).
using Rational = mpq_class;

/// Sequence position. Values are unbounded, indices are machine-width.
using Index = std::int64_t;

/// |n| as an unsigned value, safe for Index = INT64_MIN.
inline std::uint64_t index_magnitude(Index n) {
    const auto u = static_cast<std::uint64_t>(n);
    return n < 0 ? std::uint64_t{0} - u : u;
}

/// base^e with e >= 0. 0^0 = 1 by the usual summation convention.
inline Integer pow_int(const Integer& base, std::uint64_t e) {
    if (e > std::numeric_limits<unsigned long>::max())
        throw Error(ErrorCode::exponent_too_large, "exponent " + std::to_string(e));
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

/// 2^e.
inline Integer pow2(std::uint64_t e) {
    Integer r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return r;
}

/// (-1)^n.
inline int alt_sign(Index n) { return (n & 1) ? -1 : 1; }

inline bool is_perfect_square(const Integer& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline std::string to_decimal(const Integer& v) { return v.get_str(10); }

/// Number of decimal digits of |v|; 0 has one digit.
inline std::size_t decimal_digits(const Integer& v) {
    if (sgn(v) == 0) return 1;
    std::string s = v.get_str(10);
    return s.size() - (s[0] == '-' ? 1 : 0);
}

/// Canonical rational from an integer pair; denominator must be nonzero.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0)
        throw Error(ErrorCode::invalid_argument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "num/den" with the denominator always spelled out ("3/2", "1/1", "-1/1").
inline std::string rational_fraction_str(const Rational& r) {
    return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

/// Shortest human form: "3/2" but plain "1" for integers.
inline std::string rational_str(const Rational& r) { return r.get_str(10); }

} // namespace lucaskit
