#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fgr/error.hpp"

namespace fgr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(std::int64_t n) {
    if (n < 0)
        throw InputError("factorial of a negative number");
    BigInt r = 1;
    for (std::int64_t i = 2; i <= n; ++i)
        r *= i;
    return r;
}

/// C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0)
        throw InputError("binomial with negative upper index");
    if (k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "p/q" in lowest terms, or just "p" for integers.
inline std::string to_string(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0)
        throw InputError("zero denominator");
    return Rational(num, den);
}

} // namespace fgr
