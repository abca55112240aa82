#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyadic {

using BigInt = boost::multiprecision::cpp_int;

// Remainder in [0, m) for m > 0, whatever the sign of x.
inline BigInt floor_mod(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace polyadic
