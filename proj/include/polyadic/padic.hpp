#pragma once

/**
 * @file padic.hpp
 * @brief p-adic integers truncated to a fixed number of digits.
 *
 * A PAdicInt holds the first N digits of the canonical expansion
 *
 *     x = a_0 + a_1 p + a_2 p^2 + ...,    0 <= a_i <= p - 1,
 *
 * and so represents x mod p^N. Digits are stored little-endian and every
 * operation carries digit by digit, discarding anything above p^(N-1).
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyadic/bigint.hpp"

namespace polyadic {

using Prime = std::uint32_t;
using Digit = std::uint32_t;

// Largest prime base accepted: digit products must fit in 64 bits with carries.
inline constexpr Prime kMaxPrime = 2147483647u;

bool is_prime(std::uint64_t p);

// Throws std::invalid_argument unless p is a prime no larger than kMaxPrime.
Prime checked_prime(std::uint64_t p);

// The p-adic valuation of a truncation: either an exact digit index or the
// indeterminate "at least N" of an all-zero truncation.
class Valuation {
public:
    static Valuation exactly(std::size_t v) { return Valuation(v, true); }
    static Valuation at_least(std::size_t precision) { return Valuation(precision, false); }

    bool is_exact() const noexcept { return exact_; }
    // The exact index, or the precision bound when indeterminate.
    std::size_t bound() const noexcept { return value_; }

    // True when the valuation is known to be >= v.
    bool at_least_value(std::size_t v) const noexcept { return value_ >= v; }

    // "2", or "≥4" for the indeterminate case.
    std::string to_string() const;

    bool operator==(const Valuation&) const = default;

private:
    Valuation(std::size_t v, bool exact) : value_(v), exact_(exact) {}
    std::size_t value_;
    bool exact_;
};

class PAdicInt {
public:
    // Throws std::invalid_argument for a non-prime p, an empty digit vector, or
    // a digit outside [0, p - 1].
    PAdicInt(Prime p, std::vector<Digit> digits);

    static PAdicInt zero(Prime p, std::size_t precision);
    static PAdicInt from_integer(Prime p, std::size_t precision, const BigInt& x);
    static PAdicInt from_integer(Prime p, std::size_t precision, long long x) {
        return from_integer(p, precision, BigInt(x));
    }

    Prime prime() const noexcept { return p_; }
    std::size_t precision() const noexcept { return digits_.size(); }
    std::span<const Digit> digits() const noexcept { return digits_; }
    Digit digit(std::size_t i) const { return digits_.at(i); }

    bool is_zero() const noexcept;
    bool is_unit() const noexcept { return digits_.front() != 0; }
    Valuation valuation() const noexcept;

    // Value in [0, p^N).
    BigInt to_integer() const;
    // Representative in (-p^N / 2, p^N / 2], recovering small negative integers.
    BigInt to_signed_integer() const;

    PAdicInt operator-() const;
    PAdicInt operator+(const PAdicInt& rhs) const;
    PAdicInt operator-(const PAdicInt& rhs) const;
    PAdicInt operator*(const PAdicInt& rhs) const;
    PAdicInt& operator+=(const PAdicInt& rhs) { return *this = *this + rhs; }
    PAdicInt& operator-=(const PAdicInt& rhs) { return *this = *this - rhs; }
    PAdicInt& operator*=(const PAdicInt& rhs) { return *this = *this * rhs; }

    // Product with a small signed integer, embedded at the same precision.
    PAdicInt scaled(long long factor) const;
    PAdicInt pow(std::uint64_t exponent) const;

    // Multiplicative inverse mod p^N; throws std::domain_error for non-units.
    PAdicInt inverse() const;

    // x / p^count with the low digits dropped; precision shrinks by count.
    PAdicInt shifted_down(std::size_t count) const;
    // Keeps the first `precision` digits (or pads with zeros when growing).
    PAdicInt resized(std::size_t precision) const;

    bool operator==(const PAdicInt&) const = default;

private:
    PAdicInt(Prime p, std::vector<Digit> digits, bool /*trusted*/)
        : p_(p), digits_(std::move(digits)) {}
    void require_compatible(const PAdicInt& rhs) const;

    Prime p_;
    std::vector<Digit> digits_;
};

// y_i = a_0 + a_1 p + ... + a_{i-1} p^{i-1} for i = 1..N, stored at index i - 1.
struct PartialSums {
    Prime p = 2;
    std::vector<BigInt> y;

    // y_{i+1} = y_i (mod p^i) and 0 <= y_i <= p^i - 1 for every i.
    bool is_reduced_coherent() const;
};

PartialSums partial_sums(const PAdicInt& x);

// Componentwise order: every digit of x is below (strict) or at most
// (nonstrict) the matching digit of y, over the available precision.
bool comp_less(const PAdicInt& x, const PAdicInt& y, bool strict);

// ".0011 (2-adic)" for p <= 10; ".1.0.12 (13-adic)" for larger p.
std::string to_positional_string(const PAdicInt& x);
PAdicInt parse_positional_string(std::string_view text);

// "p:N:a_0,a_1,...,a_{N-1}", little-endian.
std::string to_digit_string(const PAdicInt& x);
PAdicInt parse_digit_string(std::string_view text);

}  // namespace polyadic
