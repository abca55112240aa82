#pragma once

/**
 * @file padic_ring.hpp
 * @brief (m,n)-rings on representatives r_k = a + b k of p-adic integers.
 *
 * For p-adic a, b and coordinates k in Z_p the representatives are closed
 * under the m-ary sum iff (m - 1) a = b I for some p-adic I, and under the
 * n-ary product iff a^n - a = b J. Since b = p^v u with u a unit, both
 * conditions reduce to valuations: v_p((m - 1) a) >= v and v_p(a^n - a) >= v.
 * All equalities hold mod p^N for the working precision N; quotients by b
 * carry only N - v meaningful digits.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "polyadic/padic.hpp"
#include "polyadic/residue.hpp"

namespace polyadic {

// A quotient c / b known to N - v digits.
struct Quotient {
    PAdicInt value;  // precision() == N - v

    std::size_t precision() const noexcept { return value.precision(); }
    // The quotient zero-padded back to N digits; b * extended == c exactly.
    PAdicInt extended(std::size_t precision) const { return value.resized(precision); }
};

// Exact division in Z_p at fixed precision. Present iff valuation(c) >= valuation(b).
// Throws std::invalid_argument when b is the zero truncation or the operands differ.
std::optional<Quotient> p_divide(const PAdicInt& c, const PAdicInt& b);

struct PAdicRepresentative {
    PAdicInt k;
    PAdicInt value;

    bool operator==(const PAdicRepresentative&) const = default;
};

class PAdicClass {
public:
    // Throws std::invalid_argument if b is the zero truncation or a, b mismatch.
    PAdicClass(PAdicInt a, PAdicInt b);

    const PAdicInt& a() const noexcept { return a_; }
    const PAdicInt& b() const noexcept { return b_; }
    std::size_t b_valuation() const noexcept { return v_; }
    Prime prime() const noexcept { return a_.prime(); }
    std::size_t precision() const noexcept { return a_.precision(); }

    // a = 0 is the degenerate class b Z_p.
    bool is_degenerate() const noexcept { return a_.is_zero(); }

    PAdicRepresentative representative(const PAdicInt& k) const;
    // Recovers a coordinate for a value; throws std::invalid_argument when
    // value - a is not divisible by b.
    PAdicRepresentative element(const PAdicInt& value) const;
    bool contains(const PAdicInt& value) const;
    // p_divide(c, b) with the unit inverse of b already in hand.
    std::optional<Quotient> divide(const PAdicInt& c) const;

private:
    PAdicInt a_;
    PAdicInt b_;
    std::size_t v_;
    PAdicInt unit_inverse_;  // inverse of b / p^v, at precision N - v
};

// I with (m - 1) a = b I, absent when m-ary addition is not closed.
std::optional<Quotient> m_closure_invariant(const PAdicClass& cls, Arity m);
// J with a^n - a = b J, absent when n-ary multiplication is not closed.
std::optional<Quotient> n_closure_invariant(const PAdicClass& cls, Arity n);

// Sum of m representatives; the coordinate is (k_1 + ... + k_m) + I.
PAdicRepresentative nu_p(const PAdicClass& cls, Arity m, std::span<const PAdicRepresentative> reps);
// Product of n representatives; the coordinate is (value - a) / b.
PAdicRepresentative mu_p(const PAdicClass& cls, Arity n, std::span<const PAdicRepresentative> reps);

// Coordinate of the additive querelement: (2 - m) k - I.
PAdicInt quer_k(const PAdicInt& k, Arity m, const PAdicInt& I);

// Digit lifting result: residues of a mod p^v for which both closure
// conditions hold when v_p(b) = v. Digits from index v onward are free.
struct LiftSolution {
    Prime p = 2;
    Arity m = 2;
    Arity n = 2;
    std::size_t v = 1;
    std::size_t precision = 1;
    std::uint64_t modulus = 2;                // p^v
    std::vector<std::uint64_t> admissible;    // ascending
    std::vector<std::size_t> level_counts;    // survivors after each digit level
    std::size_t free_from() const noexcept { return v; }

    bool operator==(const LiftSolution&) const = default;
};

// Digit-by-digit search: level i extends every surviving prefix of a by each
// digit in [0, p - 1] and keeps those whose truncation satisfies
// v_p((m - 1) a) >= i + 1 and v_p(a^n - a) >= i + 1, stopping at level v.
// Requires 1 <= v <= precision, m, n >= 2 and p^v < 2^64.
LiftSolution lift_digits(Prime p, Arity m, Arity n, std::size_t v, std::size_t precision);

// Same, taking v from an explicit b.
LiftSolution lift_digits_for(const PAdicInt& b, Arity m, Arity n);

struct CheckResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::size_t trials = 0;
    std::string witness;  // first counterexample, empty when passed
};

struct RingReport {
    Arity m = 2;
    Arity n = 2;
    std::size_t samples = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* first_failure() const;
};

// Randomized verification of the (m,n)-ring laws over `samples` tuples of
// random coordinates: closure of nu_m and mu_n, the querelement law, total
// associativity in every block position, and distributivity.
RingReport verify_ring(const PAdicClass& cls, Arity m, Arity n, std::size_t samples,
                       std::uint64_t seed);

// Uniformly random truncated p-adic integer.
PAdicInt random_padic(Prime p, std::size_t precision, std::mt19937_64& rng);

}  // namespace polyadic
