#pragma once

/**
 * @file residue.hpp
 * @brief Polyadic (m,n)-rings built from representatives of an integer residue class.
 *
 * The representatives r_k = a + b k of a fixed class [a]_b are not closed under
 * binary addition or multiplication in general. They are closed under the m-ary
 * sum exactly when m a = a (mod b), and under the n-ary product exactly when
 * a^n = a (mod b). The minimal such (m, n) together with the exact quotients
 *
 *     I = (m - 1) a / b,        J = (a^n - a) / b
 *
 * form the arity shape of the class.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyadic/bigint.hpp"

namespace polyadic {

using Arity = std::uint64_t;

// Raised when an m-ary addition or n-ary multiplication is requested at an
// arity for which the class is not closed.
class ArityNotClosed : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ResidueClass {
public:
    // Throws std::invalid_argument unless 0 <= a <= b - 1 and b >= 1.
    ResidueClass(BigInt a, BigInt b);

    const BigInt& a() const noexcept { return a_; }
    const BigInt& b() const noexcept { return b_; }

    // The class [0]_1, i.e. all of Z with its binary ring structure.
    bool is_degenerate() const noexcept { return b_ == 1; }

    bool operator==(const ResidueClass&) const = default;

private:
    BigInt a_;
    BigInt b_;
};

// An element of a class, carrying its coordinate k with value = a + b k.
struct ClassElement {
    BigInt value;
    BigInt k;

    bool operator==(const ClassElement&) const = default;
};

struct ArityShape {
    Arity m = 2;
    Arity n = 2;
    BigInt I;
    BigInt J;

    bool operator==(const ArityShape&) const = default;
};

ClassElement representative(const ResidueClass& cls, const BigInt& k);

// Wraps an integer already known to lie in the class; throws
// std::invalid_argument otherwise.
ClassElement element_of(const ResidueClass& cls, const BigInt& value);

bool contains(const ResidueClass& cls, const BigInt& x);

bool add_closed(const ResidueClass& cls, Arity m);
bool mul_closed(const ResidueClass& cls, Arity n);

// Smallest m in [2, m_cap] with m a = a (mod b). For a >= 1 this is
// 1 + b / gcd(a, b).
std::optional<Arity> min_add_arity(const ResidueClass& cls, Arity m_cap);

// Smallest n in [2, n_cap] with a^n = a (mod b). n_cap defaults to b + 1,
// past which the power sequence cannot first return to a.
std::optional<Arity> min_mul_arity(const ResidueClass& cls,
                                   std::optional<Arity> n_cap = std::nullopt);

// Minimal arity shape, absent when no n-ary multiplication closes.
// Requires a >= 1, except for the degenerate class [0]_1 which maps to (2,2,0,0).
std::optional<ArityShape> arity_shape(const ResidueClass& cls);

// m-ary addition and n-ary multiplication of class elements.
ClassElement nu(const ResidueClass& cls, Arity m, std::span<const ClassElement> elems);
ClassElement mu(const ResidueClass& cls, Arity n, std::span<const ClassElement> elems);

// The unique r~ with nu_m[r, ..., r, r~] = r, namely (2 - m) r.
ClassElement add_querelement(const ResidueClass& cls, Arity m, const ClassElement& r);

// e in {1, -1} with mu_n[e, ..., e, r] = r for all r, if e lies in the class.
std::optional<ClassElement> mul_identity(const ResidueClass& cls, Arity n);

// Additive neutral z with nu_m[z, ..., z, r] = r. Only z = 0 can qualify, so the
// class is zeroless exactly when a != 0.
std::optional<ClassElement> add_neutral(const ResidueClass& cls, Arity m);

struct ShapeCell {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::optional<ArityShape> shape;
};

// Cells for 2 <= b <= b_max and 1 <= a <= min(a_max, b - 1), ordered by a then b.
std::vector<ShapeCell> shape_table(std::uint64_t a_max, std::uint64_t b_max);

}  // namespace polyadic
