#include "polyadic/padic.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace polyadic {

namespace {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

std::uint64_t parse_unsigned(std::string_view text, const char* what) {
    std::uint64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw std::invalid_argument(std::string("malformed ") + what + ": '" +
                                    std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

Prime checked_prime(std::uint64_t p) {
    if (p > kMaxPrime || !is_prime(p)) {
        throw std::invalid_argument("p = " + std::to_string(p) + " is not a supported prime");
    }
    return static_cast<Prime>(p);
}

std::string Valuation::to_string() const {
    return exact_ ? std::to_string(value_) : "≥" + std::to_string(value_);
}

PAdicInt::PAdicInt(Prime p, std::vector<Digit> digits) : p_(checked_prime(p)), digits_(std::move(digits)) {
    if (digits_.empty()) {
        throw std::invalid_argument("p-adic precision must be at least 1");
    }
    for (const Digit d : digits_) {
        if (d >= p_) {
            throw std::invalid_argument("digit " + std::to_string(d) + " out of range for p = " +
                                        std::to_string(p_));
        }
    }
}

PAdicInt PAdicInt::zero(Prime p, std::size_t precision) {
    return PAdicInt(p, std::vector<Digit>(precision, 0));
}

PAdicInt PAdicInt::from_integer(Prime p, std::size_t precision, const BigInt& x) {
    checked_prime(p);
    if (precision == 0) {
        throw std::invalid_argument("p-adic precision must be at least 1");
    }
    const BigInt modulus = ipow(BigInt(p), precision);
    BigInt rest = floor_mod(x, modulus);
    std::vector<Digit> digits(precision, 0);
    for (auto& d : digits) {
        d = static_cast<Digit>(rest % p);
        rest /= p;
    }
    return PAdicInt(p, std::move(digits), true);
}

bool PAdicInt::is_zero() const noexcept {
    return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

Valuation PAdicInt::valuation() const noexcept {
    const auto it = std::find_if(digits_.begin(), digits_.end(), [](Digit d) { return d != 0; });
    if (it == digits_.end()) return Valuation::at_least(digits_.size());
    return Valuation::exactly(static_cast<std::size_t>(it - digits_.begin()));
}

BigInt PAdicInt::to_integer() const {
    BigInt value = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
        value = value * p_ + *it;
    }
    return value;
}

BigInt PAdicInt::to_signed_integer() const {
    const BigInt modulus = ipow(BigInt(p_), digits_.size());
    BigInt value = to_integer();
    if (2 * value > modulus) value -= modulus;
    return value;
}

void PAdicInt::require_compatible(const PAdicInt& rhs) const {
    if (p_ != rhs.p_ || digits_.size() != rhs.digits_.size()) {
        throw std::invalid_argument("p-adic operands differ in prime or precision");
    }
}

PAdicInt PAdicInt::operator-() const {
    std::vector<Digit> out(digits_.size(), 0);
    std::size_t i = 0;
    while (i < digits_.size() && digits_[i] == 0) ++i;
    if (i < digits_.size()) {
        out[i] = p_ - digits_[i];
        for (++i; i < digits_.size(); ++i) out[i] = p_ - 1 - digits_[i];
    }
    return PAdicInt(p_, std::move(out), true);
}

PAdicInt PAdicInt::operator+(const PAdicInt& rhs) const {
    require_compatible(rhs);
    std::vector<Digit> out(digits_.size());
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        const std::uint64_t t = std::uint64_t{digits_[i]} + rhs.digits_[i] + carry;
        out[i] = static_cast<Digit>(t % p_);
        carry = t / p_;
    }
    return PAdicInt(p_, std::move(out), true);
}

PAdicInt PAdicInt::operator-(const PAdicInt& rhs) const {
    require_compatible(rhs);
    std::vector<Digit> out(digits_.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        std::int64_t t = std::int64_t{digits_[i]} - rhs.digits_[i] - borrow;
        borrow = t < 0 ? 1 : 0;
        if (t < 0) t += p_;
        out[i] = static_cast<Digit>(t);
    }
    return PAdicInt(p_, std::move(out), true);
}

PAdicInt PAdicInt::operator*(const PAdicInt& rhs) const {
    require_compatible(rhs);
    const std::size_t n = digits_.size();
    std::vector<Digit> out(n, 0);
    if (p_ < (1u << 16) && n < (std::size_t{1} << 30)) {
        // Column sums stay below n p^2 < 2^62, so one division per digit suffices.
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t t = carry;
            for (std::size_t j = 0; j <= i; ++j) {
                t += std::uint64_t{digits_[j]} * rhs.digits_[i - j];
            }
            out[i] = static_cast<Digit>(t % p_);
            carry = t / p_;
        }
        return PAdicInt(p_, std::move(out), true);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t y = rhs.digits_[j];
        if (y == 0) continue;
        // (p-1)^2 + 2(p-1) < 2^64 for p <= kMaxPrime.
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i + j < n; ++i) {
            const std::uint64_t t = out[i + j] + std::uint64_t{digits_[i]} * y + carry;
            out[i + j] = static_cast<Digit>(t % p_);
            carry = t / p_;
        }
    }
    return PAdicInt(p_, std::move(out), true);
}

PAdicInt PAdicInt::scaled(long long factor) const {
    return *this * from_integer(p_, digits_.size(), factor);
}

PAdicInt PAdicInt::pow(std::uint64_t exponent) const {
    PAdicInt result = from_integer(p_, digits_.size(), 1);
    PAdicInt base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

PAdicInt PAdicInt::inverse() const {
    if (!is_unit()) {
        throw std::domain_error("only p-adic units are invertible");
    }
    // Newton iteration w <- w (2 - x w) doubles the number of correct digits.
    const Digit w0 = static_cast<Digit>(powmod_u64(digits_[0], p_ - 2, p_));
    PAdicInt w = from_integer(p_, digits_.size(), w0);
    const PAdicInt two = from_integer(p_, digits_.size(), 2);
    for (std::size_t correct = 1; correct < digits_.size(); correct *= 2) {
        w = w * (two - *this * w);
    }
    return w;
}

PAdicInt PAdicInt::shifted_down(std::size_t count) const {
    if (count >= digits_.size()) {
        throw std::invalid_argument("shift would leave no digits");
    }
    return PAdicInt(p_, std::vector<Digit>(digits_.begin() + static_cast<std::ptrdiff_t>(count), digits_.end()),
                    true);
}

PAdicInt PAdicInt::resized(std::size_t precision) const {
    if (precision == 0) {
        throw std::invalid_argument("p-adic precision must be at least 1");
    }
    std::vector<Digit> out(digits_);
    out.resize(precision, 0);
    return PAdicInt(p_, std::move(out), true);
}

bool PartialSums::is_reduced_coherent() const {
    BigInt modulus = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        modulus *= p;  // p^(i+1), the bound for y_{i+1}
        if (y[i] < 0 || y[i] >= modulus) return false;
        if (i + 1 < y.size() && floor_mod(y[i + 1] - y[i], modulus) != 0) return false;
    }
    return true;
}

PartialSums partial_sums(const PAdicInt& x) {
    PartialSums sums{x.prime(), {}};
    sums.y.reserve(x.precision());
    BigInt value = 0;
    BigInt place = 1;
    for (const Digit d : x.digits()) {
        value += place * d;
        place *= x.prime();
        sums.y.push_back(value);
    }
    return sums;
}

bool comp_less(const PAdicInt& x, const PAdicInt& y, bool strict) {
    if (x.prime() != y.prime() || x.precision() != y.precision()) {
        throw std::invalid_argument("componentwise order needs matching prime and precision");
    }
    for (std::size_t i = 0; i < x.precision(); ++i) {
        if (strict ? !(x.digit(i) < y.digit(i)) : !(x.digit(i) <= y.digit(i))) return false;
    }
    return true;
}

std::string to_positional_string(const PAdicInt& x) {
    std::string out = ".";
    const auto digits = x.digits();
    for (std::size_t i = digits.size(); i-- > 0;) {
        out += std::to_string(digits[i]);
        if (x.prime() > 10 && i > 0) out += '.';
    }
    out += " (" + std::to_string(x.prime()) + "-adic)";
    return out;
}

PAdicInt parse_positional_string(std::string_view text) {
    const auto open = text.find(" (");
    constexpr std::string_view suffix = "-adic)";
    if (text.size() < 2 || text.front() != '.' || open == std::string_view::npos ||
        !text.ends_with(suffix) || open + 2 + suffix.size() > text.size()) {
        throw std::invalid_argument("malformed positional p-adic string: '" + std::string(text) + "'");
    }
    const auto p = checked_prime(
        parse_unsigned(text.substr(open + 2, text.size() - open - 2 - suffix.size()), "prime"));
    const auto body = text.substr(1, open - 1);
    std::vector<Digit> digits;
    if (p > 10) {
        for (const auto part : split(body, '.')) {
            digits.push_back(static_cast<Digit>(parse_unsigned(part, "digit")));
        }
    } else {
        for (const char c : body) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("malformed digit in positional string");
            }
            digits.push_back(static_cast<Digit>(c - '0'));
        }
    }
    std::reverse(digits.begin(), digits.end());
    return PAdicInt(p, std::move(digits));
}

std::string to_digit_string(const PAdicInt& x) {
    std::string out = std::to_string(x.prime()) + ":" + std::to_string(x.precision()) + ":";
    const auto digits = x.digits();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(digits[i]);
    }
    return out;
}

PAdicInt parse_digit_string(std::string_view text) {
    const auto fields = split(text, ':');
    if (fields.size() != 3) {
        throw std::invalid_argument("expected p:N:digits, got '" + std::string(text) + "'");
    }
    const auto p = checked_prime(parse_unsigned(fields[0], "prime"));
    const auto precision = parse_unsigned(fields[1], "precision");
    std::vector<Digit> digits;
    for (const auto part : split(fields[2], ',')) {
        const auto d = parse_unsigned(part, "digit");
        if (d >= p) throw std::invalid_argument("digit out of range in '" + std::string(text) + "'");
        digits.push_back(static_cast<Digit>(d));
    }
    if (digits.size() != precision) {
        throw std::invalid_argument("digit count does not match precision in '" +
                                    std::string(text) + "'");
    }
    return PAdicInt(p, std::move(digits));
}

}  // namespace polyadic
