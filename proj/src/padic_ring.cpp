#include "polyadic/padic_ring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polyadic {

namespace {

void require_same_ring(const PAdicInt& x, const PAdicInt& y) {
    if (x.prime() != y.prime() || x.precision() != y.precision()) {
        throw std::invalid_argument("p-adic operands differ in prime or precision");
    }
}

void require_count(Arity arity, std::size_t count, const char* what) {
    if (arity < 2) {
        throw std::invalid_argument(std::string(what) + " arity must be at least 2");
    }
    if (count != arity) {
        throw std::invalid_argument(std::string(what) + " expects " + std::to_string(arity) +
                                    " operands, got " + std::to_string(count));
    }
}

std::string render(const PAdicInt& x) { return to_decimal(x.to_signed_integer()); }

std::string render_values(std::span<const PAdicRepresentative> reps) {
    std::string out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(reps[i].value);
    }
    return out;
}

PAdicInt sum_values(std::span<const PAdicRepresentative> reps) {
    PAdicInt sum = reps.front().value;
    for (std::size_t i = 1; i < reps.size(); ++i) sum += reps[i].value;
    return sum;
}

PAdicInt product_values(std::span<const PAdicRepresentative> reps) {
    PAdicInt product = reps.front().value;
    for (std::size_t i = 1; i < reps.size(); ++i) product *= reps[i].value;
    return product;
}

}  // namespace

std::optional<Quotient> p_divide(const PAdicInt& c, const PAdicInt& b) {
    require_same_ring(c, b);
    const Valuation vb = b.valuation();
    if (!vb.is_exact()) {
        throw std::invalid_argument("division by the zero truncation");
    }
    const std::size_t v = vb.bound();
    if (!c.valuation().at_least_value(v)) return std::nullopt;
    // c = p^v c', b = p^v u with u a unit; c / b = c' u^-1 mod p^(N - v).
    const PAdicInt shifted = c.shifted_down(v);
    const PAdicInt unit = b.shifted_down(v);
    return Quotient{shifted * unit.inverse()};
}

namespace {

std::size_t checked_modulus_valuation(const PAdicInt& a, const PAdicInt& b) {
    require_same_ring(a, b);
    const Valuation vb = b.valuation();
    if (!vb.is_exact()) {
        throw std::invalid_argument("class modulus b must not be the zero truncation");
    }
    return vb.bound();
}

}  // namespace

PAdicClass::PAdicClass(PAdicInt a, PAdicInt b)
    : a_(std::move(a)),
      b_(std::move(b)),
      v_(checked_modulus_valuation(a_, b_)),
      unit_inverse_(b_.shifted_down(v_).inverse()) {}

PAdicRepresentative PAdicClass::representative(const PAdicInt& k) const {
    require_same_ring(a_, k);
    return {k, a_ + b_ * k};
}

PAdicRepresentative PAdicClass::element(const PAdicInt& value) const {
    require_same_ring(a_, value);
    const PAdicInt offset = value - a_;
    if (!offset.valuation().at_least_value(v_)) {
        throw std::invalid_argument(render(value) + " is not a representative of the class");
    }
    return {(offset.shifted_down(v_) * unit_inverse_).resized(precision()), value};
}

bool PAdicClass::contains(const PAdicInt& value) const {
    require_same_ring(a_, value);
    return (value - a_).valuation().at_least_value(v_);
}

std::optional<Quotient> PAdicClass::divide(const PAdicInt& c) const {
    require_same_ring(a_, c);
    if (!c.valuation().at_least_value(v_)) return std::nullopt;
    return Quotient{c.shifted_down(v_) * unit_inverse_};
}

std::optional<Quotient> m_closure_invariant(const PAdicClass& cls, Arity m) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    const PAdicInt multiple = cls.a() * PAdicInt::from_integer(cls.prime(), cls.precision(), BigInt(m - 1));
    return cls.divide(multiple);
}

std::optional<Quotient> n_closure_invariant(const PAdicClass& cls, Arity n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    return cls.divide(cls.a().pow(n) - cls.a());
}

PAdicRepresentative nu_p(const PAdicClass& cls, Arity m, std::span<const PAdicRepresentative> reps) {
    require_count(m, reps.size(), "m-ary addition");
    const auto I = m_closure_invariant(cls, m);
    if (!I) {
        throw ArityNotClosed(std::to_string(m) + "-ary addition is not closed for this p-adic class");
    }
    PAdicInt k = I->extended(cls.precision());
    for (const auto& r : reps) {
        require_same_ring(cls.a(), r.value);
        k += r.k;
    }
    return {std::move(k), sum_values(reps)};
}

PAdicRepresentative mu_p(const PAdicClass& cls, Arity n, std::span<const PAdicRepresentative> reps) {
    require_count(n, reps.size(), "n-ary multiplication");
    if (!n_closure_invariant(cls, n)) {
        throw ArityNotClosed(std::to_string(n) +
                             "-ary multiplication is not closed for this p-adic class");
    }
    for (const auto& r : reps) require_same_ring(cls.a(), r.value);
    return cls.element(product_values(reps));
}

PAdicInt quer_k(const PAdicInt& k, Arity m, const PAdicInt& I) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    const PAdicInt factor = PAdicInt::from_integer(k.prime(), k.precision(), 2 - BigInt(m));
    return factor * k - I.resized(k.precision());
}

LiftSolution lift_digits(Prime p, Arity m, Arity n, std::size_t v, std::size_t precision) {
    checked_prime(p);
    if (m < 2 || n < 2) throw std::invalid_argument("arities m, n must be at least 2");
    if (v < 1 || v > precision) throw std::invalid_argument("need 1 <= v <= N");

    LiftSolution out;
    out.p = p;
    out.m = m;
    out.n = n;
    out.v = v;
    out.precision = precision;
    out.modulus = 1;
    for (std::size_t i = 0; i < v; ++i) {
        if (out.modulus > std::numeric_limits<std::uint64_t>::max() / p) {
            throw std::invalid_argument("p^v does not fit in 64 bits");
        }
        out.modulus *= p;
    }

    const PAdicInt m_minus_one = PAdicInt::from_integer(p, precision, BigInt(m - 1));
    std::vector<std::uint64_t> prefixes{0};
    std::uint64_t place = 1;  // p^level
    for (std::size_t level = 0; level < v; ++level) {
        std::vector<std::uint64_t> next;
        for (const std::uint64_t prefix : prefixes) {
            for (std::uint64_t digit = 0; digit < p; ++digit) {
                const std::uint64_t candidate = prefix + digit * place;
                const PAdicInt a = PAdicInt::from_integer(p, precision, BigInt(candidate));
                const bool adds = (m_minus_one * a).valuation().at_least_value(level + 1);
                const bool muls = (a.pow(n) - a).valuation().at_least_value(level + 1);
                if (adds && muls) next.push_back(candidate);
            }
        }
        prefixes = std::move(next);
        out.level_counts.push_back(prefixes.size());
        if (level + 1 < v) place *= p;
    }
    std::sort(prefixes.begin(), prefixes.end());
    out.admissible = std::move(prefixes);
    return out;
}

LiftSolution lift_digits_for(const PAdicInt& b, Arity m, Arity n) {
    const Valuation vb = b.valuation();
    if (!vb.is_exact()) throw std::invalid_argument("b must not be the zero truncation");
    if (vb.bound() == 0) {
        throw std::invalid_argument("b is a unit; every a is admissible and there is nothing to lift");
    }
    return lift_digits(b.prime(), m, n, vb.bound(), b.precision());
}

bool RingReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* RingReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) return &c;
    }
    return nullptr;
}

PAdicInt random_padic(Prime p, std::size_t precision, std::mt19937_64& rng) {
    std::uniform_int_distribution<Digit> digit(0, p - 1);
    std::vector<Digit> digits(precision);
    for (auto& d : digits) d = digit(rng);
    return PAdicInt(p, std::move(digits));
}

RingReport verify_ring(const PAdicClass& cls, Arity m, Arity n, std::size_t samples,
                       std::uint64_t seed) {
    if (m < 2 || n < 2) throw std::invalid_argument("arities m, n must be at least 2");

    RingReport report;
    report.m = m;
    report.n = n;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    const Prime p = cls.prime();
    const std::size_t N = cls.precision();

    // The first trial uses the coordinates 0, 1, 2, ... so a refutation names
    // small, readable representatives; later trials are random.
    auto draw = [&](std::size_t count, std::size_t trial) {
        std::vector<PAdicRepresentative> reps;
        reps.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const PAdicInt k = trial == 0 ? PAdicInt::from_integer(p, N, static_cast<long long>(i))
                                          : random_padic(p, N, rng);
            reps.push_back(cls.representative(k));
        }
        return reps;
    };

    auto closure_check = [&](const std::string& name, Arity arity, bool additive) {
        CheckResult check{name};
        for (std::size_t t = 0; t < samples && check.passed; ++t) {
            const auto reps = draw(arity, t);
            const PAdicInt out = additive ? sum_values(reps) : product_values(reps);
            ++check.trials;
            if (!cls.contains(out)) {
                check.passed = false;
                check.witness = (additive ? "nu_" : "mu_") + std::to_string(arity) + "[" +
                                render_values(reps) + "] = " + render(out) +
                                " is not a representative a + b k";
            }
        }
        return check;
    };

    CheckResult add_closure = closure_check("m-ary addition closure", m, true);
    CheckResult mul_closure = closure_check("n-ary multiplication closure", n, false);
    const bool m_closed = add_closure.passed;
    const bool n_closed = mul_closure.passed;
    report.checks.push_back(std::move(add_closure));
    report.checks.push_back(std::move(mul_closure));

    auto skipped = [](std::string name) {
        CheckResult c{std::move(name)};
        c.skipped = true;
        return c;
    };

    if (m_closed) {
        const auto I = m_closure_invariant(cls, m);
        CheckResult quer{"querelement law"};
        if (!I) {
            quer.passed = false;
            quer.witness = "no addition invariant I although sampled sums closed";
        }
        for (std::size_t t = 0; t < samples && quer.passed; ++t) {
            const auto r = draw(1, t + 1).front();
            const auto bar = cls.representative(quer_k(r.k, m, I->value));
            std::vector<PAdicRepresentative> args(m - 1, r);
            args.push_back(bar);
            const auto out = nu_p(cls, m, args);
            ++quer.trials;
            if (out.value != r.value || out.value != cls.a() + cls.b() * out.k) {
                quer.passed = false;
                quer.witness = "nu_" + std::to_string(m) + "[" + render(r.value) + " x" +
                               std::to_string(m - 1) + ", " + render(bar.value) + "] = " +
                               render(out.value) + " != " + render(r.value);
            }
        }
        report.checks.push_back(std::move(quer));
    } else {
        report.checks.push_back(skipped("querelement law"));
    }

    // Total associativity: evaluating the inner block at position j must not
    // depend on j. Each trial compares position 0 against one other position,
    // cycling so that every position is visited.
    auto associativity = [&](const std::string& name, Arity arity, bool additive) {
        CheckResult check{name};
        auto op = [&](std::span<const PAdicRepresentative> args) {
            return additive ? nu_p(cls, arity, args) : mu_p(cls, arity, args);
        };
        auto nested = [&](const std::vector<PAdicRepresentative>& xs, std::size_t j) {
            std::vector<PAdicRepresentative> outer(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(j));
            outer.push_back(op(std::span(xs).subspan(j, arity)));
            outer.insert(outer.end(), xs.begin() + static_cast<std::ptrdiff_t>(j + arity), xs.end());
            return op(outer);
        };
        for (std::size_t t = 0; t < samples && check.passed; ++t) {
            const auto xs = draw(2 * arity - 1, t + 1);
            const std::size_t j = 1 + t % (arity - 1);
            const auto left = nested(xs, 0);
            const auto other = nested(xs, j);
            ++check.trials;
            if (left.value != other.value) {
                check.passed = false;
                check.witness = "block at position 0 gives " + render(left.value) +
                                ", block at position " + std::to_string(j) + " gives " +
                                render(other.value) + " for [" + render_values(xs) + "]";
            }
        }
        return check;
    };
    report.checks.push_back(m_closed ? associativity("m-ary addition associativity", m, true)
                                     : skipped("m-ary addition associativity"));
    report.checks.push_back(n_closed ? associativity("n-ary multiplication associativity", n, false)
                                     : skipped("n-ary multiplication associativity"));

    // mu_n[nu_m[r_1..r_m], s_2..s_n] = nu_m[mu_n[r_1, s_2..s_n], ..., mu_n[r_m, s_2..s_n]].
    if (m_closed && n_closed) {
        CheckResult dist{"distributivity"};
        for (std::size_t t = 0; t < samples && dist.passed; ++t) {
            const auto rs = draw(m, t + 1);
            const auto ss = draw(n - 1, t + 2);
            std::vector<PAdicRepresentative> lhs_args{nu_p(cls, m, rs)};
            lhs_args.insert(lhs_args.end(), ss.begin(), ss.end());
            const auto lhs = mu_p(cls, n, lhs_args);
            std::vector<PAdicRepresentative> terms;
            terms.reserve(m);
            for (const auto& r : rs) {
                std::vector<PAdicRepresentative> args{r};
                args.insert(args.end(), ss.begin(), ss.end());
                terms.push_back(mu_p(cls, n, args));
            }
            const auto rhs = nu_p(cls, m, terms);
            ++dist.trials;
            if (lhs.value != rhs.value) {
                dist.passed = false;
                dist.witness = "left side " + render(lhs.value) + " != right side " + render(rhs.value);
            }
        }
        report.checks.push_back(std::move(dist));
    } else {
        report.checks.push_back(skipped("distributivity"));
    }
    return report;
}

}  // namespace polyadic
