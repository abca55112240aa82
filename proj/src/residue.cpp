#include "polyadic/residue.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace polyadic {

namespace {

std::string class_name(const ResidueClass& cls) {
    return "[" + to_decimal(cls.a()) + "]_" + to_decimal(cls.b());
}

void require_arity(Arity arity, std::size_t count, const char* what) {
    if (arity < 2) {
        throw std::invalid_argument(std::string(what) + " arity must be at least 2");
    }
    if (count != arity) {
        throw std::invalid_argument(std::string(what) + " expects " + std::to_string(arity) +
                                    " operands, got " + std::to_string(count));
    }
}

void require_members(const ResidueClass& cls, std::span<const ClassElement> elems) {
    for (const auto& e : elems) {
        if (e.value != cls.a() + cls.b() * e.k) {
            throw std::invalid_argument("element " + to_decimal(e.value) +
                                        " does not match its coordinate in " + class_name(cls));
        }
    }
}

ClassElement with_coordinate(const ResidueClass& cls, BigInt value) {
    BigInt k = (value - cls.a()) / cls.b();
    return {std::move(value), std::move(k)};
}

}  // namespace

ResidueClass::ResidueClass(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_ < 1) {
        throw std::invalid_argument("modulus b must be positive");
    }
    if (a_ < 0 || a_ >= b_) {
        throw std::invalid_argument("representative a must satisfy 0 <= a <= b - 1");
    }
}

ClassElement representative(const ResidueClass& cls, const BigInt& k) {
    return {cls.a() + cls.b() * k, k};
}

ClassElement element_of(const ResidueClass& cls, const BigInt& value) {
    if (!contains(cls, value)) {
        throw std::invalid_argument(to_decimal(value) + " is not in " + class_name(cls));
    }
    return with_coordinate(cls, value);
}

bool contains(const ResidueClass& cls, const BigInt& x) {
    return floor_mod(x, cls.b()) == cls.a();
}

bool add_closed(const ResidueClass& cls, Arity m) {
    return m >= 2 && floor_mod(BigInt(m - 1) * cls.a(), cls.b()) == 0;
}

bool mul_closed(const ResidueClass& cls, Arity n) {
    if (n < 2) return false;
    const BigInt power = boost::multiprecision::powm(cls.a(), BigInt(n), cls.b());
    return power == floor_mod(cls.a(), cls.b());
}

std::optional<Arity> min_add_arity(const ResidueClass& cls, Arity m_cap) {
    if (m_cap < 2) {
        throw std::invalid_argument("m_cap must be at least 2");
    }
    if (cls.a() == 0) return Arity{2};
    const BigInt m = 1 + cls.b() / gcd(cls.a(), cls.b());
    if (m > m_cap) return std::nullopt;
    return static_cast<Arity>(m);
}

std::optional<Arity> min_mul_arity(const ResidueClass& cls, std::optional<Arity> n_cap) {
    const BigInt default_cap = cls.b() + 1;
    Arity cap = 0;
    if (n_cap) {
        cap = *n_cap;
    } else if (default_cap > std::numeric_limits<Arity>::max()) {
        throw std::invalid_argument("modulus too large for a default multiplicative search cap");
    } else {
        cap = static_cast<Arity>(default_cap);
    }
    if (cap < 2) {
        throw std::invalid_argument("n_cap must be at least 2");
    }
    const BigInt& b = cls.b();
    const BigInt target = floor_mod(cls.a(), b);
    BigInt power = target;
    for (Arity n = 2; n <= cap; ++n) {
        power = (power * cls.a()) % b;
        if (power == target) return n;
    }
    return std::nullopt;
}

std::optional<ArityShape> arity_shape(const ResidueClass& cls) {
    if (cls.is_degenerate()) {
        return ArityShape{2, 2, 0, 0};
    }
    if (cls.a() < 1) {
        throw std::invalid_argument("arity shape requires a >= 1 (or the class [0]_1)");
    }
    const auto n = min_mul_arity(cls);
    if (!n) return std::nullopt;
    // a >= 1 always closes addition by m = b + 1.
    const Arity m = *min_add_arity(cls, std::numeric_limits<Arity>::max());

    ArityShape shape;
    shape.m = m;
    shape.n = *n;
    BigInt rem;
    boost::multiprecision::divide_qr(BigInt(m - 1) * cls.a(), cls.b(), shape.I, rem);
    if (rem != 0) throw std::logic_error("addition invariant is not integral");
    boost::multiprecision::divide_qr(ipow(cls.a(), *n) - cls.a(), cls.b(), shape.J, rem);
    if (rem != 0) throw std::logic_error("multiplication invariant is not integral");
    return shape;
}

ClassElement nu(const ResidueClass& cls, Arity m, std::span<const ClassElement> elems) {
    require_arity(m, elems.size(), "m-ary addition");
    if (!add_closed(cls, m)) {
        throw ArityNotClosed(std::to_string(m) + "-ary addition is not closed in " +
                             class_name(cls));
    }
    require_members(cls, elems);
    BigInt sum = 0;
    for (const auto& e : elems) sum += e.value;
    return with_coordinate(cls, std::move(sum));
}

ClassElement mu(const ResidueClass& cls, Arity n, std::span<const ClassElement> elems) {
    require_arity(n, elems.size(), "n-ary multiplication");
    if (!mul_closed(cls, n)) {
        throw ArityNotClosed(std::to_string(n) + "-ary multiplication is not closed in " +
                             class_name(cls));
    }
    require_members(cls, elems);
    BigInt product = 1;
    for (const auto& e : elems) product *= e.value;
    return with_coordinate(cls, std::move(product));
}

ClassElement add_querelement(const ResidueClass& cls, Arity m, const ClassElement& r) {
    if (!add_closed(cls, m)) {
        throw ArityNotClosed(std::to_string(m) + "-ary addition is not closed in " +
                             class_name(cls));
    }
    require_members(cls, std::span(&r, 1));
    return with_coordinate(cls, (2 - BigInt(m)) * r.value);
}

std::optional<ClassElement> mul_identity(const ResidueClass& cls, Arity n) {
    if (!mul_closed(cls, n)) {
        throw ArityNotClosed(std::to_string(n) + "-ary multiplication is not closed in " +
                             class_name(cls));
    }
    for (const int e : {1, -1}) {
        const bool unit_power = e == 1 || (n - 1) % 2 == 0;
        if (unit_power && contains(cls, e)) return with_coordinate(cls, e);
    }
    return std::nullopt;
}

std::optional<ClassElement> add_neutral(const ResidueClass& cls, Arity m) {
    if (!add_closed(cls, m)) {
        throw ArityNotClosed(std::to_string(m) + "-ary addition is not closed in " +
                             class_name(cls));
    }
    if (!contains(cls, 0)) return std::nullopt;
    return with_coordinate(cls, 0);
}

std::vector<ShapeCell> shape_table(std::uint64_t a_max, std::uint64_t b_max) {
    if (a_max < 1) throw std::invalid_argument("a_max must be at least 1");
    if (b_max < 2) throw std::invalid_argument("b_max must be at least 2");

    std::vector<ShapeCell> cells;
    for (std::uint64_t a = 1; a <= std::min(a_max, b_max - 1); ++a) {
        for (std::uint64_t b = a + 1; b <= b_max; ++b) {
            cells.push_back({a, b, std::nullopt});
        }
    }
    // Cells are independent; workers fill fixed slots, so output order does not
    // depend on scheduling.
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::future<void>> rows;
    for (std::size_t w = 0; w < std::min(workers, cells.size()); ++w) {
        rows.push_back(std::async(std::launch::async, [&cells, w, workers] {
            for (std::size_t i = w; i < cells.size(); i += workers) {
                cells[i].shape = arity_shape(ResidueClass(cells[i].a, cells[i].b));
            }
        }));
    }
    for (auto& row : rows) row.get();
    return cells;
}

}  // namespace polyadic
