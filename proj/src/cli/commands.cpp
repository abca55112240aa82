#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "polyadic/cli.hpp"

namespace polyadic::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised for any bad user input after argument parsing; maps to exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KnownErratum {
    std::uint64_t a;
    std::uint64_t b;
    const char* note;
};

// Cells where the widely reproduced arity-shape table disagrees with the exact
// quotient. The computed value is always the one reported.
constexpr KnownErratum kErrata[] = {
    {5, 7, "reference table prints I=11; exact (m-1)a/b = 35/7 = 5"},
};

const char* erratum_for(std::uint64_t a, std::uint64_t b) {
    for (const auto& e : kErrata) {
        if (e.a == a && e.b == b) return e.note;
    }
    return nullptr;
}

std::uint64_t seed_from_environment() {
    const char* env = std::getenv("POLYADIC_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    try {
        std::size_t used = 0;
        const auto seed = std::stoull(env, &used, 0);
        if (used != std::string_view(env).size()) throw std::invalid_argument(env);
        return seed;
    } catch (const std::exception&) {
        throw UsageError(std::string("POLYADIC_SEED must be an unsigned integer, got '") + env + "'");
    }
}

BigInt parse_integer(const std::string& text, const char* what) {
    const std::size_t start = !text.empty() && (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (text.size() == start ||
        !std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
        throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
    return BigInt(text[0] == '+' ? text.substr(1) : text);
}

std::string digits_csv(const PAdicInt& x) {
    std::string out;
    for (std::size_t i = 0; i < x.precision(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(x.digit(i));
    }
    return out;
}

Json shape_json(const std::optional<ArityShape>& shape) {
    if (!shape) return nullptr;
    return Json{{"m", shape->m}, {"n", shape->n}, {"I", to_decimal(shape->I)}, {"J", to_decimal(shape->J)}};
}

// ---------------------------------------------------------------- shape-table

int shape_table_command(std::int64_t a_max, std::int64_t b_max, const std::string& format,
                        std::ostream& out) {
    if (a_max < 1 || b_max < 2) {
        throw UsageError("shape-table needs --a-max >= 1 and --b-max >= 2");
    }
    const auto cells = shape_table(static_cast<std::uint64_t>(a_max), static_cast<std::uint64_t>(b_max));

    if (format == "json") {
        Json rows = Json::array();
        for (const auto& c : cells) {
            const char* note = erratum_for(c.a, c.b);
            rows.push_back(Json{{"a", c.a},
                                {"b", c.b},
                                {"shape", shape_json(c.shape)},
                                {"note", note ? Json(note) : Json(nullptr)}});
        }
        Json doc{{"a_max", a_max}, {"b_max", b_max}, {"cells", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return kExitOk;
    }

    if (format == "csv") {
        out << "a,b,m,n,I,J,note\n";
        for (const auto& c : cells) {
            const char* note = erratum_for(c.a, c.b);
            out << c.a << ',' << c.b << ',';
            if (c.shape) {
                out << c.shape->m << ',' << c.shape->n << ',' << to_decimal(c.shape->I) << ','
                    << to_decimal(c.shape->J);
            } else {
                out << ",,,";
            }
            out << ',' << (note ? note : "") << '\n';
        }
        return kExitOk;
    }

    // Text grid: rows a, columns b, each filled cell "m,n,I,J".
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::string> text;
    for (const auto& c : cells) {
        text[{c.a, c.b}] = c.shape ? std::to_string(c.shape->m) + "," + std::to_string(c.shape->n) + "," +
                                         to_decimal(c.shape->I) + "," + to_decimal(c.shape->J)
                                   : "—";
    }
    const std::uint64_t rows = std::min<std::uint64_t>(a_max, b_max - 1);
    std::size_t width = 5;
    for (const auto& [key, s] : text) width = std::max(width, s.size());
    out << "arity shape (m,n,I,J) by a (rows) and b (columns); — marks no closed n\n";
    out << std::setw(4) << "a\\b";
    for (std::int64_t b = 2; b <= b_max; ++b) out << " | " << std::setw(static_cast<int>(width)) << b;
    out << '\n';
    for (std::uint64_t a = 1; a <= rows; ++a) {
        out << std::setw(4) << a;
        for (std::uint64_t b = 2; b <= static_cast<std::uint64_t>(b_max); ++b) {
            const auto it = text.find({a, b});
            std::string cell = it == text.end() ? "" : it->second;
            // "—" is three bytes but one column.
            const std::size_t shown = cell == "—" ? 1 : cell.size();
            out << " | " << std::string(width - shown, ' ') << cell;
        }
        out << '\n';
    }
    for (const auto& c : cells) {
        if (const char* note = erratum_for(c.a, c.b)) {
            out << "note (a=" << c.a << ", b=" << c.b << "): " << note << '\n';
        }
    }
    return kExitOk;
}

// ----------------------------------------------------------------- class-info

int class_info_command(const std::string& a_text, const std::string& b_text, const std::string& format,
                       std::ostream& out) {
    const BigInt a = parse_integer(a_text, "a");
    const BigInt b = parse_integer(b_text, "b");
    std::optional<ResidueClass> parsed;
    try {
        parsed.emplace(a, b);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid class: ") + e.what());
    }
    const ResidueClass& cls = *parsed;

    std::optional<ArityShape> shape;
    std::string note;
    std::optional<Arity> add_arity = min_add_arity(cls, std::numeric_limits<Arity>::max());
    if (cls.is_degenerate()) {
        shape = arity_shape(cls);
        note = "binary ring of integers Z = Z_(2,2)(0,1), I = J = 0";
    } else if (a == 0) {
        shape = ArityShape{2, 2, 0, 0};
        note = "a = 0: the class bZ is closed under binary + and *, a derived (2,2)-ring";
    } else {
        shape = arity_shape(cls);
        if (!shape) {
            note = "no n exists <= cap " + to_decimal(b + 1) + ": multiplication never closes";
        }
    }

    std::vector<ClassElement> samples;
    for (int k = -2; k <= 2; ++k) samples.push_back(representative(cls, k));

    std::vector<std::pair<ClassElement, ClassElement>> quers;
    std::optional<ClassElement> identity;
    std::optional<ClassElement> neutral;
    if (add_arity) {
        for (const auto& r : samples) quers.emplace_back(r, add_querelement(cls, *add_arity, r));
        neutral = add_neutral(cls, *add_arity);
    }
    if (shape) identity = mul_identity(cls, shape->n);
    const bool zeroless = !neutral.has_value();
    const BigInt quer_factor = add_arity ? 2 - BigInt(*add_arity) : BigInt(0);

    if (format == "json") {
        Json reps = Json::array();
        for (const auto& r : samples) reps.push_back(to_decimal(r.value));
        Json qs = Json::array();
        for (const auto& [r, q] : quers) qs.push_back(Json{{"r", to_decimal(r.value)}, {"quer", to_decimal(q.value)}});
        Json doc{{"a", to_decimal(a)},
                 {"b", to_decimal(b)},
                 {"min_add_arity", add_arity ? Json(*add_arity) : Json(nullptr)},
                 {"shape", shape_json(shape)},
                 {"representatives", std::move(reps)},
                 {"querelement_factor", to_decimal(quer_factor)},
                 {"querelements", std::move(qs)},
                 {"identity", identity ? Json(to_decimal(identity->value)) : Json(nullptr)},
                 {"zeroless", zeroless},
                 {"note", note.empty() ? Json(nullptr) : Json(note)}};
        out << doc.dump(2) << '\n';
        return kExitOk;
    }

    if (format == "csv") {
        out << "a,b,m,n,I,J,identity,zeroless\n";
        out << to_decimal(a) << ',' << to_decimal(b) << ',';
        if (shape) {
            out << shape->m << ',' << shape->n << ',' << to_decimal(shape->I) << ',' << to_decimal(shape->J);
        } else {
            out << ",,,";
        }
        out << ',' << (identity ? to_decimal(identity->value) : "") << ',' << (zeroless ? "true" : "false")
            << '\n';
        return kExitOk;
    }

    out << "class [" << to_decimal(a) << "]_" << to_decimal(b) << '\n';
    out << "representatives r_k = " << to_decimal(a) << " + " << to_decimal(b) << "k:";
    for (const auto& r : samples) out << ' ' << to_decimal(r.value);
    out << " ...\n";
    if (shape) {
        out << "arity shape: m=" << shape->m << " n=" << shape->n << " I=" << to_decimal(shape->I)
            << " J=" << to_decimal(shape->J) << '\n';
    } else {
        out << "arity shape: none (addition closes at m=" << *add_arity << ")\n";
    }
    if (!note.empty()) out << "note: " << note << '\n';
    if (add_arity) {
        out << "querelement: r~ = (2-m) r = " << to_decimal(quer_factor) << " r;";
        for (const auto& [r, q] : quers) out << ' ' << to_decimal(r.value) << "->" << to_decimal(q.value);
        out << '\n';
    }
    if (shape) {
        out << "multiplicative identity: " << (identity ? to_decimal(identity->value) : "none") << '\n';
    }
    out << "zeroless: " << (zeroless ? "true" : "false") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------- padic

int padic_command(const std::string& expr, std::uint64_t p_raw, std::int64_t precision,
                  const std::string& format, std::ostream& out) {
    if (precision < 1) throw UsageError("precision must be at least 1");
    Prime p = 0;
    PAdicInt x = PAdicInt::zero(2, 1);
    try {
        p = checked_prime(p_raw);
        x = evaluate_expression(expr, p, static_cast<std::size_t>(precision));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const PartialSums sums = partial_sums(x);
    const Valuation val = x.valuation();

    if (format == "json") {
        Json digits = Json::array();
        for (const auto d : x.digits()) digits.push_back(d);
        Json ys = Json::array();
        for (const auto& y : sums.y) ys.push_back(to_decimal(y));
        Json doc{{"p", p},
                 {"N", precision},
                 {"expression", expr},
                 {"digits", std::move(digits)},
                 {"positional", to_positional_string(x)},
                 {"digit_string", to_digit_string(x)},
                 {"valuation", val.to_string()},
                 {"value", to_decimal(x.to_integer())},
                 {"partial_sums", std::move(ys)}};
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    if (format == "csv") {
        out << "i,digit,partial_sum\n";
        for (std::size_t i = 0; i < x.precision(); ++i) {
            out << i << ',' << x.digit(i) << ',' << to_decimal(sums.y[i]) << '\n';
        }
        return kExitOk;
    }
    out << "digits (little-endian): " << digits_csv(x) << '\n';
    out << "positional: " << to_positional_string(x) << '\n';
    out << "digit string: " << to_digit_string(x) << '\n';
    out << "valuation: " << val.to_string() << '\n';
    out << "value mod " << p << "^" << precision << ": " << to_decimal(x.to_integer()) << '\n';
    out << "partial sums:";
    for (const auto& y : sums.y) out << ' ' << to_decimal(y);
    out << '\n';
    return kExitOk;
}

// ----------------------------------------------------------------------- lift

int lift_command(std::uint64_t p_raw, std::int64_t m, std::int64_t n, std::int64_t v,
                 std::optional<std::int64_t> precision, const std::string& format, std::ostream& out) {
    LiftSolution solution;
    try {
        const Prime p = checked_prime(p_raw);
        if (m < 2 || n < 2) throw std::invalid_argument("arities --m and --n must be at least 2");
        if (v < 1) throw std::invalid_argument("--v must be at least 1");
        const std::int64_t N = precision.value_or(v);
        if (N < v) throw std::invalid_argument("need --N >= --v");
        solution = lift_digits(p, static_cast<Arity>(m), static_cast<Arity>(n), static_cast<std::size_t>(v),
                               static_cast<std::size_t>(N));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (format == "json") {
        out << lift_solution_json(solution).dump(2) << '\n';
        return kExitOk;
    }
    if (format == "csv") {
        out << "p,m,n,v,modulus,residue\n";
        for (const auto r : solution.admissible) {
            out << solution.p << ',' << solution.m << ',' << solution.n << ',' << solution.v << ','
                << solution.modulus << ',' << r << '\n';
        }
        return kExitOk;
    }
    out << "p=" << solution.p << " m=" << solution.m << " n=" << solution.n << " v=" << solution.v
        << " modulus=" << solution.modulus << '\n';
    out << "admissible a mod " << solution.modulus << ":";
    if (solution.admissible.empty()) {
        out << " none (no such ring)\n";
    } else {
        for (const auto r : solution.admissible) out << ' ' << r;
        out << '\n';
        if (solution.admissible.front() == 0) out << "a = 0 is the degenerate class\n";
    }
    out << "survivors per digit level:";
    for (const auto c : solution.level_counts) out << ' ' << c;
    out << '\n';
    out << "digits from index " << solution.free_from() << " onward are free\n";
    return kExitOk;
}

// --------------------------------------------------------------------- verify

PAdicInt parse_padic_literal(const std::string& text, Prime p, std::size_t precision, const char* what) {
    if (text.find(':') != std::string::npos) {
        PAdicInt x = parse_digit_string(text);
        if (x.prime() != p) throw UsageError(std::string(what) + " uses a different prime than --p");
        if (x.precision() != precision) {
            throw UsageError(std::string(what) + " has a different precision than --N");
        }
        return x;
    }
    return PAdicInt::from_integer(p, precision, parse_integer(text, what));
}

std::optional<std::size_t> literal_precision(const std::string& text) {
    if (text.find(':') == std::string::npos) return std::nullopt;
    return parse_digit_string(text).precision();
}

int verify_command(std::uint64_t p_raw, const std::string& a_text, const std::string& b_text, std::int64_t m,
                   std::int64_t n, std::int64_t samples, std::optional<std::int64_t> precision_opt,
                   const std::string& format, std::ostream& out) {
    std::optional<PAdicClass> cls;
    Prime p = 0;
    std::size_t precision = 0;
    try {
        p = checked_prime(p_raw);
        if (m < 2 || n < 2) throw std::invalid_argument("arities --m and --n must be at least 2");
        if (samples < 1) throw std::invalid_argument("--samples must be at least 1");
        if (precision_opt) {
            if (*precision_opt < 1) throw std::invalid_argument("--N must be at least 1");
            precision = static_cast<std::size_t>(*precision_opt);
        } else {
            precision = literal_precision(a_text).value_or(literal_precision(b_text).value_or(16));
        }
        PAdicInt a = parse_padic_literal(a_text, p, precision, "--a");
        PAdicInt b = parse_padic_literal(b_text, p, precision, "--b");
        cls.emplace(std::move(a), std::move(b));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const std::uint64_t seed = seed_from_environment();
    const RingReport report = verify_ring(*cls, static_cast<Arity>(m), static_cast<Arity>(n),
                                          static_cast<std::size_t>(samples), seed);
    const int code = report.passed() ? kExitOk : kExitRefuted;

    auto status = [](const CheckResult& c) { return c.skipped ? "skip" : (c.passed ? "pass" : "fail"); };
    if (format == "json") {
        Json checks = Json::array();
        for (const auto& c : report.checks) {
            checks.push_back(Json{{"name", c.name},
                                  {"status", status(c)},
                                  {"trials", c.trials},
                                  {"witness", c.witness.empty() ? Json(nullptr) : Json(c.witness)}});
        }
        Json doc{{"p", p},
                 {"N", precision},
                 {"a", to_digit_string(cls->a())},
                 {"b", to_digit_string(cls->b())},
                 {"b_valuation", cls->b_valuation()},
                 {"m", m},
                 {"n", n},
                 {"samples", samples},
                 {"seed", seed},
                 {"passed", report.passed()},
                 {"checks", std::move(checks)}};
        out << doc.dump(2) << '\n';
        return code;
    }
    if (format == "csv") {
        out << "check,status,trials,witness\n";
        for (const auto& c : report.checks) {
            out << '"' << c.name << "\"," << status(c) << ',' << c.trials << ",\"" << c.witness << "\"\n";
        }
        return code;
    }
    out << "class a=" << to_decimal(cls->a().to_signed_integer()) << " b=" << to_decimal(cls->b().to_signed_integer())
        << " in Z_" << p << " mod " << p << "^" << precision << " (v_p(b)=" << cls->b_valuation() << ")";
    if (cls->is_degenerate()) out << ", degenerate a = 0";
    out << '\n';
    out << "(m,n) = (" << m << "," << n << "), " << samples << " samples, seed " << seed << '\n';
    for (const auto& c : report.checks) {
        out << status(c) << "  " << c.name;
        if (!c.skipped) out << " (" << c.trials << " trials)";
        if (!c.witness.empty()) out << "\n      witness: " << c.witness;
        out << '\n';
    }
    out << (report.passed() ? "verified: (m,n)-ring laws hold" : "refuted") << '\n';
    return code;
}

}  // namespace

nlohmann::ordered_json lift_solution_json(const LiftSolution& solution) {
    return Json{{"p", solution.p},
                {"m", solution.m},
                {"n", solution.n},
                {"v", solution.v},
                {"modulus", solution.modulus},
                {"admissible", solution.admissible},
                {"free_from", solution.free_from()}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polyadic (m,n)-rings from integer and p-adic residue classes", "polyadic-cli"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&format](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    };

    std::int64_t a_max = 0, b_max = 0;
    auto* table = app.add_subcommand("shape-table", "Arity shape (m,n,I,J) for small residue classes");
    table->add_option("--a-max", a_max, "Largest a")->required();
    table->add_option("--b-max", b_max, "Largest b")->required();
    add_format(table);

    std::string class_a, class_b;
    auto* info = app.add_subcommand("class-info", "Polyadic structure of the residue class [a]_b");
    info->add_option("a", class_a, "Canonical representative 0 <= a < b")->required();
    info->add_option("b", class_b, "Modulus b >= 1")->required();
    add_format(info);

    std::string expr;
    std::uint64_t p = 0;
    std::int64_t precision = 0;
    auto* padic = app.add_subcommand("padic", "Evaluate an integer expression in Z/p^N");
    padic->add_option("expr", expr, "Expression over integer literals with + - * and parentheses")->required();
    padic->add_option("--p", p, "Prime")->required();
    padic->add_option("--n,--N", precision, "Precision (number of digits)")->required();
    add_format(padic);

    std::int64_t m = 0, n = 0, v = 0, samples = 1000;
    std::optional<std::int64_t> big_n;
    auto* lift = app.add_subcommand("lift", "Digit-by-digit search for admissible a mod p^v");
    lift->add_option("--p", p, "Prime")->required();
    lift->add_option("--m", m, "Addition arity")->required();
    lift->add_option("--n", n, "Multiplication arity")->required();
    lift->add_option("--v", v, "Valuation of b")->required();
    lift->add_option("--N", big_n, "Working precision (default v)");
    add_format(lift);

    std::string lit_a, lit_b;
    auto* verify = app.add_subcommand("verify", "Randomized check of the (m,n)-ring laws for a p-adic class");
    verify->add_option("--p", p, "Prime")->required();
    verify->add_option("--a", lit_a, "a as an integer or p:N:digits")->required();
    verify->add_option("--b", lit_b, "b as an integer or p:N:digits")->required();
    verify->add_option("--m", m, "Addition arity")->required();
    verify->add_option("--n", n, "Multiplication arity")->required();
    verify->add_option("--samples", samples, "Random tuples per check");
    verify->add_option("--N", big_n, "Working precision (default 16)");
    add_format(verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (table->parsed()) return shape_table_command(a_max, b_max, format, out);
        if (info->parsed()) return class_info_command(class_a, class_b, format, out);
        if (padic->parsed()) return padic_command(expr, p, precision, format, out);
        if (lift->parsed()) return lift_command(p, m, n, v, big_n, format, out);
        if (verify->parsed()) return verify_command(p, lit_a, lit_b, m, n, samples, big_n, format, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace polyadic::cli
