#include <cctype>
#include <stdexcept>
#include <string>

#include "polyadic/cli.hpp"

namespace polyadic::cli {

namespace {

class Parser {
public:
    Parser(std::string_view text, Prime p, std::size_t precision)
        : text_(text), p_(p), precision_(precision) {}

    PAdicInt parse() {
        PAdicInt value = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    PAdicInt sum() {
        PAdicInt value = product();
        while (true) {
            skip_space();
            if (accept('+')) {
                value += product();
            } else if (accept('-')) {
                value -= product();
            } else {
                return value;
            }
        }
    }

    PAdicInt product() {
        PAdicInt value = unary();
        while (true) {
            skip_space();
            if (!accept('*')) return value;
            value *= unary();
        }
    }

    PAdicInt unary() {
        skip_space();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    PAdicInt primary() {
        skip_space();
        if (accept('(')) {
            PAdicInt value = sum();
            skip_space();
            if (!accept(')')) fail("missing ')'");
            return value;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail(pos_ < text_.size() ? "expected a number" : "unexpected end of input");
        return PAdicInt::from_integer(p_, precision_, BigInt(std::string(text_.substr(start, pos_ - start))));
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    Prime p_;
    std::size_t precision_;
    std::size_t pos_ = 0;
};

}  // namespace

PAdicInt evaluate_expression(std::string_view expr, Prime p, std::size_t precision) {
    return Parser(expr, p, precision).parse();
}

}  // namespace polyadic::cli
