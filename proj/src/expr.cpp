#include "fjprove/expr.hpp"

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

namespace fjprove {

namespace {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number { std::string text; };
struct Named { Const which; };
struct Unary { char op; NodePtr arg; };
struct Binary { char op; NodePtr lhs, rhs; };
struct Power { NodePtr base; long exponent; };
struct Call { std::string fn; NodePtr arg; };

struct Node {
    std::variant<Number, Named, Unary, Binary, Power, Call> v;
};

Real eval(const Node& node, long bits) {
    return std::visit(
        [bits](const auto& n) -> Real {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Number>) {
                return Real::parse(n.text, bits);
            } else if constexpr (std::is_same_v<T, Named>) {
                return constant(n.which, bits);
            } else if constexpr (std::is_same_v<T, Unary>) {
                return -eval(*n.arg, bits);
            } else if constexpr (std::is_same_v<T, Binary>) {
                Real a = eval(*n.lhs, bits);
                const Real b = eval(*n.rhs, bits);
                switch (n.op) {
                case '+': a += b; break;
                case '-': a -= b; break;
                case '*': a *= b; break;
                default:
                    if (b.is_zero()) {
                        throw std::domain_error("division by zero");
                    }
                    a /= b;
                }
                return a;
            } else if constexpr (std::is_same_v<T, Power>) {
                return pow(eval(*n.base, bits), n.exponent);
            } else {
                if (n.fn == "pi") {
                    Real pi(bits);
                    mpfr_const_pi(pi.get(), MPFR_RNDN);
                    return pi;
                }
                const Real x = eval(*n.arg, bits);
                if (n.fn == "log") {
                    if (x <= 0) {
                        throw std::domain_error("log of a non-positive number");
                    }
                    return log(x);
                }
                if (n.fn == "sqrt") {
                    if (x < 0) {
                        throw std::domain_error("sqrt of a negative number");
                    }
                    return sqrt(x);
                }
                return exp(x);
            }
        },
        node.v);
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression: " + what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr make(auto v) { return std::make_shared<const Node>(Node{std::move(v)}); }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+')) {
                lhs = make(Binary{'+', lhs, term()});
            } else if (eat('-')) {
                lhs = make(Binary{'-', lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (eat('*')) {
                lhs = make(Binary{'*', lhs, unary()});
            } else if (eat('/')) {
                lhs = make(Binary{'/', lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (eat('-')) {
            return make(Unary{'-', unary()});
        }
        if (eat('+')) {
            return unary();
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!eat('^')) {
            return base;
        }
        skip();
        bool negative = false;
        if (eat('-')) {
            negative = true;
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("integer exponent expected");
        }
        long k = std::stol(std::string(s_.substr(start, pos_ - start)));
        return make(Power{base, negative ? -k : k});
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) {
                fail("')' expected");
            }
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            const std::string id(s_.substr(start, pos_ - start));
            if (id == "log" || id == "sqrt" || id == "exp") {
                if (!eat('(')) {
                    fail("'(' expected after " + id);
                }
                NodePtr arg = expr();
                if (!eat(')')) {
                    fail("')' expected");
                }
                return make(Call{id, arg});
            }
            if (id == "alpha") {
                return make(Named{Const::alpha});
            }
            if (id == "sqrt5") {
                return make(Named{Const::sqrt5});
            }
            if (id == "log2") {
                return make(Named{Const::log2});
            }
            if (id == "beta") {
                // (1 - sqrt5) / 2
                return make(Binary{'/', make(Binary{'-', make(Number{"1"}), make(Named{Const::sqrt5})}),
                                   make(Number{"2"})});
            }
            if (id == "pi") {
                return make(Call{"pi", nullptr});
            }
            if (id == "e") {
                return make(Call{"exp", make(Number{"1"})});
            }
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
                ++p;
            }
            if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                pos_ = p;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    ++pos_;
                }
            }
        }
        const std::string text(s_.substr(start, pos_ - start));
        Real::parse(text, 64);
        return make(Number{text});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

LazyReal parse_real_expression(std::string_view text) {
    NodePtr root = Parser(text).parse();
    return [root](long bits) {
        const long work = bits + 32;
        return eval(*root, work).with_precision(bits);
    };
}

mpz_class parse_exact_integer(std::string_view text) {
    std::string s(text);
    const auto e = s.find_first_of("eE");
    std::string mant = s.substr(0, e);
    long exp10 = 0;
    try {
        if (e != std::string::npos) {
            std::size_t used = 0;
            exp10 = std::stol(s.substr(e + 1), &used);
            if (used != s.size() - e - 1) {
                throw std::invalid_argument("trailing characters");
            }
        }
        const auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("digits expected");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer literal: " + s);
    }
    mpz_class value(mant);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0) {
        return value * scale;
    }
    if (value % scale != 0) {
        throw std::invalid_argument("not an integer: " + s);
    }
    return value / scale;
}

} // namespace fjprove
