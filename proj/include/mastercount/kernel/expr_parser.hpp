#pragma once

#include "mastercount/kernel/bigrat.hpp"
#include "mastercount/kernel/error.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace mastercount::kernel {

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos) : Error(ErrorKind::domain, msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// The input, a caret under the offending column, and the message.
std::string caret_diagnostic(std::string_view text, const ParseError& e);

/// Recursive-descent parser for + - * / ^ expressions over integer literals
/// and identifiers. T needs a BigRat constructor and field operations;
/// `resolve(name, pos)` maps identifiers to values.
template <class T, class Resolve>
class ExprParser {
public:
    ExprParser(std::string_view text, Resolve resolve) : s_(text), resolve_(resolve) {}

    T parse() {
        T v = expr();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return v;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    T expr() {
        T v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    T term() {
        T v = unary();
        for (;;) {
            if (eat('*')) v = v * unary();
            else if (eat('/')) v = v / unary();
            else return v;
        }
    }
    T unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    T power() {
        T base = atom();
        if (!eat('^')) return base;
        bool neg = eat('-');
        skip();
        std::size_t start = i_;
        long k = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) k = 10 * k + (s_[i_++] - '0');
        if (i_ == start) throw ParseError("expected integer exponent", i_);
        T r(BigRat(1));
        for (long j = 0; j < k; ++j) r = r * base;
        return neg ? T(BigRat(1)) / r : r;
    }
    T atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            T v = expr();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ < s_.size() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E'))
                throw ParseError("decimal literals are not accepted; use p/q", i_);
            return T(BigRat(std::string(s_.substr(start, i_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            return resolve_(s_.substr(start, i_ - start), start);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
    }

    std::string_view s_;
    Resolve resolve_;
    std::size_t i_ = 0;
};

template <class T, class Resolve>
T parse_expression(std::string_view text, Resolve resolve) {
    return ExprParser<T, Resolve>(text, resolve).parse();
}

}  // namespace mastercount::kernel
