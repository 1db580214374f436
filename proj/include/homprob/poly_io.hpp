#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "homprob/graded_poly.hpp"
#include "homprob/rational.hpp"

namespace homprob {

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Raised when eta or dt carries a literal exponent above 1. The product of
/// two odd factors is silently zero, but written input like "eta^2" is almost
/// certainly a mistake and is rejected outright.
struct odd_power_error : parse_error {
    odd_power_error(const std::string& var, std::size_t pos)
        : parse_error("odd variable '" + var + "' raised to a power above 1", pos) {}
};

namespace detail {

class PolyParser {
  public:
    explicit PolyParser(std::string_view src) : src_(src) {}

    GradedPoly parse() {
        GradedPoly p = expression();
        skip_ws();
        if (pos_ != src_.size()) throw parse_error("unexpected character", pos_);
        return p;
    }

  private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    GradedPoly expression() {
        GradedPoly acc;
        bool negate = consume('-');
        if (!negate) consume('+');
        acc = negate ? -term() : term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    GradedPoly term() {
        GradedPoly acc = factor();
        while (consume('*')) acc *= factor();
        return acc;
    }

    GradedPoly factor() {
        bool negate = consume('-');
        GradedPoly base = atom();
        if (consume('^')) {
            std::size_t at = pos_;
            unsigned e = integer();
            if (e > 1) {
                // re-inspect the base: a bare odd variable cannot carry e > 1
                if (base == GradedPoly::eta()) throw odd_power_error("eta", at);
                if (base == GradedPoly::dt()) throw odd_power_error("dt", at);
            }
            base = base.pow(e);
        }
        return negate ? -base : base;
    }

    GradedPoly atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            GradedPoly p = expression();
            if (!consume(')')) throw parse_error("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return GradedPoly(rational());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string name = identifier();
            if (name == "x") return GradedPoly::x();
            if (name == "t") return GradedPoly::t();
            if (name == "eta") return GradedPoly::eta();
            if (name == "dt") return GradedPoly::dt();
            throw parse_error("unknown variable '" + name + "'", at);
        }
        throw parse_error("expected number, variable or '('", pos_);
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    unsigned integer() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw parse_error("expected integer", pos_);
        unsigned long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(src_[pos_] - '0');
            if (v > 1'000'000) throw parse_error("exponent too large", pos_);
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    Rational rational() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        BigInt num(std::string(src_.substr(start, pos_ - start)));
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (dstart == pos_) throw parse_error("expected denominator", pos_);
            BigInt den(std::string(src_.substr(dstart, pos_ - dstart)));
            if (den == 0) throw parse_error("zero denominator", dstart);
            return Rational(num, den);
        }
        return Rational(num);
    }
};

inline void print_var(std::string& out, const char* name, unsigned pow) {
    if (pow == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (pow > 1) {
        out += "^";
        out += std::to_string(pow);
    }
}

}  // namespace detail

inline GradedPoly parse_poly(std::string_view src) { return detail::PolyParser(src).parse(); }

/// Canonical form: terms in the monomial order (degree, then x power, then
/// t power), variables printed as x, t, eta, dt. parse_poly(print_poly(p)) == p.
inline std::string print_poly(const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms) {
        Rational a = c;
        if (out.empty()) {
            if (a < Rational(0)) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < Rational(0) ? " - " : " + ";
            if (a < Rational(0)) a = -a;
        }
        std::string vars;
        detail::print_var(vars, "x", m.x_pow);
        detail::print_var(vars, "t", m.t_pow);
        detail::print_var(vars, "eta", m.eta ? 1 : 0);
        detail::print_var(vars, "dt", m.dt ? 1 : 0);
        if (vars.empty()) {
            out += a.to_string();
        } else {
            if (!a.is_one()) {
                out += a.to_string();
                out += "*";
            }
            out += vars;
        }
    }
    return out;
}

}  // namespace homprob
