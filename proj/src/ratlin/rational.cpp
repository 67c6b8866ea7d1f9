#include "starcalc/ratlin/rational.hpp"

#include <cctype>

#include "starcalc/errors.hpp"

namespace starcalc {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw BadParameter("malformed rational '" + std::string(whole) + "'");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw BadParameter("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw BadParameter("malformed rational '" + std::string(whole) + "'");
        }
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return BigInt(digits, 10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const std::string_view body = trim(text);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(body, text));
    }
    const BigInt num = parse_integer(trim(body.substr(0, slash)), text);
    const BigInt den = parse_integer(trim(body.substr(slash + 1)), text);
    return Rational(num, den);
}

Rational Rational::abs() const {
    return sign() < 0 ? -*this : *this;
}

std::string Rational::to_string() const {
    return value_.get_str(10);
}

std::string Rational::to_decimal(int places) const {
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;

    const BigInt den = value_.get_den();
    BigInt magnitude = value_.get_num();
    if (magnitude < 0) magnitude = -magnitude;
    const BigInt scaled = magnitude * scale;
    // round half away from zero: floor((2|x| + den) / (2 den))
    BigInt rounded = (2 * scaled + den) / (2 * den);

    const BigInt integral = rounded / scale;
    const BigInt fraction = rounded % scale;

    std::string out;
    if (sign() < 0 && rounded != 0) out += '-';
    out += integral.get_str(10);
    if (places > 0) {
        std::string frac = fraction.get_str(10);
        out += '.';
        out.append(static_cast<std::size_t>(places) - frac.size(), '0');
        out += frac;
    }
    return out;
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-value_));
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw DivisionByZero("rational division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

}  // namespace starcalc
