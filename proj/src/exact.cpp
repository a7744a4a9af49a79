#include "lefschetz/exact.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lefschetz {

namespace {

bool is_decimal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Integer Integer::parse(std::string_view text) {
    if (!is_decimal(text))
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    if (text[0] == '+') text.remove_prefix(1);
    return Integer(Backend(std::string(text)));
}

std::int64_t Integer::to_int64() const {
    if (v_ > std::numeric_limits<std::int64_t>::max() ||
        v_ < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer out of 64-bit range: " + str());
    return v_.convert_to<std::int64_t>();
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
    return Integer(Integer::Backend(boost::multiprecision::gcd(a.backend(), b.backend())));
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
    return q;
}

Integer mod(const Integer& a, const Integer& b) { return a - floor_div(a, b) * b; }

std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

Rational::Rational(const Integer& num, const Integer& den) {
    if (den.is_zero()) throw std::invalid_argument("rational with zero denominator");
    v_ = den.sign() < 0 ? Backend(-num.backend(), -den.backend()) : Backend(num.backend(), den.backend());
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(Integer::parse(text));
    const auto den = text.substr(slash + 1);
    if (!den.empty() && (den[0] == '-' || den[0] == '+'))
        throw std::invalid_argument("signed denominator in '" + std::string(text) + "'");
    return Rational(Integer::parse(text.substr(0, slash)), Integer::parse(den));
}

Integer Rational::numerator() const {
    return Integer(Integer::Backend(boost::multiprecision::numerator(v_)));
}

Integer Rational::denominator() const {
    return Integer(Integer::Backend(boost::multiprecision::denominator(v_)));
}

bool Rational::is_integer() const { return denominator() == Integer(1); }

Integer Rational::to_integer() const {
    if (!is_integer()) throw std::domain_error("not an integer: " + str());
    return numerator();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const {
    const Integer den = denominator();
    if (den == Integer(1)) return numerator().str();
    return numerator().str() + "/" + den.str();
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

}  // namespace lefschetz
