// Exact scalar types used throughout the library.
//
// Integer and Rational are thin value wrappers over Boost.Multiprecision.
// They exist so that Eigen sees plain scalar classes (no const_iterator, no
// expression templates) and so the rest of the code can treat them like
// built-in arithmetic types.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace lefschetz {

class Rational;

class Integer {
public:
    using Backend = boost::multiprecision::cpp_int;

    Integer() = default;
    template <std::integral T>
    Integer(T v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    explicit Integer(Backend v) : v_(std::move(v)) {}

    /// Parses an optionally signed decimal literal. Throws std::invalid_argument.
    static Integer parse(std::string_view text);

    const Backend& backend() const { return v_; }

    Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
    Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
    Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
    /// Truncating division, as for built-in integers.
    Integer& operator/=(const Integer& o) { v_ /= o.v_; return *this; }
    Integer& operator%=(const Integer& o) { v_ %= o.v_; return *this; }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
    friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
    Integer operator-() const { return Integer(Backend(-v_)); }
    Integer operator+() const { return *this; }

    friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        const int c = a.v_.compare(b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.is_zero(); }
    /// True iff *this is divisible by d (d != 0).
    bool divisible_by(const Integer& d) const { return Backend(v_ % d.v_).is_zero(); }

    /// Narrowing conversion; throws std::overflow_error when out of range.
    std::int64_t to_int64() const;

    std::string str() const { return v_.str(); }

private:
    Backend v_{0};
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
/// Floor division and the matching non-negative remainder for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod(const Integer& a, const Integer& b);

std::ostream& operator<<(std::ostream& os, const Integer& a);

class Rational {
public:
    using Backend = boost::multiprecision::cpp_rational;

    Rational() = default;
    template <std::integral T>
    Rational(T v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : v_(v.backend()) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    explicit Rational(Backend v) : v_(std::move(v)) {}

    /// Parses `p` or `p/q`. Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    Integer numerator() const;
    Integer denominator() const;
    bool is_integer() const;
    /// Throws std::domain_error if the value is not integral.
    Integer to_integer() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(Backend(-v_)); }
    Rational operator+() const { return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = a.v_.compare(b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.is_zero(); }

    /// Lowest terms, `p` when integral and `p/q` otherwise.
    std::string str() const;

private:
    Backend v_{0};
};

Rational abs(const Rational& a);
std::ostream& operator<<(std::ostream& os, const Rational& a);

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RationalVector = Vector<Rational>;

}  // namespace lefschetz

template <>
struct std::hash<lefschetz::Integer> {
    std::size_t operator()(const lefschetz::Integer& a) const noexcept {
        return std::hash<std::string>{}(a.str());
    }
};

namespace Eigen {

template <>
struct NumTraits<lefschetz::Integer> : GenericNumTraits<lefschetz::Integer> {
    using Real = lefschetz::Integer;
    using NonInteger = lefschetz::Rational;
    using Nested = lefschetz::Integer;
    using Literal = lefschetz::Integer;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 8,
        MulCost = 16
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<lefschetz::Rational> : GenericNumTraits<lefschetz::Rational> {
    using Real = lefschetz::Rational;
    using NonInteger = lefschetz::Rational;
    using Nested = lefschetz::Rational;
    using Literal = lefschetz::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
