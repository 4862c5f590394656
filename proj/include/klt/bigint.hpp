#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace klt {

/// Signed arbitrary-precision integer, base 2^32 limbs, little-endian.
/// Sized for exact symmetric-function work (a few hundred bits), not for
/// cryptographic performance.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    /// Truncated quotient (rounds toward zero).
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool operator==(const BigInt& o) const;
    std::strong_ordering operator<=>(const BigInt& o) const;

    /// Quotient when the division is known to be exact; throws otherwise.
    BigInt div_exact(const BigInt& o) const;

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, unsigned e);

    /// Throws errc::overflow when the value does not fit.
    long long to_ll() const;
    bool fits_ll() const;
    double to_double() const;
    std::string to_string() const;

private:
    bool negative_ = false;
    std::vector<uint32_t> limbs_; // no trailing zero limbs; empty == 0

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b);
    static BigInt sub_mag(const BigInt& a, const BigInt& b); // |a| >= |b|
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
};

/// Exact rational with BigInt numerator/denominator, always normalized
/// (denominator > 0, gcd 1).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    BigInt num_, den_;
    void normalize();
};

} // namespace klt
