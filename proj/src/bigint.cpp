#include "klt/bigint.hpp"

#include "klt/error.hpp"

#include <algorithm>
#include <cmath>

namespace klt {

BigInt::BigInt(long long v) {
    negative_ = v < 0;
    unsigned long long u = negative_ ? -(unsigned long long)v : (unsigned long long)v;
    while (u) {
        limbs_.push_back((uint32_t)(u & 0xffffffffu));
        u >>= 32;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;)
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        uint64_t s = carry;
        if (i < a.limbs_.size()) s += a.limbs_[i];
        if (i < b.limbs_.size()) s += b.limbs_[i];
        r.limbs_[i] = (uint32_t)s;
        carry = s >> 32;
    }
    r.trim();
    return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.limbs_.resize(a.limbs_.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        int64_t s = (int64_t)a.limbs_[i] - borrow - (i < b.limbs_.size() ? b.limbs_[i] : 0);
        borrow = s < 0;
        if (s < 0) s += ((int64_t)1 << 32);
        r.limbs_[i] = (uint32_t)s;
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.negative_ = !r.negative_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (negative_ == o.negative_) {
        BigInt r = add_mag(*this, o);
        r.negative_ = negative_ && !r.limbs_.empty();
        return r;
    }
    int c = cmp_mag(*this, o);
    if (c == 0) return BigInt();
    BigInt r = c > 0 ? sub_mag(*this, o) : sub_mag(o, *this);
    r.negative_ = (c > 0 ? negative_ : o.negative_) && !r.limbs_.empty();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            uint64_t cur = (uint64_t)limbs_[i] * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = (uint32_t)cur;
            carry = cur >> 32;
        }
        r.limbs_[i + o.limbs_.size()] += (uint32_t)carry;
    }
    r.negative_ = negative_ != o.negative_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) fail(errc::division_by_zero, "BigInt division by zero");
    q = BigInt();
    r = BigInt();
    if (cmp_mag(a, b) < 0) {
        r = a;
        r.negative_ = false;
        return;
    }
    // Schoolbook binary long division on magnitudes.
    size_t nbits = a.limbs_.size() * 32;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (size_t i = nbits; i-- > 0;) {
        // r = 2r + bit_i(a)
        uint32_t carry = (a.limbs_[i / 32] >> (i % 32)) & 1u;
        for (size_t j = 0; j < r.limbs_.size(); ++j) {
            uint32_t next = r.limbs_[j] >> 31;
            r.limbs_[j] = (r.limbs_[j] << 1) | carry;
            carry = next;
        }
        if (carry) r.limbs_.push_back(carry);
        if (cmp_mag(r, b) >= 0) {
            r = sub_mag(r, b);
            q.limbs_[i / 32] |= (1u << (i % 32));
        }
    }
    q.trim();
    r.trim();
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    q.negative_ = (negative_ != o.negative_) && !q.limbs_.empty();
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    r.negative_ = negative_ && !r.limbs_.empty();
    return r;
}

BigInt BigInt::div_exact(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    if (!r.is_zero()) fail(errc::overflow, "inexact BigInt division");
    q.negative_ = (negative_ != o.negative_) && !q.limbs_.empty();
    return q;
}

bool BigInt::operator==(const BigInt& o) const {
    return negative_ == o.negative_ && limbs_ == o.limbs_;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign() != o.sign()) return sign() <=> o.sign();
    int c = cmp_mag(*this, o);
    if (negative_) c = -c;
    return c <=> 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned e) {
    BigInt r(1), b = base;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool BigInt::fits_ll() const {
    if (limbs_.size() > 2) return false;
    unsigned long long u = 0;
    for (size_t i = limbs_.size(); i-- > 0;) u = (u << 32) | limbs_[i];
    if (negative_) return u <= (unsigned long long)1 << 63;
    return u < (unsigned long long)1 << 63;
}

long long BigInt::to_ll() const {
    if (!fits_ll()) fail(errc::overflow, "BigInt does not fit in 64 bits");
    unsigned long long u = 0;
    for (size_t i = limbs_.size(); i-- > 0;) u = (u << 32) | limbs_[i];
    return negative_ ? -(long long)u : (long long)u;
}

double BigInt::to_double() const {
    double v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return negative_ ? -v : v;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt v = *this;
    v.negative_ = false;
    std::string digits;
    BigInt ten(10);
    while (!v.is_zero()) {
        BigInt q, r;
        divmod(v, ten, q, r);
        digits.push_back((char)('0' + (r.limbs_.empty() ? 0 : r.limbs_[0])));
        v = q;
    }
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) fail(errc::division_by_zero, "rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_.div_exact(g);
    den_ = den_.div_exact(g);
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) fail(errc::division_by_zero, "rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

} // namespace klt
