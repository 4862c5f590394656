#include "klt/partition.hpp"

#include "klt/error.hpp"

#include <algorithm>

namespace klt {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) fail(errc::invalid_argument, "partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            fail(errc::invalid_argument, "partition parts must be weakly decreasing");
    }
}

int Partition::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

int Partition::multiplicity(int i) const {
    return (int)std::count(parts.begin(), parts.end(), i);
}

long long Partition::z() const {
    long long z = 1;
    int run = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        ++run;
        z = checked_mul(z, parts[i]);
        if (i + 1 == parts.size() || parts[i + 1] != parts[i]) {
            for (int f = 2; f <= run; ++f) z = checked_mul(z, f);
            run = 0;
        }
    }
    return z;
}

long long Partition::n_stat() const {
    long long n = 0;
    for (size_t i = 0; i < parts.size(); ++i) n += (long long)i * parts[i];
    return n;
}

Partition Partition::conjugate() const {
    Partition c;
    if (parts.empty()) return c;
    c.parts.resize(parts[0]);
    for (int i = 0; i < parts[0]; ++i)
        c.parts[i] = (int)std::count_if(parts.begin(), parts.end(), [&](int p) { return p > i; });
    return c;
}

bool Partition::dominates(const Partition& o) const {
    long long a = 0, b = 0;
    size_t len = std::max(parts.size(), o.parts.size());
    for (size_t i = 0; i < len; ++i) {
        a += i < parts.size() ? parts[i] : 0;
        b += i < o.parts.size() ? o.parts[i] : 0;
        if (a < b) return false;
    }
    return a == b;
}

std::vector<Partition> partitions(int r) {
    if (r < 0) fail(errc::invalid_argument, "negative partition size");
    if (r > 40) fail(errc::size_limit, "partitions supported up to r = 40");
    std::vector<Partition> out;
    if (r == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    // Reverse-lexicographic descent: largest first part first.
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, r, r);
    return out;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in multiply");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in add");
    return r;
}

IntPoly::IntPoly(std::vector<long long> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(long long v) { return IntPoly({v}); }

IntPoly IntPoly::monomial(int deg, long long v) {
    std::vector<long long> c(deg + 1, 0);
    c[deg] = v;
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = checked_add(i < c.size() ? c[i] : 0, i < o.c.size() ? o.c[i] : 0);
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + o.scaled(-1); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    IntPoly r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j)
            r.c[i + j] = checked_add(r.c[i + j], checked_mul(c[i], o.c[j]));
    r.trim();
    return r;
}

IntPoly IntPoly::scaled(long long v) const {
    IntPoly r = *this;
    for (auto& x : r.c) x = checked_mul(x, v);
    r.trim();
    return r;
}

__int128 IntPoly::eval_i128(long long x) const {
    __int128 acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double IntPoly::eval_double(double x) const {
    double acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + (double)c[i];
    return acc;
}

} // namespace klt
