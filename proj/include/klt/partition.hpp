#pragma once

#include <cstdint>
#include <vector>

namespace klt {

/// Integer partition: weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int size() const; // |lambda| = sum of parts
    int length() const { return (int)parts.size(); }
    int multiplicity(int i) const;

    /// z_lambda = prod_i i^{m_i} m_i!  (centralizer order of the cycle type)
    long long z() const;
    /// n(lambda) = sum (i-1) lambda_i
    long long n_stat() const;
    /// Conjugate (transposed) partition.
    Partition conjugate() const;
    /// True when this dominates o (both must partition the same integer).
    bool dominates(const Partition& o) const;

    bool operator==(const Partition& o) const { return parts == o.parts; }
    auto operator<=>(const Partition& o) const = default;
};

/// All partitions of r in reverse-lexicographic order, (r) first,
/// (1,...,1) last. r <= 40.
std::vector<Partition> partitions(int r);

/// Dense integer polynomial in one variable, constant term first.
/// Coefficients are exact 64-bit integers with overflow-checked arithmetic
/// (ample for the partition sizes this library caps at).
struct IntPoly {
    std::vector<long long> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<long long> coeffs);
    static IntPoly constant(long long v);
    static IntPoly monomial(int deg, long long v);

    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for zero
    long long coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : 0; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly scaled(long long v) const;
    bool operator==(const IntPoly& o) const { return c == o.c; }

    /// Exact evaluation at an integer point (128-bit accumulator).
    __int128 eval_i128(long long x) const;
    double eval_double(double x) const;

    void trim();
};

/// a*b with overflow detection; throws errc::overflow.
long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);

} // namespace klt
