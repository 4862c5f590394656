#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace klt {

/// Element of F_{p^m}: coefficient vector of length m over F_p in the
/// polynomial basis of the context's modulus root, constant term first.
struct FFElem {
    std::vector<uint32_t> c;

    bool is_zero() const {
        for (uint32_t v : c)
            if (v) return false;
        return true;
    }
    bool operator==(const FFElem&) const = default;
};

/// Character data for rank-k sums: k multiplicative character indices
/// relative to the context generator (index 0 = trivial) plus the additive
/// scale a in F_p^x defining psi(x) = exp(2*pi*i * a*Tr(x) / p).
struct CharSpec {
    int k = 2;
    std::vector<uint64_t> mult_indices;
    uint32_t additive_scale = 1;

    static CharSpec trivial(int k) { return CharSpec{k, std::vector<uint64_t>(k, 0), 1}; }
    bool all_mult_trivial() const {
        for (uint64_t j : mult_indices)
            if (j) return false;
        return true;
    }
};

namespace detail {
struct DlogCache;
}

/// Immutable description of F_{p^m}: prime, monic irreducible modulus,
/// and a fixed primitive element. All arithmetic goes through this context.
class FieldCtx {
public:
    uint32_t p = 0;
    uint32_t m = 0;
    uint64_t q = 0; // p^m, < 2^63
    std::vector<uint32_t> modulus; // degree m, monic, constant first
    FFElem generator;
    std::vector<uint64_t> q1_prime_factors; // distinct primes of q-1

    FFElem zero() const { return FFElem{std::vector<uint32_t>(m, 0)}; }
    FFElem one() const;
    FFElem from_residues(const std::vector<long long>& v) const;
    /// Deterministic element enumeration: base-p digits of idx, little-endian.
    FFElem from_index(uint64_t idx) const;
    uint64_t to_index(const FFElem& x) const;

    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem inv(const FFElem& a) const; // errc::division_by_zero on 0
    FFElem pow(const FFElem& a, uint64_t e) const;

    /// Absolute trace Tr_{F_{p^m}/F_p}(x) as a residue mod p.
    uint32_t trace(const FFElem& x) const;

    /// Discrete log base the context generator, in [0, q-1).
    /// Baby-step/giant-step; errc::zero_argument on 0.
    uint64_t dlog(const FFElem& x) const;

    // Packed-bit fast path for p = 2 (elements as uint64 bit vectors).
    bool packed2() const { return p == 2; }
    uint64_t pack2(const FFElem& x) const;
    FFElem unpack2(uint64_t bits) const;
    uint64_t mul2(uint64_t a, uint64_t b) const;
    uint64_t pow2(uint64_t a, uint64_t e) const;
    uint64_t inv2(uint64_t a) const;
    uint32_t trace2(uint64_t a) const { return __builtin_parityll(a & trace_mask_); }

    bool same_field(const FieldCtx& o) const { return p == o.p && modulus == o.modulus; }

private:
    friend FieldCtx ff_make(uint32_t p, const std::vector<long long>& modulus);
    uint64_t mod_mask_ = 0;   // p = 2: modulus bits incl. leading term
    uint64_t trace_mask_ = 0; // p = 2: bit j = Tr(xi^j)
    std::vector<uint32_t> trace_basis_;
    std::shared_ptr<detail::DlogCache> dlog_cache_;
};

/// Build a field context. Verifies primality of p (p <= 2^20), monicity and
/// irreducibility of the modulus, p^m < 2^63, and finds the first primitive
/// element in enumeration order.
FieldCtx ff_make(uint32_t p, const std::vector<long long>& modulus);

/// F_p itself (modulus T).
FieldCtx ff_make_prime(uint32_t p);

/// F_{p^degree} with the first irreducible monic modulus of that degree in
/// enumeration order. Deterministic.
FieldCtx ff_make_auto(uint32_t p, uint32_t degree);

/// First monic irreducible polynomial of the given degree over F_p in
/// enumeration order (coefficient list, constant first).
std::vector<long long> find_irreducible_modp(uint32_t p, uint32_t degree);

bool is_prime_u64(uint64_t n);
std::vector<uint64_t> prime_factors_u64(uint64_t n); // distinct primes, ascending

/// exp(2*pi*i * num/den)
std::complex<double> unit_root(uint64_t num, uint64_t den);

/// Multiplicative character alpha_slot at x (x != 0).
std::complex<double> mult_char(const FieldCtx& ctx, const CharSpec& spec, int slot,
                               const FFElem& x);
/// Same, given dlog(x) directly (avoids the BSGS lookup in hot loops).
std::complex<double> mult_char_at_dlog(const FieldCtx& ctx, uint64_t index, uint64_t dlog_x);
/// Additive character psi at x.
std::complex<double> add_char(const FieldCtx& ctx, const CharSpec& spec, const FFElem& x);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t mod);
uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t mod);

} // namespace klt
