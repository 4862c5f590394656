#pragma once

#include "klt/ffield.hpp"

#include <vector>

namespace klt {

/// Dense polynomial over a field context, constant term first, trimmed.
struct FqPoly {
    std::vector<FFElem> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }
};

FqPoly fq_poly(const FieldCtx& ctx, const std::vector<long long>& coeffs);
/// Lift an F_p coefficient list into ctx via the canonical constant embedding.
FqPoly fq_lift_modp(const FieldCtx& ctx, const std::vector<uint32_t>& coeffs);
std::vector<long long> fq_to_residues(const FieldCtx& ctx, const FqPoly& f); // m == 1 only

void fq_trim(FqPoly& f);
FqPoly fq_add(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly fq_sub(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly fq_mul(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly fq_monic(const FieldCtx& ctx, FqPoly f);
void fq_divmod(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem);
FqPoly fq_mod(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly fq_div_exact(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly fq_gcd(const FieldCtx& ctx, FqPoly a, FqPoly b); // monic result
FqPoly fq_powmod(const FieldCtx& ctx, FqPoly base, uint64_t e, const FqPoly& mod);
FqPoly fq_derivative(const FieldCtx& ctx, const FqPoly& f);
FFElem fq_eval(const FieldCtx& ctx, const FqPoly& f, const FFElem& x);
bool fq_equal(const FqPoly& a, const FqPoly& b);

struct FqFactor {
    FqPoly poly; // monic irreducible
    int multiplicity;
};

/// Full factorization into monic irreducibles: squarefree decomposition,
/// then distinct-degree splitting, then seeded Cantor-Zassenhaus.
/// Deterministic for a fixed seed; factors sorted canonically.
std::vector<FqFactor> fq_factor(const FieldCtx& ctx, FqPoly f, uint64_t seed = 0);

bool fq_is_irreducible(const FieldCtx& ctx, const FqPoly& f);

/// Roots of f lying in ctx, sorted by element index. Multiplicities dropped.
std::vector<FFElem> fq_roots(const FieldCtx& ctx, const FqPoly& f, uint64_t seed = 0);

/// Field embedding small -> big (small.m must divide big.m, same p),
/// realized by the smallest root (in generator-power order) of the small
/// modulus inside big. Carries the index factor needed to lift
/// multiplicative characters through the norm.
struct Embedding {
    FieldCtx small;
    FieldCtx big;
    FFElem root;                     // image of the small modulus root
    std::vector<FFElem> root_powers; // root^0 .. root^{small.m-1}
    uint64_t norm_index = 1;         // dlog_{g_small} of Norm(G_big)

    FFElem map(const FFElem& x) const;
};

Embedding make_embedding(const FieldCtx& small, const FieldCtx& big);

/// The trivial self-embedding (map is the identity).
Embedding identity_embedding(const FieldCtx& ctx);

/// Lift characters through an embedding: the multiplicative index j becomes
/// j * norm_index * (Q-1)/(q-1) (composition with the norm); the additive
/// character composes with the relative trace automatically because psi is
/// defined through the absolute trace.
CharSpec lift_char_spec(const CharSpec& spec, const Embedding& emb);

uint64_t invmod_u64(uint64_t a, uint64_t n);

} // namespace klt
