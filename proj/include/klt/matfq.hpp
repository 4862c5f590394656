#pragma once

#include "klt/ffield.hpp"
#include "klt/fqpoly.hpp"
#include "klt/partition.hpp"

#include <vector>

namespace klt {

/// Square matrix over a field context, row-major storage.
class MatrixFq {
public:
    MatrixFq() = default;
    MatrixFq(const FieldCtx& ctx, int n);
    static MatrixFq identity(const FieldCtx& ctx, int n);
    static MatrixFq from_residues(const FieldCtx& ctx,
                                  const std::vector<std::vector<long long>>& rows);

    int n() const { return n_; }
    const FieldCtx& ctx() const { return ctx_; }
    FFElem& at(int i, int j) { return e_[(size_t)i * n_ + j]; }
    const FFElem& at(int i, int j) const { return e_[(size_t)i * n_ + j]; }

    MatrixFq mul(const MatrixFq& o) const;
    MatrixFq add(const MatrixFq& o) const;
    MatrixFq inverse() const; // errc::singular_matrix
    FFElem det() const;
    FFElem trace_elem() const;
    bool is_invertible() const;

    bool operator==(const MatrixFq& o) const { return n_ == o.n_ && e_ == o.e_; }

private:
    FieldCtx ctx_;
    int n_ = 0;
    std::vector<FFElem> e_;
};

/// Monic characteristic polynomial det(T*I - y), degree n, via Hessenberg
/// reduction (O(n^3) field operations).
FqPoly char_poly(const MatrixFq& y);

/// Companion matrix of a monic polynomial with nonzero constant term.
MatrixFq companion(const FieldCtx& ctx, const FqPoly& P);

/// One primary block of the conjugacy class data: irreducible factor of the
/// characteristic polynomial (degree d) together with the nilpotency
/// partition mu recovered from kernel-dimension jumps.
struct ConjBlock {
    int d;
    FqPoly minpoly;
    Partition mu;
};

struct ConjClassData {
    int n = 0;
    std::vector<ConjBlock> blocks;
};

/// Conjugacy class data of an invertible matrix: for each irreducible factor
/// f of the characteristic polynomial, the partition mu with
/// #(parts >= i) = (dim ker f(y)^i - dim ker f(y)^{i-1}) / deg f.
ConjClassData conj_class_data(const MatrixFq& y, uint64_t factor_seed = 0);

} // namespace klt
