#include "klt/matfq.hpp"

#include "klt/error.hpp"

namespace klt {

MatrixFq::MatrixFq(const FieldCtx& ctx, int n) : ctx_(ctx), n_(n) {
    if (n < 1 || n > 64) fail(errc::invalid_argument, "matrix dimension must be in [1, 64]");
    e_.assign((size_t)n * n, ctx.zero());
}

MatrixFq MatrixFq::identity(const FieldCtx& ctx, int n) {
    MatrixFq m(ctx, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
    return m;
}

MatrixFq MatrixFq::from_residues(const FieldCtx& ctx,
                                 const std::vector<std::vector<long long>>& rows) {
    int n = (int)rows.size();
    MatrixFq m(ctx, n);
    for (int i = 0; i < n; ++i) {
        if ((int)rows[i].size() != n) fail(errc::invalid_argument, "matrix must be square");
        for (int j = 0; j < n; ++j) m.at(i, j) = ctx.from_residues({rows[i][j]});
    }
    return m;
}

MatrixFq MatrixFq::mul(const MatrixFq& o) const {
    if (n_ != o.n_) fail(errc::size_mismatch, "matrix dimension mismatch");
    MatrixFq r(ctx_, n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const FFElem& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < n_; ++j)
                r.at(i, j) = ctx_.add(r.at(i, j), ctx_.mul(a, o.at(k, j)));
        }
    return r;
}

MatrixFq MatrixFq::add(const MatrixFq& o) const {
    if (n_ != o.n_) fail(errc::size_mismatch, "matrix dimension mismatch");
    MatrixFq r(ctx_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = ctx_.add(e_[i], o.e_[i]);
    return r;
}

FFElem MatrixFq::trace_elem() const {
    FFElem t = ctx_.zero();
    for (int i = 0; i < n_; ++i) t = ctx_.add(t, at(i, i));
    return t;
}

namespace {

// Gaussian elimination; returns (rank, det). When inv != nullptr the input
// must be square invertible and *inv receives the inverse.
std::pair<int, FFElem> eliminate(const FieldCtx& ctx, MatrixFq a, MatrixFq* inv) {
    int n = a.n();
    FFElem det = ctx.one();
    MatrixFq id = MatrixFq::identity(ctx, n);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (!a.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) {
            det = ctx.zero();
            continue;
        }
        if (pivot != rank) {
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(rank, j));
                std::swap(id.at(pivot, j), id.at(rank, j));
            }
            det = ctx.neg(det);
        }
        FFElem pv = a.at(rank, col);
        det = ctx.mul(det, pv);
        FFElem pv_inv = ctx.inv(pv);
        for (int j = 0; j < n; ++j) {
            a.at(rank, j) = ctx.mul(a.at(rank, j), pv_inv);
            id.at(rank, j) = ctx.mul(id.at(rank, j), pv_inv);
        }
        for (int r = 0; r < n; ++r) {
            if (r == rank || a.at(r, col).is_zero()) continue;
            FFElem f = a.at(r, col);
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = ctx.sub(a.at(r, j), ctx.mul(f, a.at(rank, j)));
                id.at(r, j) = ctx.sub(id.at(r, j), ctx.mul(f, id.at(rank, j)));
            }
        }
        ++rank;
    }
    if (inv) {
        if (rank < n) fail(errc::singular_matrix, "matrix is singular");
        *inv = id;
    }
    return {rank, rank == n ? det : ctx.zero()};
}

} // namespace

FFElem MatrixFq::det() const { return eliminate(ctx_, *this, nullptr).second; }

bool MatrixFq::is_invertible() const { return eliminate(ctx_, *this, nullptr).first == n_; }

MatrixFq MatrixFq::inverse() const {
    MatrixFq inv;
    eliminate(ctx_, *this, &inv);
    return inv;
}

FqPoly char_poly(const MatrixFq& y) {
    const FieldCtx& ctx = y.ctx();
    int n = y.n();
    MatrixFq h = y;

    // similarity reduction to upper Hessenberg form
    for (int j = 0; j + 2 < n; ++j) {
        int pivot = -1;
        for (int r = j + 1; r < n; ++r)
            if (!h.at(r, j).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != j + 1) {
            for (int c = 0; c < n; ++c) std::swap(h.at(pivot, c), h.at(j + 1, c));
            for (int r = 0; r < n; ++r) std::swap(h.at(r, pivot), h.at(r, j + 1));
        }
        FFElem pinv = ctx.inv(h.at(j + 1, j));
        for (int r = j + 2; r < n; ++r) {
            if (h.at(r, j).is_zero()) continue;
            FFElem f = ctx.mul(h.at(r, j), pinv);
            for (int c = 0; c < n; ++c) h.at(r, c) = ctx.sub(h.at(r, c), ctx.mul(f, h.at(j + 1, c)));
            for (int r2 = 0; r2 < n; ++r2)
                h.at(r2, j + 1) = ctx.add(h.at(r2, j + 1), ctx.mul(f, h.at(r2, r)));
        }
    }

    // p_k = (T - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod of subdiagonals) p_{k-i-1}
    std::vector<FqPoly> p(n + 1);
    p[0].c = {ctx.one()};
    for (int k = 1; k <= n; ++k) {
        FqPoly t_minus;
        t_minus.c = {ctx.neg(h.at(k - 1, k - 1)), ctx.one()};
        p[k] = fq_mul(ctx, t_minus, p[k - 1]);
        FFElem subprod = ctx.one();
        for (int i = 1; i < k; ++i) {
            subprod = ctx.mul(subprod, h.at(k - i, k - i - 1));
            FFElem coef = ctx.mul(h.at(k - i - 1, k - 1), subprod);
            if (coef.is_zero()) continue;
            FqPoly term = p[k - i - 1];
            for (auto& e : term.c) e = ctx.mul(e, coef);
            p[k] = fq_sub(ctx, p[k], term);
        }
    }
    return p[n];
}

MatrixFq companion(const FieldCtx& ctx, const FqPoly& P) {
    if (P.c.size() < 2 || !(P.c.back() == ctx.one()))
        fail(errc::invalid_argument, "companion requires a monic polynomial of degree >= 1");
    if (P.c[0].is_zero()) fail(errc::zero_constant_term, "companion requires P(0) != 0");
    int n = P.degree();
    MatrixFq c(ctx, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i + 1, i) = ctx.one();
    for (int i = 0; i < n; ++i) c.at(i, n - 1) = ctx.neg(P.c[i]);
    return c;
}

namespace {

// f(y) with Horner's rule on matrices
MatrixFq eval_poly_at_matrix(const FqPoly& f, const MatrixFq& y) {
    const FieldCtx& ctx = y.ctx();
    int n = y.n();
    MatrixFq acc(ctx, n);
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc.mul(y);
        for (int d = 0; d < n; ++d) acc.at(d, d) = ctx.add(acc.at(d, d), f.c[i]);
    }
    return acc;
}

} // namespace

ConjClassData conj_class_data(const MatrixFq& y, uint64_t factor_seed) {
    const FieldCtx& ctx = y.ctx();
    FqPoly cp = char_poly(y);
    if (cp.c[0].is_zero()) fail(errc::singular_matrix, "conjugacy data requires an invertible matrix");

    ConjClassData data;
    data.n = y.n();
    for (const auto& fac : fq_factor(ctx, cp, factor_seed)) {
        int d = fac.poly.degree();
        int r = fac.multiplicity;
        MatrixFq fy = eval_poly_at_matrix(fac.poly, y);
        // kernel dimension jumps give the conjugate partition
        std::vector<int> jumps;
        MatrixFq power = fy;
        int prev_nullity = 0;
        while ((int)jumps.size() < r) {
            int nullity = y.n() - eliminate(ctx, power, nullptr).first;
            int jump = (nullity - prev_nullity) / d;
            if (jump <= 0) break;
            jumps.push_back(jump);
            prev_nullity = nullity;
            power = power.mul(fy);
        }
        Partition conj(std::vector<int>(jumps.begin(), jumps.end()));
        ConjBlock block{d, fac.poly, conj.conjugate()};
        if (block.mu.size() != r)
            fail(errc::overflow, "conjugacy data inconsistent with factor multiplicity");
        data.blocks.push_back(std::move(block));
    }
    return data;
}

} // namespace klt
