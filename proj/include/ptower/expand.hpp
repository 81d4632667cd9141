#pragma once

// Coordinates of K over K^{p^M} in the monomial basis {x^e : 0 <= e_i < p^M}.
// Each stored entry is the p^M-th *root* of the true coefficient, so
// K^{p^M}-linear algebra on true coefficients is plain K-linear algebra on
// the stored ones (freshman's dream both ways).

#include "linalg.hpp"
#include "ratfun.hpp"

namespace ptower {

struct Layout {
    Ctx ctx;
    long level;    // M
    long q;        // p^M
    long ncoords;  // q^d

    Layout(Ctx c, long M) : ctx(std::move(c)), level(M), q(pow_long(ctx->p, M)) {
        ncoords = 1;
        for (int i = 0; i < ctx->dim(); ++i) ncoords *= q;
    }

    long index_of(const MultiIndex& e) const {
        long idx = 0;
        for (int i = ctx->dim() - 1; i >= 0; --i) idx = idx * q + e[i];
        return idx;
    }
    MultiIndex decode(long idx) const {
        MultiIndex e(ctx->dim());
        for (int i = 0; i < ctx->dim(); ++i) {
            e[i] = static_cast<int>(idx % q);
            idx /= q;
        }
        return e;
    }
};

struct ExpansionVector {
    Ctx ctx;
    long level = 0;
    SparseVec<RatFun> coords;  // index (per Layout) -> p^M-th root of coefficient

    // sum c^{p^M} x^e, grouped by denominator so only a handful of small
    // gcds are needed
    RatFun reassemble() const {
        Layout lay(ctx, level);
        std::vector<std::pair<Polynomial, Polynomial>> groups;  // (den, num sum)
        for (auto& [idx, c] : coords) {
            Polynomial t = c.num().frobenius(level) *
                           Polynomial::monomial(ctx, lay.decode(idx), fp_one(ctx->p));
            bool found = false;
            for (auto& [d, n] : groups)
                if (d == c.den()) {
                    n = n + t;
                    found = true;
                    break;
                }
            if (!found) groups.emplace_back(c.den(), std::move(t));
        }
        Polynomial N = Polynomial::zero(ctx), D = Polynomial::constant(ctx, 1);
        Polynomial pool = Polynomial::constant(ctx, 1);
        for (size_t i = 0; i < groups.size(); ++i) {
            Polynomial others = Polynomial::constant(ctx, 1);
            for (size_t j = 0; j < groups.size(); ++j)
                if (j != i) others = others * groups[j].first.frobenius(level);
            N = N + groups[i].second * others;
            D = D * groups[i].first.frobenius(level);
            if (!groups[i].first.is_constant()) pool = pool * groups[i].first;
        }
        return RatFun::reduce_over(std::move(N), std::move(D), std::move(pool));
    }
};

// f = num/den = (num * den^{q-1}) / den^q; group the numerator's monomials by
// exponent residue mod q and take q-th roots of the grouped parts.
inline ExpansionVector expand_over_level(const RatFun& f, long M) {
    const Ctx& ctx = f.ctx();
    Layout lay(ctx, M);
    long q = lay.q;
    ExpansionVector out{ctx, M, {}};
    if (f.is_zero()) return out;

    Polynomial n = f.num();
    const Polynomial& den = f.den();
    if (!den.is_constant()) {
        Polynomial dpow = Polynomial::constant(ctx, 1);
        for (long i = 0; i + 1 < q; ++i) dpow = dpow * den;
        n = n * dpow;
    }
    // residue class -> root polynomial
    std::map<long, Polynomial> groups;
    for (auto& [e, c] : n.terms()) {
        MultiIndex r(e.size()), s(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            r[i] = static_cast<int>(e[i] % q);
            s[i] = static_cast<int>(e[i] / q);
        }
        long idx = lay.index_of(r);
        auto it = groups.find(idx);
        if (it == groups.end()) it = groups.emplace(idx, Polynomial::zero(ctx)).first;
        it->second.add_term(s, c);
    }
    for (auto& [idx, root] : groups) {
        RatFun c(root, den);
        if (!c.is_zero()) out.coords.emplace(idx, std::move(c));
    }
    return out;
}

}  // namespace ptower
