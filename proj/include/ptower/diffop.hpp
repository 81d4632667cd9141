#pragma once

// Divided-power (Hasse) differential operators on K relative to its
// perfection: finite sums  sum c_e D^e  in the dual basis attached to the
// ambient coordinates, with D^e(x^f) = binom(f, e) x^{f-e}.

#include "expand.hpp"
#include "graded.hpp"

namespace ptower {

class DiffOperator {
public:
    using TermMap = std::map<MultiIndex, RatFun, GrlexLess>;

    explicit DiffOperator(Ctx ctx) : ctx_(std::move(ctx)) {}

    static DiffOperator zero(const Ctx& ctx) { return DiffOperator(ctx); }

    static DiffOperator dual_basis(const Ctx& ctx, const MultiIndex& e) {
        DiffOperator d(ctx);
        d.add_term(e, RatFun::one(ctx));
        return d;
    }

    // d/dx_i
    static DiffOperator partial(const Ctx& ctx, int i) {
        return dual_basis(ctx, mi_unit(ctx->dim(), i));
    }

    const Ctx& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int order() const {
        int d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    // the operator's value on 1
    RatFun constant_term() const {
        auto it = terms_.find(mi_zero(ctx_->dim()));
        return it == terms_.end() ? RatFun::zero(ctx_) : it->second;
    }

    bool is_derivation() const {
        for (auto& [e, c] : terms_)
            if (total_degree(e) != 1) return false;
        return !terms_.empty();
    }

    void add_term(const MultiIndex& e, const RatFun& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOperator operator+(const DiffOperator& o) const {
        require_same_context(ctx_, o.ctx_);
        DiffOperator r(*this);
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    DiffOperator operator-(const DiffOperator& o) const {
        require_same_context(ctx_, o.ctx_);
        DiffOperator r(*this);
        for (auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    DiffOperator operator-() const {
        DiffOperator r(ctx_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    DiffOperator scale(const RatFun& s) const {
        DiffOperator r(ctx_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    bool operator==(const DiffOperator& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffOperator& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            const auto& [e, c] = *it;
            if (total_degree(e) == 0) {
                os << c.str();
                continue;
            }
            if (!c.is_one()) {
                std::string cs = c.str();
                if (c.num().terms().size() > 1 && c.is_polynomial()) cs = "(" + cs + ")";
                os << cs << "*";
            }
            os << "D[";
            for (size_t i = 0; i < e.size(); ++i) {
                if (i) os << ",";
                os << e[i];
            }
            os << "]";
        }
        return os.str();
    }

private:
    Ctx ctx_;
    TermMap terms_;
};

// values D^e(g) for every e in `which`, sharing one expansion of g at level M
// (requires p^M > |e| for each e, which makes D^e K^{p^M}-linear)
inline std::map<MultiIndex, RatFun, GrlexLess> apply_dual_all(
    const RatFun& g, const std::vector<MultiIndex>& which, long M) {
    const Ctx& ctx = g.ctx();
    std::map<MultiIndex, RatFun, GrlexLess> out;
    for (auto& e : which) out.emplace(e, RatFun::zero(ctx));
    ExpansionVector v = expand_over_level(g, M);
    Layout lay(ctx, M);
    for (auto& e : which) {
        // reuse the denominator-grouped summation from reassemble
        ExpansionVector shifted{ctx, M, {}};
        for (auto& [idx, c] : v.coords) {
            MultiIndex f = lay.decode(idx);
            long b = multi_binom_mod_p(f, e, ctx->p);
            if (b == 0) continue;
            // D^e(c^{p^M} x^f) = c^{p^M} binom(f,e) x^{f-e}; fold the shift
            // x^{f-e} = x^{f mod-part} ... keep exact: write f-e = r + p^M s
            MultiIndex fe = mi_sub(f, e);
            MultiIndex rr(fe.size()), ss(fe.size());
            for (size_t i = 0; i < fe.size(); ++i) {
                rr[i] = static_cast<int>(fe[i] % lay.q);
                ss[i] = static_cast<int>(fe[i] / lay.q);
            }
            RatFun contrib = c * RatFun::from_poly(Polynomial::monomial(ctx, ss, Fp(1, ctx->p)));
            // the binomial unit is a p^M-th power of itself (Fermat)
            contrib = contrib * RatFun::constant(ctx, b);
            long tgt = lay.index_of(rr);
            auto it = shifted.coords.find(tgt);
            if (it == shifted.coords.end())
                shifted.coords.emplace(tgt, contrib);
            else {
                it->second = it->second + contrib;
                if (it->second.is_zero()) shifted.coords.erase(it);
            }
        }
        out[e] = shifted.reassemble();
    }
    return out;
}

// same, choosing the least valid level per index and sharing expansions
inline std::map<MultiIndex, RatFun, GrlexLess> apply_dual_auto(
    const RatFun& g, const std::vector<MultiIndex>& which) {
    const Ctx& ctx = g.ctx();
    std::map<long, std::vector<MultiIndex>> by_level;
    for (auto& e : which) {
        long M = 1, q = ctx->p;
        while (q <= total_degree(e)) {
            q *= ctx->p;
            ++M;
        }
        by_level[M].push_back(e);
    }
    std::map<MultiIndex, RatFun, GrlexLess> out;
    for (auto& [M, es] : by_level)
        for (auto& [e, val] : apply_dual_all(g, es, M)) out.emplace(e, val);
    return out;
}

// D(g); the expansion level per dual-basis index is minimal and the result
// is independent of that choice (tested)
inline RatFun apply(const DiffOperator& D, const RatFun& g) {
    const Ctx& ctx = D.ctx();
    require_same_context(ctx, g.ctx());
    if (D.is_zero() || g.is_zero()) return RatFun::zero(ctx);
    std::vector<MultiIndex> which;
    for (auto& [e, c] : D.terms()) which.push_back(e);
    auto vals = apply_dual_auto(g, which);
    RatFun r = RatFun::zero(ctx);
    for (auto& [e, c] : D.terms()) r = r + c * vals.at(e);
    return r;
}

// divided-power Leibniz: (f D^a)(g D^b) = sum_{c<=a} binom(a-c+b, b) f D^c(g) D^{a-c+b}
inline DiffOperator compose(const DiffOperator& D, const DiffOperator& E) {
    const Ctx& ctx = D.ctx();
    require_same_context(ctx, E.ctx());
    DiffOperator r(ctx);
    // union of the boxes {c <= a}
    std::map<MultiIndex, bool, GrlexLess> needed;
    for (auto& [a, f] : D.terms()) {
        MultiIndex c = mi_zero(ctx->dim());
        while (true) {
            needed.emplace(c, true);
            int i = 0;
            while (i < ctx->dim()) {
                if (c[i] < a[i]) {
                    ++c[i];
                    break;
                }
                c[i] = 0;
                ++i;
            }
            if (i == ctx->dim()) break;
        }
    }
    std::vector<MultiIndex> subs;
    for (auto& [c, _] : needed) subs.push_back(c);
    for (auto& [b, g] : E.terms()) {
        auto dvals = apply_dual_auto(g, subs);
        for (auto& [a, f] : D.terms()) {
            for (auto& cc : subs) {
                if (!mi_leq(cc, a)) continue;
                long u = multi_binom_mod_p(mi_add(mi_sub(a, cc), b), b, ctx->p);
                if (u == 0) continue;
                const RatFun& dv = dvals.at(cc);
                if (dv.is_zero()) continue;
                RatFun coeff = f * dv * RatFun::constant(ctx, u);
                r.add_term(mi_add(mi_sub(a, cc), b), coeff);
            }
        }
    }
    return r;
}

inline DiffOperator bracket(const DiffOperator& D, const DiffOperator& E) {
    return compose(D, E) - compose(E, D);
}

// p-fold self-composition of a derivation
inline DiffOperator p_power(const DiffOperator& D) {
    if (!D.is_derivation() || !D.constant_term().is_zero())
        fail("not_a_derivation", "p_power needs an order-1 operator killing 1");
    DiffOperator r = D;
    for (long i = 1; i < D.ctx()->p; ++i) r = compose(r, D);
    return r;
}

inline GradedForm<RatFun> leading_form(const DiffOperator& D) {
    if (D.is_zero()) fail("zero_operator", "leading form of the zero operator");
    int ord = D.order();
    GradedForm<RatFun> g(D.ctx()->p, D.ctx()->dim(), ord);
    for (auto& [e, c] : D.terms())
        if (total_degree(e) == ord) g.add_term(e, c);
    return g;
}

// order-j homogeneous slice
inline GradedForm<RatFun> graded_slice(const DiffOperator& D, int j) {
    GradedForm<RatFun> g(D.ctx()->p, D.ctx()->dim(), j);
    for (auto& [e, c] : D.terms())
        if (total_degree(e) == j) g.add_term(e, c);
    return g;
}

}  // namespace ptower
