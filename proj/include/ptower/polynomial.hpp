#pragma once

// Sparse multivariate polynomials over F_p. Terms are kept in a map under
// graded lex, so the leading term is the last entry and renderings are
// deterministic. gcd is the primitive PRS, which is all that desk-scale
// inputs need.

#include "context.hpp"
#include "fp.hpp"

#include <map>
#include <sstream>
#include <string>

namespace ptower {

class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Fp, GrlexLess>;

    Polynomial() = default;
    explicit Polynomial(Ctx ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(const Ctx& ctx) { return Polynomial(ctx); }

    static Polynomial constant(const Ctx& ctx, long c) {
        Polynomial r(ctx);
        r.add_term(mi_zero(ctx->dim()), Fp(c, ctx->p));
        return r;
    }

    static Polynomial monomial(const Ctx& ctx, const MultiIndex& e, Fp c) {
        Polynomial r(ctx);
        r.add_term(e, c);
        return r;
    }

    static Polynomial variable(const Ctx& ctx, int i) {
        return monomial(ctx, mi_unit(ctx->dim(), i), fp_one(ctx->p));
    }

    const Ctx& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    int degree() const {  // total degree, -1 for 0
        if (terms_.empty()) return -1;
        return total_degree(terms_.rbegin()->first);
    }

    int degree_in(int var) const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    const MultiIndex& leading_monomial() const {
        if (terms_.empty()) fail("bad_input", "leading monomial of 0");
        return terms_.rbegin()->first;
    }
    Fp leading_coefficient() const {
        if (terms_.empty()) return fp_zero(ctx_->p);
        return terms_.rbegin()->second;
    }

    void add_term(const MultiIndex& e, const Fp& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        require_same_context(ctx_, o.ctx_);
        Polynomial r(*this);
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        require_same_context(ctx_, o.ctx_);
        Polynomial r(*this);
        for (auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r(ctx_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        require_same_context(ctx_, o.ctx_);
        Polynomial r(ctx_);
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) r.add_term(mi_add(e1, e2), c1 * c2);
        return r;
    }

    Polynomial operator*(const Fp& s) const {
        Polynomial r(ctx_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // exact division; fails if the division leaves a remainder
    Polynomial divide_exact(const Polynomial& g) const {
        require_same_context(ctx_, g.ctx_);
        if (g.is_zero()) fail("division_by_zero", "polynomial division by 0");
        Polynomial r(*this), q(ctx_);
        Fp glc_inv = g.leading_coefficient().inv();
        const MultiIndex& glm = g.leading_monomial();
        while (!r.is_zero()) {
            const MultiIndex& rlm = r.leading_monomial();
            if (!mi_leq(glm, rlm)) fail("bad_input", "inexact polynomial division");
            Fp qc = r.leading_coefficient() * glc_inv;
            MultiIndex qe = mi_sub(rlm, glm);
            q.add_term(qe, qc);
            r = r - g * monomial(ctx_, qe, qc);
        }
        return q;
    }

    bool divides(const Polynomial& f) const {
        if (is_zero()) return f.is_zero();
        Polynomial r(f);
        const MultiIndex& glm = leading_monomial();
        Fp glc_inv = leading_coefficient().inv();
        while (!r.is_zero()) {
            const MultiIndex& rlm = r.leading_monomial();
            if (!mi_leq(glm, rlm)) return false;
            Fp qc = r.leading_coefficient() * glc_inv;
            r = r - *this * monomial(ctx_, mi_sub(rlm, glm), qc);
        }
        return true;
    }

    // scale so the graded-lex leading coefficient is 1
    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * leading_coefficient().inv();
    }

    // f(x) -> f with every exponent multiplied by p^m (== f^{p^m} over F_p)
    Polynomial frobenius(long m) const {
        long q = 1;
        for (long i = 0; i < m; ++i) q *= ctx_->p;
        Polynomial r(ctx_);
        for (auto& [e, c] : terms_) r.terms_.emplace(mi_scale(e, q), c);
        return r;
    }

    bool frobenius_root_exists(long m) const {
        long q = pow_long(ctx_->p, m);
        for (auto& [e, c] : terms_)
            for (int x : e)
                if (x % q != 0) return false;
        return true;
    }

    Polynomial frobenius_root(long m) const {
        long q = pow_long(ctx_->p, m);
        Polynomial r(ctx_);
        for (auto& [e, c] : terms_) {
            MultiIndex f(e.size());
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] % q != 0) fail("not_a_power", "exponent not divisible by p^m");
                f[i] = static_cast<int>(e[i] / q);
            }
            r.terms_.emplace(f, c);
        }
        return r;
    }

    std::string str() const;

private:
    Ctx ctx_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// gcd via primitive pseudo-remainder sequences

namespace detail {

// view of f as a univariate polynomial in variable `var` with Polynomial
// coefficients (none of which involve `var`)
inline std::vector<Polynomial> coefficients_in(const Polynomial& f, int var) {
    std::vector<Polynomial> cs(static_cast<size_t>(f.degree_in(var) + 1), Polynomial(f.ctx()));
    for (auto& [e, c] : f.terms()) {
        MultiIndex rest = e;
        int d = rest[var];
        rest[var] = 0;
        cs[d].add_term(rest, c);
    }
    return cs;
}

inline Polynomial from_coefficients(const std::vector<Polynomial>& cs, int var, const Ctx& ctx) {
    Polynomial f(ctx);
    for (size_t d = 0; d < cs.size(); ++d) {
        for (auto& [e, c] : cs[d].terms()) {
            MultiIndex full = e;
            full[var] = static_cast<int>(d);
            f.add_term(full, c);
        }
    }
    return f;
}

inline int pick_variable(const Polynomial& a, const Polynomial& b) {
    for (int i = a.ctx()->dim() - 1; i >= 0; --i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) return i;
    return -1;
}

}  // namespace detail

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial content_in(const Polynomial& f, int var) {
    auto cs = coefficients_in(f, var);
    Polynomial g(f.ctx());
    for (auto& c : cs) g = poly_gcd(g, c);
    return g;
}

// pseudo remainder of a by b with respect to `var`, with content stripped
// after every elimination step so coefficient degrees stay bounded (only the
// primitive part matters to the PRS)
inline Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int var) {
    const Ctx& ctx = a.ctx();
    auto bc = coefficients_in(b, var);
    int db = static_cast<int>(bc.size()) - 1;
    Polynomial blead = bc[db];
    Polynomial r = a;
    while (true) {
        int dr = r.degree_in(var);
        if (r.is_zero() || dr < db) return r;
        auto rc = coefficients_in(r, var);
        Polynomial rlead = rc[dr];
        // r <- blead * r - rlead * x^(dr-db) * b
        MultiIndex shift = mi_zero(ctx->dim());
        shift[var] = dr - db;
        r = r * blead - b * Polynomial::monomial(ctx, shift, fp_one(ctx->p)) * rlead;
        if (!r.is_zero()) {
            Polynomial c = content_in(r, var);
            if (!c.is_constant()) r = r.divide_exact(c);
        }
    }
}

}  // namespace detail

namespace detail {

// componentwise-min exponent shared by every term
inline MultiIndex monomial_content(const Polynomial& f) {
    MultiIndex m = f.terms().begin()->first;
    for (auto& [e, c] : f.terms())
        for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

}  // namespace detail

inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.ctx(), 1);

    // split off the shared monomial factor cheaply
    MultiIndex ma = detail::monomial_content(a), mb = detail::monomial_content(b);
    MultiIndex shared(ma.size());
    bool nontrivial = false;
    for (size_t i = 0; i < ma.size(); ++i) {
        shared[i] = std::min(ma[i], mb[i]);
        if (ma[i] || mb[i]) nontrivial = true;
    }
    if (nontrivial) {
        const Ctx& ctx = a.ctx();
        Polynomial mono = Polynomial::monomial(ctx, shared, fp_one(ctx->p));
        Polynomial a0 = a.divide_exact(Polynomial::monomial(ctx, ma, fp_one(ctx->p)));
        Polynomial b0 = b.divide_exact(Polynomial::monomial(ctx, mb, fp_one(ctx->p)));
        if (a0.is_constant() || b0.is_constant()) return mono.monic();
        return (mono * poly_gcd(a0, b0)).monic();
    }

    int var = detail::pick_variable(a, b);
    if (var < 0) return Polynomial::constant(a.ctx(), 1);

    Polynomial ca = detail::content_in(a, var);
    Polynomial cb = detail::content_in(b, var);
    Polynomial cg = poly_gcd(ca, cb);
    Polynomial pa = a.divide_exact(ca);
    Polynomial pb = b.divide_exact(cb);

    if (pa.degree_in(var) == 0 || pb.degree_in(var) == 0) {
        // one primitive part does not involve var at all, so the gcd of the
        // primitive parts is a unit
        return cg.monic();
    }

    Polynomial r0 = pa, r1 = pb;
    if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
    while (true) {
        Polynomial r2 = detail::pseudo_rem(r0, r1, var);
        if (r2.is_zero()) break;
        Polynomial c2 = detail::content_in(r2, var);
        r2 = r2.divide_exact(c2);
        r0 = r1;
        r1 = r2;
        if (r1.degree_in(var) == 0) return cg.monic();
    }
    return (cg * r1.divide_exact(detail::content_in(r1, var))).monic();
}

// ---------------------------------------------------------------------------
// rendering: "x^2*y + 1" with terms in descending graded lex

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool unit_coeff = (c.v == 1) && total_degree(e) > 0;
        bool any = false;
        if (!unit_coeff) {
            os << c.v;
            any = true;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any) os << "*";
            os << ctx_->vars[i];
            if (e[i] > 1) os << "^" << e[i];
            any = true;
        }
    }
    return os.str();
}

// evaluate at a point with coordinates in F_{p^s}
inline Fq poly_eval(const Polynomial& f, const std::vector<Fq>& pt) {
    if (pt.empty()) fail("bad_input", "empty evaluation point");
    const FqCtxPtr& k = pt[0].k;
    Fq r = Fq::scalar(k, 0);
    for (auto& [e, c] : f.terms()) {
        Fq t = Fq::scalar(k, c.v);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * pt[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

}  // namespace ptower
