#pragma once

// The commutative graded shadow of the operator algebra: a divided power
// polynomial algebra on d symbols y_i = [d/dx_i]. A basis monomial u_f is
// gamma_{f_1}(y_1)...gamma_{f_d}(y_d); products pick up digit-binomial
// units, computed by Lucas.
//
// Coefficients are generic so the same code runs over K at the generic
// point and over F_{p^s} after reduction at a closed point.

#include "context.hpp"
#include "linalg.hpp"

#include <map>
#include <sstream>

namespace ptower {

template <class F>
class GradedForm {
public:
    using TermMap = std::map<MultiIndex, F, GrlexLess>;

    GradedForm(long p, int dim, int order) : p_(p), dim_(dim), order_(order) {}

    static GradedForm unit(long p, int dim, const F& one) {
        GradedForm g(p, dim, 0);
        g.add_term(mi_zero(dim), one);
        return g;
    }

    long p() const { return p_; }
    int dim() const { return dim_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MultiIndex& e, const F& c) {
        if (c.is_zero()) return;
        if (total_degree(e) != order_) fail("order_mismatch", "inhomogeneous graded term");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GradedForm operator+(const GradedForm& o) const {
        if (order_ != o.order_ && !is_zero() && !o.is_zero())
            fail("order_mismatch", "adding forms of different orders");
        GradedForm r(*this);
        if (r.is_zero()) r.order_ = o.order_;
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    GradedForm operator-() const {
        GradedForm r(p_, dim_, order_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    GradedForm operator-(const GradedForm& o) const { return *this + (-o); }

    GradedForm scale(const F& s) const {
        GradedForm r(p_, dim_, order_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : terms_) {
            F v = c * s;
            if (!v.is_zero()) r.terms_.emplace(e, v);
        }
        return r;
    }

    bool operator==(const GradedForm& o) const {
        if (is_zero() && o.is_zero()) return true;
        return order_ == o.order_ && terms_ == o.terms_;
    }
    bool operator!=(const GradedForm& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& vars) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "[";
            bool any = false;
            for (size_t i = 0; i < it->first.size(); ++i) {
                if (!any && i + 1 == it->first.size() && it->first[i] == 0) {}
                if (it->first[i] == 0) continue;
                if (any) os << ",";
                os << vars[i] << ":" << it->first[i];
                any = true;
            }
            if (!any) os << "1";
            os << "]";
        }
        return os.str();
    }

private:
    long p_;
    int dim_;
    int order_;
    TermMap terms_;
};

// u_a * u_b = prod binom(a_i + b_i, a_i) u_{a+b}
template <class F>
GradedForm<F> graded_mul(const GradedForm<F>& g, const GradedForm<F>& h) {
    GradedForm<F> r(g.p(), g.dim(), g.order() + h.order());
    for (auto& [a, ca] : g.terms())
        for (auto& [b, cb] : h.terms()) {
            long u = multi_binom_mod_p(mi_add(a, b), a, g.p());
            if (u == 0) continue;
            F c = ca * cb;
            for (long i = 1; i < u; ++i) c = c + ca * cb;
            r.add_term(mi_add(a, b), c);
        }
    return r;
}

namespace detail {

// gamma_n(c * u_f) = c^n * N(n,f) * u_{nf}; in the rational model u_f is
// y^f / prod f_i!, so N(n,f) = prod (n f_i)! / (n! * prod (f_i!)^n)
template <class F>
GradedForm<F> gamma_term(long n, const MultiIndex& f, const F& c, long p, int dim) {
    std::vector<long> num, den;
    den.push_back(n);
    for (int x : f) {
        num.push_back(n * x);
        for (long i = 0; i < n; ++i) den.push_back(x);
    }
    long unit = factorial_ratio_mod_p(num, den, p);
    GradedForm<F> r(p, dim, static_cast<int>(n) * total_degree(f));
    if (unit == 0) return r;
    F coeff = c;
    for (long i = 1; i < n; ++i) coeff = coeff * c;
    F total = coeff;
    for (long i = 1; i < unit; ++i) total = total + coeff;
    r.add_term(mi_scale(f, n), total);
    return r;
}

}  // namespace detail

// gamma_n on any form of positive order (axiom 2 across the terms, with the
// single-monomial values from the rational model)
template <class F>
GradedForm<F> gamma_general(long n, const GradedForm<F>& g, const F& one) {
    if (g.order() < 1) fail("order_mismatch", "gamma needs positive order");
    if (n == 0) return GradedForm<F>::unit(g.p(), g.dim(), one);
    std::vector<std::pair<MultiIndex, F>> ts(g.terms().begin(), g.terms().end());
    GradedForm<F> acc(g.p(), g.dim(), static_cast<int>(n) * g.order());
    // sum over compositions n = n_1 + ... + n_k of prod gamma_{n_j}(t_j)
    std::vector<long> parts(ts.size(), 0);
    auto rec = [&](auto&& self, size_t i, long left) -> void {
        if (i + 1 == ts.size()) {
            parts[i] = left;
            GradedForm<F> prod = GradedForm<F>::unit(g.p(), g.dim(), one);
            for (size_t j = 0; j < ts.size(); ++j) {
                if (parts[j] == 0) continue;
                prod = graded_mul(prod, detail::gamma_term(parts[j], ts[j].first,
                                                           ts[j].second, g.p(), g.dim()));
                if (prod.is_zero()) return;
            }
            acc = acc + prod;
            return;
        }
        for (long k = 0; k <= left; ++k) {
            parts[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (!ts.empty()) rec(rec, 0, n);
    return acc;
}

// the spec'd gamma: divided power of an order-1 form
template <class F>
GradedForm<F> gamma(long n, const GradedForm<F>& g, const F& one) {
    if (!(g.order() == 1 || g.is_zero())) fail("order_mismatch", "gamma expects an order-1 form");
    return gamma_general(n, g, one);
}

// divide every index by p^m where possible, drop the rest
template <class F>
GradedForm<F> graded_differential(const GradedForm<F>& g, long m) {
    long q = pow_long(g.p(), m);
    GradedForm<F> r(g.p(), g.dim(), static_cast<int>(g.order() / q));
    for (auto& [e, c] : g.terms()) {
        MultiIndex f(e.size());
        bool ok = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] % q != 0) {
                ok = false;
                break;
            }
            f[i] = static_cast<int>(e[i] / q);
        }
        if (ok) r.add_term(f, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// rank profiles and the avalanche decoder

struct RankProfile {
    std::vector<int> r;  // r_1 >= r_2 >= ... (trailing zeros trimmed)
    int d = 0;
};

// number of monomials prod (G^m_i)^{b} with 0 <= b < p, level-m generators
// counted by profile, of total weight w (weight of level m is p^{m-1})
inline std::vector<long> profile_graded_dims(const RankProfile& prof, long p, long len) {
    std::vector<long> dims(len, 0);
    dims[0] = 1;
    for (size_t m = 0; m < prof.r.size(); ++m) {
        long w = pow_long(p, static_cast<long>(m));
        for (int i = 0; i < prof.r[m]; ++i) {
            std::vector<long> next(dims);
            for (long b = 1; b < p; ++b)
                for (long j = 0; j + b * w < len; ++j)
                    if (dims[j]) next[j + b * w] += dims[j];
            dims = std::move(next);
        }
    }
    return dims;
}

// Recover the generator counts r_m from graded dimensions: at order p^{m-1}
// the dimension splits into new level-m generators plus monomials in the
// generators already found.
inline RankProfile avalanche_decode(const std::vector<long>& graded_dims, long p, int d) {
    if (graded_dims.empty() || graded_dims[0] != 1)
        fail("not_decodable", "graded dimensions must start with 1 at order 0");
    long len = static_cast<long>(graded_dims.size());
    RankProfile prof;
    prof.d = d;
    for (long w = 1; w < len; w *= p) {
        auto known = profile_graded_dims(prof, p, w + 1);
        long rm = graded_dims[w] - known[w];
        if (rm < 0) fail("not_decodable", "dimension drop below monomial count");
        prof.r.push_back(static_cast<int>(rm));
    }
    while (!prof.r.empty() && prof.r.back() == 0) prof.r.pop_back();
    for (size_t m = 0; m < prof.r.size(); ++m) {
        if (prof.r[m] > d || (m > 0 && prof.r[m] > prof.r[m - 1]))
            fail("not_decodable", "profile not nonincreasing within ambient rank");
    }
    auto regen = profile_graded_dims(prof, p, len);
    for (long j = 0; j < len; ++j)
        if (regen[j] != graded_dims[j])
            fail("not_decodable", "graded dimensions are not of distinguished shape");
    return prof;
}

// sorted tuple (a_1 <= ... <= a_d): d - r_1 zeros, r_v - r_{v+1} entries v
inline std::vector<int> profile_to_tuple(const RankProfile& prof) {
    std::vector<int> tuple;
    int prev = prof.d;
    for (size_t v = 0; v < prof.r.size(); ++v) {
        for (int i = 0; i < prev - prof.r[v]; ++i) tuple.push_back(static_cast<int>(v));
        prev = prof.r[v];
    }
    for (int i = 0; i < prev; ++i) tuple.push_back(static_cast<int>(prof.r.size()));
    return tuple;
}

}  // namespace ptower
