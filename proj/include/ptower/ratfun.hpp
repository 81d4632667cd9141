#pragma once

// Exact elements of K = F_p(x_1,...,x_d), stored as reduced fractions with
// a monic (graded-lex) denominator, so equal values compare bit-equal.

#include "polynomial.hpp"

namespace ptower {

class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Ctx ctx)
        : num_(Polynomial::zero(ctx)), den_(Polynomial::constant(ctx, 1)) {}

    RatFun(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RatFun zero(const Ctx& ctx) { return RatFun(ctx); }
    static RatFun one(const Ctx& ctx) { return from_poly(Polynomial::constant(ctx, 1)); }
    static RatFun constant(const Ctx& ctx, long c) {
        return from_poly(Polynomial::constant(ctx, c));
    }
    static RatFun variable(const Ctx& ctx, int i) {
        return from_poly(Polynomial::variable(ctx, i));
    }
    static RatFun from_poly(Polynomial f) {
        Ctx c = f.ctx();
        return RatFun(std::move(f), Polynomial::constant(c, 1));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const Ctx& ctx() const { return num_.ctx(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == den_; }
    bool is_polynomial() const { return den_.is_constant(); }

    // Henrici-style add/mul: only gcds against the small common parts, and
    // the cross-reduced results need no full renormalization.
    RatFun operator+(const RatFun& o) const { return add_signed(o, false); }
    RatFun operator-(const RatFun& o) const { return add_signed(o, true); }
    RatFun operator-() const {
        RatFun r(*this);
        r.num_ = -r.num_;
        return r;
    }

    RatFun operator*(const RatFun& o) const {
        if (is_zero() || o.is_zero()) return zero(ctx());
        Polynomial g1 = poly_gcd(num_, o.den_);
        Polynomial g2 = poly_gcd(o.num_, den_);
        RatFun r(ctx());
        r.num_ = num_.divide_exact(g1) * o.num_.divide_exact(g2);
        r.den_ = den_.divide_exact(g2) * o.den_.divide_exact(g1);
        r.make_monic();
        return r;
    }

    RatFun operator/(const RatFun& o) const {
        if (o.is_zero()) fail("division_by_zero", "rational function division by 0");
        RatFun oi(ctx());
        oi.num_ = o.den_;
        oi.den_ = o.num_;
        oi.make_monic();
        return *this * oi;
    }

    RatFun inv() const { return one(ctx()) / *this; }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    // f^{p^m}; coefficients are fixed by Frobenius since F_p is perfect
    RatFun frobenius(long m) const {
        RatFun r(*this);
        r.num_ = num_.frobenius(m);
        r.den_ = den_.frobenius(m);
        return r;  // reduced & monic stays reduced & monic
    }

    bool frobenius_root_exists(long m) const {
        return num_.frobenius_root_exists(m) && den_.frobenius_root_exists(m);
    }

    RatFun frobenius_root(long m) const {
        RatFun r(*this);
        r.num_ = num_.frobenius_root(m);
        r.den_ = den_.frobenius_root(m);
        return r;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        std::string n = num_.str(), d = den_.str();
        if (num_.terms().size() > 1) n = "(" + n + ")";
        if (den_.terms().size() > 1) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    Polynomial num_, den_;

    void make_monic() {
        Fp lc = den_.leading_coefficient();
        if (lc.v != 1) {
            Fp s = lc.inv();
            num_ = num_ * s;
            den_ = den_ * s;
        }
    }

    void normalize() {
        if (den_.is_zero()) fail("division_by_zero", "rational function with denominator 0");
        if (num_.is_zero()) {
            den_ = Polynomial::constant(ctx(), 1);
            return;
        }
        if (!den_.is_constant()) {
            Polynomial g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = num_.divide_exact(g);
                den_ = den_.divide_exact(g);
            }
        }
        make_monic();
    }

    RatFun add_signed(const RatFun& o, bool minus) const {
        require_same_context(ctx(), o.ctx());
        if (is_zero()) return minus ? -o : o;
        if (o.is_zero()) return *this;
        Polynomial g = poly_gcd(den_, o.den_);
        RatFun r(ctx());
        if (g.is_constant()) {
            // coprime denominators: the sum is already reduced
            r.num_ = minus ? num_ * o.den_ - o.num_ * den_ : num_ * o.den_ + o.num_ * den_;
            r.den_ = den_ * o.den_;
            if (r.num_.is_zero()) return zero(ctx());
            r.make_monic();
            return r;
        }
        Polynomial d1 = den_.divide_exact(g), d2 = o.den_.divide_exact(g);
        Polynomial t = minus ? num_ * d2 - o.num_ * d1 : num_ * d2 + o.num_ * d1;
        if (t.is_zero()) return zero(ctx());
        return reduce_over(std::move(t), d1 * o.den_, std::move(g));
    }

public:
    // N / D with D known to factor through `pool` (every irreducible of
    // gcd(N, D) divides pool); all gcds stay against small polynomials
    static RatFun reduce_over(Polynomial N, Polynomial D, Polynomial pool) {
        RatFun r(N.ctx());
        if (N.is_zero()) return r;
        while (!pool.is_constant()) {
            Polynomial h = poly_gcd(N, pool);
            if (h.is_constant()) break;
            N = N.divide_exact(h);
            D = D.divide_exact(h);
            pool = poly_gcd(h, D);
        }
        r.num_ = std::move(N);
        r.den_ = std::move(D);
        r.make_monic();
        return r;
    }
};

}  // namespace ptower
