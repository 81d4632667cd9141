#pragma once

// Prime field F_p and small extensions F_{p^s}.
//
// Fq elements are residues mod a monic irreducible polynomial in one
// auxiliary symbol T; they only appear when reducing chart data at closed
// points, so s stays tiny (<= 3 in practice).

#include "context.hpp"

#include <vector>

namespace ptower {

struct Fp {
    long v = 0;
    long p = 0;

    Fp() = default;
    Fp(long value, long prime) : p(prime) {
        v = value % p;
        if (v < 0) v += p;
    }

    bool is_zero() const { return v == 0; }

    Fp operator+(const Fp& o) const { return Fp(v + o.v, p); }
    Fp operator-(const Fp& o) const { return Fp(v - o.v, p); }
    Fp operator-() const { return Fp(-v, p); }
    Fp operator*(const Fp& o) const { return Fp(v * o.v, p); }

    Fp inv() const {
        if (v == 0) fail("division_by_zero", "inverse of 0 in F_p");
        long r = 1, b = v, e = p - 2;
        while (e > 0) {
            if (e & 1) r = (r * b) % p;
            b = (b * b) % p;
            e >>= 1;
        }
        return Fp(r, p);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }

    bool operator==(const Fp& o) const { return v == o.v && p == o.p; }
    bool operator!=(const Fp& o) const { return !(*this == o); }
};

inline Fp fp_zero(long p) { return Fp(0, p); }
inline Fp fp_one(long p) { return Fp(1, p); }

// ---------------------------------------------------------------------------
// F_{p^s}: residue polynomials in T modulo a monic irreducible modulus.

struct FqCtx {
    long p;
    std::vector<long> modulus;  // monic, coefficients of 1, T, ..., T^s
    int s() const { return static_cast<int>(modulus.size()) - 1; }
};

using FqCtxPtr = std::shared_ptr<const FqCtx>;

struct Fq {
    FqCtxPtr k;
    std::vector<long> c;  // length s, coefficients of 1, T, ..., T^{s-1}

    Fq() = default;
    Fq(FqCtxPtr ctx, std::vector<long> coeffs) : k(std::move(ctx)), c(std::move(coeffs)) {
        c.resize(k->s(), 0);
        for (auto& x : c) {
            x %= k->p;
            if (x < 0) x += k->p;
        }
    }

    static Fq scalar(const FqCtxPtr& ctx, long v) {
        std::vector<long> cs(ctx->s(), 0);
        cs[0] = v;
        return Fq(ctx, std::move(cs));
    }

    bool is_zero() const {
        for (long x : c)
            if (x) return false;
        return true;
    }

    Fq operator+(const Fq& o) const {
        std::vector<long> r(c);
        for (size_t i = 0; i < r.size(); ++i) r[i] += o.c[i];
        return Fq(k, std::move(r));
    }
    Fq operator-(const Fq& o) const {
        std::vector<long> r(c);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= o.c[i];
        return Fq(k, std::move(r));
    }
    Fq operator-() const {
        std::vector<long> r(c);
        for (auto& x : r) x = -x;
        return Fq(k, std::move(r));
    }

    Fq operator*(const Fq& o) const {
        long p = k->p;
        int s = k->s();
        std::vector<long> prod(2 * s - 1, 0);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + c[i] * o.c[j]) % p;
        // reduce by the monic modulus
        for (int d = 2 * s - 2; d >= s; --d) {
            long lead = prod[d] % p;
            if (lead == 0) continue;
            for (int i = 0; i < s; ++i)
                prod[d - s + i] = ((prod[d - s + i] - lead * k->modulus[i]) % p + p) % p;
            prod[d] = 0;
        }
        prod.resize(s);
        return Fq(k, std::move(prod));
    }

    Fq pow(long e) const {
        Fq r = scalar(k, 1), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Fq inv() const {
        if (is_zero()) fail("division_by_zero", "inverse of 0 in F_q");
        long q = 1;
        for (int i = 0; i < k->s(); ++i) q *= k->p;
        return pow(q - 2);
    }
    Fq operator/(const Fq& o) const { return *this * o.inv(); }

    bool operator==(const Fq& o) const { return c == o.c; }
    bool operator!=(const Fq& o) const { return !(*this == o); }
};

// Monic irreducible of degree s over F_p found by exhaustive search
// (irreducible <=> no root-degree factors up to s/2; s <= 3 means no
// nonconstant factor at all once root-free for s <= 3).
inline bool poly_has_factor_upto(const std::vector<long>& f, long p, int bound);

inline FqCtxPtr make_fq_ctx(long p, int s) {
    if (!is_prime(p)) fail("bad_input", "p must be prime");
    if (s < 1 || s > 6) fail("bad_input", "extension degree out of supported range");
    if (s == 1) return std::make_shared<const FqCtx>(FqCtx{p, {0, 1}});
    // enumerate monic degree-s polynomials by base-p digits of the tail
    long count = 1;
    for (int i = 0; i < s; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        std::vector<long> f(s + 1, 0);
        long c = code;
        for (int i = 0; i < s; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[s] = 1;
        if (!poly_has_factor_upto(f, p, s / 2)) return std::make_shared<const FqCtx>(FqCtx{p, f});
    }
    fail("bad_input", "no irreducible polynomial found");  // unreachable
}

// trial division of a univariate f over F_p by all monic polynomials of
// degree 1..bound
inline bool poly_has_factor_upto(const std::vector<long>& f, long p, int bound) {
    auto mod_by = [&](const std::vector<long>& g) {
        std::vector<long> r(f);
        int dg = static_cast<int>(g.size()) - 1;
        for (int d = static_cast<int>(r.size()) - 1; d >= dg; --d) {
            long lead = r[d] % p;
            if (lead == 0) continue;
            for (int i = 0; i <= dg; ++i)
                r[d - dg + i] = ((r[d - dg + i] - lead * g[i]) % p + p) % p;
        }
        for (long x : r)
            if (x % p != 0) return false;
        return true;  // divisible
    };
    for (int dg = 1; dg <= bound; ++dg) {
        long count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<long> g(dg + 1, 0);
            long c = code;
            for (int i = 0; i < dg; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[dg] = 1;
            if (mod_by(g)) return true;
        }
    }
    return false;
}

// deterministic enumeration of F_{p^s}: index -> element by base-p digits
inline Fq fq_from_index(const FqCtxPtr& k, long idx) {
    std::vector<long> c(k->s(), 0);
    for (int i = 0; i < k->s(); ++i) {
        c[i] = idx % k->p;
        idx /= k->p;
    }
    return Fq(k, std::move(c));
}

}  // namespace ptower
