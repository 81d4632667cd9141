#pragma once

// Shared arithmetic context: the prime p and the ambient variable names
// x_1,...,x_d of K = F_p(x_1,...,x_d). Every value type carries a Ctx so
// that mixed-context arithmetic can be rejected early.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptower {

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

struct Context {
    long p;
    std::vector<std::string> vars;
    int dim() const { return static_cast<int>(vars.size()); }
};

using Ctx = std::shared_ptr<const Context>;

inline Ctx make_context(long p, std::vector<std::string> vars) {
    if (!is_prime(p)) fail("bad_input", "characteristic must be prime, got " + std::to_string(p));
    if (vars.empty()) fail("bad_input", "need at least one variable");
    return std::make_shared<const Context>(Context{p, std::move(vars)});
}

inline bool same_context(const Ctx& a, const Ctx& b) {
    return a == b || (a->p == b->p && a->vars == b->vars);
}

inline void require_same_context(const Ctx& a, const Ctx& b) {
    if (!same_context(a, b)) fail("bad_input", "mixed arithmetic contexts");
}

// ---------------------------------------------------------------------------
// Multi-indices (exponent tuples of length d)

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& e) {
    int t = 0;
    for (int c : e) t += c;
    return t;
}

// Graded lexicographic order with the declared variable order, x_1 largest.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int ta = total_degree(a), tb = total_degree(b);
    if (ta != tb) return ta < tb;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// componentwise a - b; caller guarantees non-negativity where it matters
inline MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool mi_leq(const MultiIndex& a, const MultiIndex& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline MultiIndex mi_scale(const MultiIndex& a, long s) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<int>(a[i] * s);
    return r;
}

inline MultiIndex mi_zero(int d) { return MultiIndex(d, 0); }

inline MultiIndex mi_unit(int d, int i) {
    MultiIndex r(d, 0);
    r[i] = 1;
    return r;
}

// ---------------------------------------------------------------------------
// Binomials mod p (Lucas) and factorial-ratio units

inline long binom_mod_p(long n, long k, long p) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    while (n > 0 || k > 0) {
        long nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // small digit binomial
        long c = 1;
        for (long i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
        r = (r * (c % p)) % p;
        n /= p;
        k /= p;
    }
    return r;
}

inline long multi_binom_mod_p(const MultiIndex& n, const MultiIndex& k, long p) {
    long r = 1;
    for (size_t i = 0; i < n.size(); ++i) {
        r = (r * binom_mod_p(n[i], k[i], p)) % p;
        if (r == 0) return 0;
    }
    return r;
}

// p-adic valuation of n!
inline long factorial_valuation(long n, long p) {
    long v = 0;
    for (long q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break;
    }
    return v;
}

// unit part of n! mod p, i.e. (n! / p^{v_p(n!)}) mod p
inline long factorial_unit_mod_p(long n, long p) {
    long r = 1;
    while (n > 0) {
        for (long i = 1; i <= n % p; ++i) r = (r * i) % p;
        long blocks = n / p;
        // (p-1)! == -1 (mod p), Wilson
        if (blocks % 2 == 1 && p != 2) r = (r * (p - 1)) % p;
        n = blocks;
    }
    return r;
}

// (prod num_i!) / (prod den_i!) mod p, assuming the ratio is an integer.
// Returns 0 when p divides the ratio.
inline long factorial_ratio_mod_p(const std::vector<long>& num, const std::vector<long>& den, long p) {
    long val = 0, unum = 1, uden = 1;
    for (long n : num) {
        val += factorial_valuation(n, p);
        unum = (unum * factorial_unit_mod_p(n, p)) % p;
    }
    for (long n : den) {
        val -= factorial_valuation(n, p);
        uden = (uden * factorial_unit_mod_p(n, p)) % p;
    }
    if (val < 0) fail("bad_input", "factorial ratio is not an integer");
    if (val > 0) return 0;
    // unum / uden mod p
    long inv = 1, base = uden % p, e = p - 2;
    while (e > 0) {
        if (e & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return (unum * inv) % p;
}

inline long pow_long(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace ptower
