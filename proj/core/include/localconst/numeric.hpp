#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>

namespace lc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline long gcd_l(long a, long b) { return std::gcd(a, b); }
inline long lcm_l(long a, long b) { return std::lcm(a, b); }

inline long mod_l(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long mul_mod(long a, long b, long m) {
    return static_cast<long>((static_cast<__int128>(a) * b) % m);
}

inline long pow_mod(long base, long exp, long m) {
    long r = 1 % m;
    base = mod_l(base, m);
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Inverse of a mod m, gcd(a, m) = 1.
inline long inv_mod(long a, long m) {
    long t = 0, nt = 1, r = m, nr = mod_l(a, m);
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return mod_l(t, m);
}

inline bool is_prime_l(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// n = p^s with p prime, s >= 1; returns {p, s} or {0, 0}.
struct PrimePower {
    long p = 0;
    long s = 0;
    explicit operator bool() const { return p != 0; }
};

inline PrimePower as_prime_power(long n) {
    if (n < 2) return {};
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            long s = 0;
            while (n % d == 0) {
                n /= d;
                ++s;
            }
            return n == 1 ? PrimePower{d, s} : PrimePower{};
        }
    }
    return {n, 1};
}

inline Int int_pow(Int base, long exp) {
    Int r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, long exp) {
    if (exp >= 0)
        return Rat(int_pow(boost::multiprecision::numerator(base), exp),
                   int_pow(boost::multiprecision::denominator(base), exp));
    return Rat(int_pow(boost::multiprecision::denominator(base), -exp),
               int_pow(boost::multiprecision::numerator(base), -exp));
}

// p-adic valuation of a nonzero rational.
inline long val_p(const Rat& x, long p) {
    if (x == 0) return 0;  // by convention; callers guard
    long v = 0;
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

// The prime-to-p unit of x reduced mod p^k: x = u * p^{val_p(x)} with u a
// p-adic unit; returns the integer u mod p^k.
inline long unit_part_mod(const Rat& x, long p, long pk) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    long nn = static_cast<long>(n % pk);
    long dd = static_cast<long>(d % pk);
    nn = mod_l(nn, pk);
    dd = mod_l(dd, pk);
    return mul_mod(nn, inv_mod(dd, pk), pk);
}

}  // namespace lc
