#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatz {

using Int = mpz_class;
using Rat = mpq_class;

// 2-adic valuation of a nonzero integer.
inline unsigned long v2(const Int& n) {
    if (n == 0) throw std::domain_error("valuation of zero undefined");
    return mpz_scan1(n.get_mpz_t(), 0);
}

inline unsigned long v2(unsigned long long n) {
    if (n == 0) throw std::domain_error("valuation of zero undefined");
    unsigned long k = 0;
    while (!(n & 1)) { n >>= 1; ++k; }
    return k;
}

// 2-adic valuation of a rational with odd denominator.
inline long v2q(const Rat& q) {
    if (q == 0) throw std::domain_error("valuation of zero undefined");
    if (mpz_even_p(q.get_den().get_mpz_t()))
        throw std::domain_error("2-adic valuation needs an odd denominator");
    return static_cast<long>(v2(q.get_num()));
}

inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Int pow3(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
    return r;
}

inline Int ipow(unsigned long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

// floor(log2(3^e)) = bitlength(3^e) - 1, exact.
inline long floor_log2_pow3(unsigned long e) {
    Int t = pow3(e);
    return static_cast<long>(mpz_sizeinbase(t.get_mpz_t(), 2)) - 1;
}

// x with a*x == 1 (mod 2^e); a must be odd.
inline Int mod_inverse_pow2(const Int& a, unsigned long e) {
    if (mpz_even_p(a.get_mpz_t())) throw std::domain_error("not invertible");
    Int m = pow2(e), r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("not invertible");
    return r;
}

inline Int mod_pow2(const Int& a, unsigned long e) {
    Int r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

// Exact decimal rendering of a rational, truncated toward zero.
inline std::string decimal_string(const Rat& q, int digits) {
    Rat a = q;
    std::string sign;
    if (a < 0) { sign = "-"; a = -a; }
    Int ip = a.get_num() / a.get_den();
    Int rem = a.get_num() - ip * a.get_den();
    std::string out = sign + ip.get_str() + ".";
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        Int d = rem / a.get_den();
        rem -= d * a.get_den();
        out += d.get_str();
    }
    return out;
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace collatz
