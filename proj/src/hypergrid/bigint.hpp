#pragma once

// Exact arithmetic helpers shared by every module: GMP integers/rationals,
// a fixed-precision MPFR float for the few places that need certified
// transcendental bounds, and error conventions (invalid_argument = bad
// input / precondition, runtime_error = a verified property failed).

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hypergrid {

using Int = mpz_class;
using Rat = mpq_class;
using BigFloat = boost::multiprecision::mpfr_float_500;

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline Int binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

inline Int binom_big(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int ipow(long base, long exp) {
    require(base >= 0 && exp >= 0, "ipow expects nonnegative arguments");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, (unsigned long)exp);
    return r;
}

inline Int pow2(long exp) { return ipow(2, exp); }

inline Int factorial(long n) {
    require(n >= 0, "factorial of negative");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

// mpq_class(num, den) does not canonicalize; every rational we hand out goes
// through here.
inline Rat make_rat(const Int& num, const Int& den) {
    require(den != 0, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Rat rat_pow(const Rat& base, long exp) {
    require(exp >= 0, "rat_pow expects a nonnegative exponent");
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), (unsigned long)exp);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), (unsigned long)exp);
    return r;
}

// log2 of a positive big integer via bit length plus a 64-bit mantissa.
inline double log2_int(const Int& v) {
    require(v > 0, "log2 of nonpositive integer");
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (bits <= 53) return std::log2(v.get_d());
    Int top = v >> (bits - 53);
    return double(bits - 53) + std::log2(top.get_d());
}

inline double log2_rat(const Rat& v) {
    require(v > 0, "log2 of nonpositive rational");
    return log2_int(v.get_num()) - log2_int(v.get_den());
}

inline std::string int_str(const Int& v) { return v.get_str(); }

inline std::string rat_str(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline BigFloat big_of(const Int& v) { return BigFloat(v.get_str()); }

inline BigFloat big_of(const Rat& v) {
    return big_of(Int(v.get_num())) / big_of(Int(v.get_den()));
}

// Size guards for the exponential-cost verifiers; overridable via environment.
inline long long env_guard(const char* name, long long fallback) {
    const char* s = std::getenv(name);
    if (s == nullptr || *s == '\0') return fallback;
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == nullptr || *end != '\0' || v <= 0) return fallback;
    return v;
}

}  // namespace hypergrid
