// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace autprod {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a requested series coefficient lies beyond the tracked
// precision of its operands.  Callers must extend the inputs; the library
// never truncates silently.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when shipped data files are absent or fail their load-time checks.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a mathematical verification fails (an identity that the
// library promises to check does not hold for the given input).
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error("internal check failed: " + msg);
}

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline const Int num(const Rat& r) { return r.get_num(); }
inline const Int den(const Rat& r) { return r.get_den(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// floor(n/d) for the rational r = n/d.
inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline long checked_long(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer too large for long: " + v.get_str());
    return v.get_si();
}

inline long checked_long(const Rat& v) {
    require(is_integer(v), "expected an integer, got " + v.get_str());
    return checked_long(Int(v.get_num()));
}

inline Int ipow(Int base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat qpow(const Rat& base, long e) {
    if (e == 0) return rat(1);
    Rat b = base;
    if (e < 0) {
        require(b != 0, "zero to a negative power");
        b = 1 / b;
        e = -e;
    }
    Rat acc = rat(1);
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    Int z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

// Kronecker symbol (a/n), extending the Jacobi symbol.
inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);
int moebius(long n);
long euler_phi(long n);
long sigma1(long n);

// Ramanujan sum R(a, n) = sum over primitive n-th roots of unity zeta of
// zeta^a; equals sum_{t | gcd(a,n)} t * moebius(n/t).
long ramanujan_sum(long a, long n);

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

std::string rat_str(const Rat& r);

}  // namespace autprod
