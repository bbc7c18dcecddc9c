// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "autprod/numeric.hpp"

namespace autprod {

// Coefficients of the n-th cyclotomic polynomial, constant term first.
// Computed by exact division of x^n - 1 by the lower cyclotomic factors.
const std::vector<Rat>& cyclotomic_polynomial(long n);

// Element of Q(zeta_n), stored reduced modulo the n-th cyclotomic
// polynomial on the basis 1, zeta, ..., zeta^{phi(n)-1}.  Equality of
// reduced coefficient vectors is equality of field elements, so no
// numerical evaluation is ever needed.
class CycQ {
public:
    explicit CycQ(long order = 1);

    static CycQ rational(long order, const Rat& r);
    // zeta_n^k for any integer k.
    static CycQ root(long order, long k);
    // e(t) = exp(2 pi i t) for rational t whose denominator divides order.
    static CycQ e(long order, const Rat& t);

    long order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const;  // requires is_rational()

    // Galois action zeta -> zeta^t, gcd(t, order) = 1.
    CycQ galois(long t) const;
    CycQ conj() const { return galois(-1); }

    CycQ operator-() const;
    CycQ operator+(const CycQ& o) const;
    CycQ operator-(const CycQ& o) const;
    CycQ operator*(const CycQ& o) const;
    CycQ operator*(const Rat& s) const;
    CycQ& operator+=(const CycQ& o);
    bool operator==(const CycQ& o) const;
    bool operator!=(const CycQ& o) const { return !(*this == o); }

    std::string str() const;

private:
    long n_;
    std::vector<Rat> c_;
};

// sqrt(m0) for squarefree m0 >= 1 as an exact element of Q(zeta_n), built
// from quadratic Gauss sums; requires the order to make the square root
// expressible (n divisible by 8 when m0 is even, by p for each odd prime
// p | m0, and by 4 when some p = 3 mod 4 occurs).  The result is verified
// to square to m0.
CycQ cyclotomic_sqrt(long order, long m0);

// Exact scalar of the shape r * i^a * sqrt(rad) with rational r and
// squarefree rad >= 1.  Closed under multiplication; used for the
// automorphy factors of eta quotients and theta functions under S, where
// everything must collapse to a rational number at the end.
struct AlgScalar {
    Rat r;
    int ipow;  // power of i, reduced mod 4
    long rad;  // squarefree radical under the square root

    AlgScalar() : r(0), ipow(0), rad(1) {}
    AlgScalar(const Rat& r_, long ipow_, long rad_);

    static AlgScalar from_rat(const Rat& v) { return AlgScalar(v, 0, 1); }
    static AlgScalar i_power(long k) { return AlgScalar(rat(1), k, 1); }
    static AlgScalar sqrt_int(long n);      // sqrt(n), n >= 1
    static AlgScalar inv_sqrt_int(long n);  // 1/sqrt(n), n >= 1
    // n^(k/2) for integer k of either sign.
    static AlgScalar half_power(long n, long k);

    AlgScalar operator*(const AlgScalar& o) const;
    bool is_zero() const { return r == 0; }
    bool is_rational() const;
    Rat rat_value() const;  // requires is_rational()

    std::string str() const;
};

}  // namespace autprod
