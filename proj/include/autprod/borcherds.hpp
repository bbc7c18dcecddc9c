// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "autprod/jmap.hpp"

namespace autprod {

// Truncation box for two-variable expansions: stored s-exponents run up to
// s_max and stored q-exponents up to q_max, both inclusive.  Every entry
// phi_d of the input tuple must be known to q-precision at least
// ceil((q_max * s_max + ceil|A| + 1) / d^2); expansions raise PrecisionError
// otherwise instead of silently truncating.
struct FJBox {
    long q_max = 0;
    long s_max = 0;
};

// Leading monomial q^A zeta^B s^C of the Borcherds lift of a tuple:
//   A = (1/24) sum_l phi_N(0, l)
//   B = (1/2) sum_{l > 0} phi_N(0, l) l         (dual coordinates)
//   C = A - sum_{n > 0} sigma_1(n) sum_l phi_N(-n, l)
// For rk L >= 1 the alternative formula C = (1/rk L) sum_{l>0} phi_N(0,l)(l,l)
// is evaluated too and a mismatch raises VerifyError.  A dual vector l is
// positive when its first nonzero canonical coordinate is positive.
struct WeylVector {
    Rat A;
    std::vector<Rat> B;
    Rat C;
};
WeylVector weyl_vector(const JacobiTuple& tuple);

// Weight of the lift, (1/2N) sum_{d|N} euler_phi(N/d) phi_d(0,0), asserted
// equal to (1/2) sum_{d|N} mult_d(0,0).
Rat product_weight(const JacobiTuple& tuple);

// Exponents of the product form of the lift.  A triple (n, l, m) is positive
// when m > 0, or m = 0 and n > 0, or m = n = 0 and l < 0, and its exponent is
//   mult(n, l, m) = sum mu(b)/(bd) phi_d(nm/(bd)^2, l/(bd))
// over pairs b, d > 0 with bd | n, bd | m, l/(bd) in L' and bd | N.  The
// per-divisor regrouping is mult_d(x, l) = (1/d) sum_{t|d} mu(d/t) phi_t(x, l).
// Factors with m > 0 and n < 0 arise from principal parts of the phi_d; they
// are confined to n >= -N since mult vanishes once nm drops below every
// entry's valuation.
class MultTable {
public:
    struct Entry {
        long n;
        DualVec l;  // dual coordinates of L
        long m;
        Rat value;
    };

    MultTable(const JacobiTuple& tuple, FJBox box);

    const JacobiTuple& tuple() const { return tuple_; }
    FJBox box() const { return box_; }
    // mult_d as a Jacobi series in (x, l); defined for every d | N.
    const JacobiSeries& row(long d) const;
    Rat mult_d(long d, long x, const DualVec& l) const;
    Rat mult(long n, const DualVec& l, long m) const;
    // All positive triples inside the box with nonzero exponent, ordered by
    // (m, n, l).
    const std::vector<Entry>& entries() const { return entries_; }
    bool all_integral() const { return offenders_.empty(); }
    // Entries with non-integral exponent, capped at a handful.
    const std::vector<Entry>& offenders() const { return offenders_; }

private:
    JacobiTuple tuple_;
    FJBox box_;
    std::map<long, JacobiSeries> rows_;
    std::vector<Entry> entries_;
    std::vector<Entry> offenders_;
};

// Leading Fourier-Jacobi coefficient of the lift as an eta/theta quotient,
//   theta_F = prod_{d|N} eta(d tau)^{mult_d(0,0)}
//             prod_{l>0} (theta(d tau, d(l,z)) / eta(d tau))^{mult_d(0,l)},
// expanded to q-precision qprec.  Its q-valuation reproduces A and its
// character valuation reproduces B.  Exponents must be integers (for l = 0
// as well, since eta carries a 24th root of unity); violations raise
// VerifyError.  Negative exponents at l != 0 would leave the character
// polynomial ring and are rejected the same way.
JacobiSeries theta_f(const JacobiTuple& tuple, const Rat& qprec);

// Index-raising Hecke operator away from t on a Jacobi form of weight k and
// trivial character:
//   (phi | T^-(m))(n, l) = sum_{a | (n,l,m), (a,t) = 1} a^(k-1) phi(nm/a^2, l/a)
// where a | (n,l,m) means a | n, a | m, l/a in L'.  The result has index
// L(m) and q-precision floor(prec(phi)/m); it is assembled by pushing every
// stored monomial of phi forward, which keeps principal parts intact.
JacobiSeries hecke_minus(const JacobiSeries& phi, long k, long m, long t);

// One expansion of a Borcherds lift: coeffs[m] is the coefficient of s^m,
// a Jacobi series that carries the q^A zeta^B prefactor of the Weyl vector.
// Slices exist for C <= m <= s_max and store q-exponents up to q_max.
struct FJProduct {
    WeylVector weyl;
    Rat weight;
    FJBox box;
    std::map<long, JacobiSeries> coeffs;

    // Machine format: weyl and weight lines, then one record "m n l... value"
    // per monomial in canonical order, exponents as exact rationals.
    std::string dump() const;
    std::string str(const Lattice* K = nullptr) const;
};

// Three independent routes to the same expansion:
//   expand_product multiplies the literal factors (1 - q^n zeta^l s^m)^mult
//   behind the prefactor q^A zeta^B s^C, cascading binomials per (n, m);
//   expand_exp evaluates q^A zeta^B s^C prod exp(-sum_a phi_a(nm,l) x^a / a)
//   with phi_a = phi_{gcd(a,N)}, exponentiating along the s-grading;
//   expand_fj evaluates theta_F s^C exp(-sum_{d|N} G(phi_d / d)(dZ)) where
//   G(phi)(Z) = sum_{m >= 1} (phi | T^-_{N/d}(m)) s^m at weight 0, deriving
//   the prefactor from the eta/theta valuations instead of weyl_vector.
// expand_exp requires phi_d(0, l) = 0 for l != 0: a nonzero value there
// feeds the exponential a log term with unbounded character support, and
// such inputs are rejected with VerifyError (no shipped tuple has them).
FJProduct expand_product(const JacobiTuple& tuple, FJBox box);
FJProduct expand_exp(const JacobiTuple& tuple, FJBox box);
FJProduct expand_fj(const JacobiTuple& tuple, FJBox box);

// Empty string when the two expansions agree on the overlap of their boxes,
// otherwise a description of the first differing monomial.
std::string first_difference(const FJProduct& a, const FJProduct& b);

// Runs all three expansions and raises VerifyError naming the first
// differing monomial on any mismatch.  Returns the product-form result.
FJProduct expand_checked(const JacobiTuple& tuple, FJBox box);

// Whether every stored monomial q^n zeta^l s^m satisfies 2nm = (l, l), the
// support constraint of singular weight.  On failure *offender, when given,
// receives the first violating monomial.
bool singular_support(const FJProduct& P, const Lattice& L,
                      std::string* offender = nullptr);

// Multiplicity of the rational quadratic divisor lambda^perp for primitive
// lambda = (n, l, m) in U + L' of positive norm lambda^2 = 2nm + (l, l):
//   (1/N) sum_{d|N} euler_phi(N/d) sum_{a >= 1} phi_d[coset a l, disc -a^2 lambda^2 / 2]
// where phi_d[gamma, D] is the coefficient at character coset gamma and
// hyperbolic discriminant D, read at a shortest representative of gamma so
// that the q-exponent stays within stored precision.  The a-summation stops
// at depth or when the discriminant falls below every entry's support.
// Non-primitive or non-positive-norm lambda raise invalid_argument.
Rat divisor_multiplicity(const JacobiTuple& tuple, long n, const DualVec& l,
                         long m, long depth = 16);

// Additive lift of integral weight k >= 1 of a tuple, as Fourier-Jacobi
// slices: coeffs[m] = sum_{d | (m, N)} d^(k-1) (phi_d | T^-_{N/d}(m/d))(dZ)
// for m >= 1, and the m = 0 slice collects the geometric series
//   sum over d of d^(k-1) sum_{(n,l) > 0} sum_{a | (n,l), (a, N/d) = 1}
//   a^(k-1) phi_d(0, l/a) q^n zeta^l scaled by d,
// leaving out the Eisenstein constant term, which is reported through
// constant_unresolved rather than being guessed.
struct AdditiveLift {
    FJBox box;
    std::map<long, JacobiSeries> coeffs;
    bool constant_unresolved = true;
};
AdditiveLift additive_lift(const JacobiTuple& tuple, long k, FJBox box);

}  // namespace autprod
