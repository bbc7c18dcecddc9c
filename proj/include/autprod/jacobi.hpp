// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "autprod/lattice.hpp"
#include "autprod/qseries.hpp"

namespace autprod {

// Polynomial in lattice characters zeta^l, keyed by dual coordinates.  Keys
// are compared lexicographically, so iteration order is deterministic.
using ZPoly = std::map<DualVec, Rat>;

// Truncated series sum c(n,l) q^n zeta^l with exact rational coefficients.
// q-exponents are numerators over `qden` as in QSeries.  The character keys
// l live in (1/zden) L' and are stored scaled by `zden`, which lets theta
// quotients with half-integral shifts share one representation.  Precision
// semantics match QSeries: `prec` is the largest q-exponent numerator up to
// which all coefficients are guaranteed, and propagates pessimistically.
class JacobiSeries {
public:
    static constexpr long INF_PREC = QSeries::INF_PREC;

    explicit JacobiSeries(int zrank = 0, long qden = 1, long prec_num = INF_PREC, long zden = 1)
        : zrank_(zrank), qden_(qden), zden_(zden), prec_(prec_num) {
        require(zrank >= 0 && qden >= 1 && zden >= 1, "bad JacobiSeries parameters");
    }

    static JacobiSeries zero(int zrank, long qden = 1, long prec_num = INF_PREC) {
        return JacobiSeries(zrank, qden, prec_num);
    }
    static JacobiSeries one(int zrank);
    // coeff * q^qexp * zeta^zexp with zexp in dual coordinates (entries may
    // have small denominators; zden is chosen to clear them).
    static JacobiSeries monomial(int zrank, const Rat& coeff, const Rat& qexp,
                                 const std::vector<Rat>& zexp);
    static JacobiSeries from_qseries(const QSeries& s, int zrank);

    int zrank() const { return zrank_; }
    long qden() const { return qden_; }
    long zden() const { return zden_; }
    long prec_num() const { return prec_; }
    Rat prec() const { return rat(prec_, qden_); }
    bool infinite_prec() const { return prec_ >= INF_PREC; }
    const std::map<long, ZPoly>& terms() const { return c_; }
    bool is_zero_stored() const { return c_.empty(); }

    Rat coeff(const Rat& qexp, const std::vector<Rat>& zexp) const;
    Rat coeff_int(long qexp_num, const DualVec& key_scaled) const;
    // All character terms at one q-exponent, as (dual coordinates, value).
    std::vector<std::pair<std::vector<Rat>, Rat>> zterms(const Rat& qexp) const;

    // Coefficient series of a fixed character key.
    QSeries zslice(const std::vector<Rat>& zexp) const;
    // Specialization z = 0: all character terms collapse per q-power.
    QSeries at_z_zero() const;

    JacobiSeries rebase(long nqden) const;
    JacobiSeries to_zden(long nzden) const;
    JacobiSeries truncated(const Rat& new_prec) const;

    JacobiSeries operator-() const;
    JacobiSeries operator+(const JacobiSeries& o) const;
    JacobiSeries operator-(const JacobiSeries& o) const;
    JacobiSeries operator*(const JacobiSeries& o) const;
    JacobiSeries operator*(const QSeries& s) const;
    JacobiSeries operator*(const Rat& s) const;
    bool operator==(const JacobiSeries& o) const;

    // Multiplicative inverse; the leading q-slice must be a nonzero multiple
    // of zeta^0 (otherwise the inverse is not a polynomial in the characters).
    JacobiSeries inverse() const;
    JacobiSeries pow(long e) const;
    // exp of a series with positive q-valuation.
    JacobiSeries exp_series() const;

    // (tau, z) -> (m tau, m z): q^n zeta^l -> q^(mn) zeta^(ml).
    JacobiSeries scaled(long m) const;
    // Multiply by q^e, resp. by zeta^zexp.
    JacobiSeries qshifted(const Rat& e) const;
    JacobiSeries zshifted(const std::vector<Rat>& zexp) const;

    Rat qvaluation() const;
    void set_coeff(const Rat& qexp, const std::vector<Rat>& zexp, const Rat& v);
    void set_coeff_int(long qexp_num, const DualVec& key_scaled, const Rat& v);

    // Human format; with a lattice the keys print as primal rational
    // coordinates z[...], otherwise as dual coordinates.
    std::string str(const Lattice* K = nullptr) const;
    std::string dump() const;  // machine format, bit-exact round-trip
    static JacobiSeries parse(const std::string& dump);

private:
    int zrank_;
    long qden_;
    long zden_;
    long prec_;
    std::map<long, ZPoly> c_;  // q-exponent numerator -> character polynomial

    long val_bound_num() const { return c_.empty() ? sat_add(prec_, 1) : c_.begin()->first; }
    static long sat_add(long a, long b);
    void prune();
    DualVec scale_key(const std::vector<Rat>& zexp) const;  // to internal units
};

// Theta series of the coset gamma + K of an even positive definite lattice,
// sum over v of q^{Q(v)} zeta^v, with gamma in dual coordinates.
JacobiSeries theta_jacobi(const Lattice& K, const DualVec& gamma, const Rat& qprec);
QSeries theta_qseries(const Lattice& K, const DualVec& gamma, const Rat& qprec);
// Theta series of the full dual lattice K', i.e. the sum of theta_jacobi
// over all cosets of K'/K.
JacobiSeries theta_dual_jacobi(const Lattice& K, const Rat& qprec);

// Odd Jacobi theta quotient
//   vartheta(d tau, d(l, z)) / eta(d tau)
// with vartheta(tau, u) = sum over half-integers nu of (-1)^(nu-1/2)
// q^(nu^2/2) e(nu u).  Satisfies the triple product
//   vartheta(tau,u)/eta(tau) = q^(1/12) (p^(1/2) - p^(-1/2))
//                              prod_{n>=1} (1 - q^n p)(1 - q^n p^(-1)),
// p = e(u).  The key length of l fixes the zrank.
JacobiSeries odd_theta_quotient(long d, const DualVec& l, const Rat& qprec);

}  // namespace autprod
