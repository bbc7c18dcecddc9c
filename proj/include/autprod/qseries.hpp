// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "autprod/numeric.hpp"

namespace autprod {

// Truncated Laurent series in q with exact rational coefficients and
// fractional exponents over a fixed denominator.  Exponents are stored as
// numerators over `den`; only nonzero coefficients are kept.  `prec` is the
// largest exponent numerator up to which coefficients are guaranteed
// correct; reading past it raises PrecisionError.  Precision propagates
// pessimistically through arithmetic.
class QSeries {
public:
    static constexpr long INF_PREC = LONG_MAX / 4;

    QSeries() : den_(1), prec_(INF_PREC) {}
    QSeries(long den, long prec_num) : den_(den), prec_(prec_num) {
        require(den >= 1, "QSeries denominator must be positive");
    }

    static QSeries zero(long den = 1, long prec_num = INF_PREC) { return QSeries(den, prec_num); }
    static QSeries one(long den = 1) {
        QSeries s(den, INF_PREC);
        s.c_[0] = 1;
        return s;
    }
    // c * q^(e_num/e_den), exact.
    static QSeries monomial(const Rat& coeff, const Rat& exponent);

    long den() const { return den_; }
    long prec_num() const { return prec_; }
    Rat prec() const { return rat(prec_, den_); }
    bool infinite_prec() const { return prec_ >= INF_PREC; }
    const std::map<long, Rat>& terms() const { return c_; }
    bool is_zero_stored() const { return c_.empty(); }

    // Coefficient of q^e; throws PrecisionError if e exceeds the precision.
    Rat coeff(const Rat& e) const;
    Rat coeff_num(long e_num) const;  // exponent given over den()

    // Rewrite over a larger exponent denominator (den | nden required).
    QSeries rebase(long nden) const;
    QSeries truncated(const Rat& new_prec) const;

    QSeries operator-() const;
    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rat& s) const;
    bool operator==(const QSeries& o) const;

    // Multiplicative inverse; the leading stored term must be nonzero and at
    // or below precision.
    QSeries inverse() const;
    QSeries pow(long e) const;

    // q -> q^(num/den): exponent rescaling by a positive rational.
    QSeries rescale_exponent(long num, long den = 1) const;
    // Multiply by the monomial q^e.
    QSeries shifted(const Rat& e) const;

    // Smallest stored exponent; requires a nonzero stored term.
    Rat valuation() const;

    void set_coeff(const Rat& e, const Rat& v);

    std::string str() const;  // human format: c*q^(a/b) + ...
    std::string dump() const;  // machine format, bit-exact round-trip
    static QSeries parse(const std::string& dump);

    std::complex<double> eval(std::complex<double> tau) const;

private:
    long den_;
    long prec_;
    std::map<long, Rat> c_;

    long val_bound_num() const { return c_.empty() ? sat_add(prec_, 1) : c_.begin()->first; }
    static long sat_add(long a, long b);
    friend QSeries align_den(const QSeries& a, long nden);
};

// Dedekind eta function eta(tau) = q^(1/24) prod (1 - q^n), to the given
// exponent precision.
QSeries eta(const Rat& prec);

// A formal eta quotient prod_k eta(k tau)^{b_k}; exponents may be negative
// and repeated k are not allowed.
struct EtaShape {
    std::vector<std::pair<long, long>> factors;  // (k, b_k), k >= 1, sorted

    static EtaShape parse(const std::string& s);  // e.g. "1^-8.2^8"
    std::string str() const;
    Rat weight() const;      // (1/2) sum b_k
    long degree() const;     // sum k * b_k
    long level_lcm() const;  // lcm of the k
};

QSeries eta_quotient(const EtaShape& shape, const Rat& prec);

}  // namespace autprod
