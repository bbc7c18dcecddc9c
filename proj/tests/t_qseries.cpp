#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "autprod/qseries.hpp"

using namespace autprod;

namespace {
// Direct truncated product prod_{n=1}^{N} (1 - q^n), oracle for eta.
QSeries euler_product_ref(long N) {
    QSeries acc = QSeries::one(1).truncated(rat(N));
    for (long n = 1; n <= N; ++n) {
        QSeries f = QSeries::one(1).truncated(rat(N));
        f.set_coeff(rat(n), rat(-1));
        acc = acc * f;
    }
    return acc;
}
}  // namespace

TEST_CASE("arithmetic basics and precision tracking") {
    QSeries a(1, 5);
    a.set_coeff(rat(0), rat(1));
    a.set_coeff(rat(1), rat(-3));
    QSeries b(1, 3);
    b.set_coeff(rat(0), rat(2));
    b.set_coeff(rat(2), rat(5));
    QSeries s = a + b;
    CHECK(s.prec_num() == 3);
    CHECK(s.coeff(rat(0)) == 3);
    CHECK(s.coeff(rat(2)) == 5);
    CHECK_THROWS_AS(s.coeff(rat(4)), PrecisionError);
    QSeries p = a * b;
    CHECK(p.coeff(rat(1)) == -6);
    CHECK(p.coeff(rat(3)) == -15);
    CHECK(p.prec_num() == 3);
}

TEST_CASE("mixed denominators align") {
    QSeries a = QSeries::monomial(rat(1), rat(1, 24));
    QSeries b = QSeries::monomial(rat(2), rat(1, 8));
    QSeries p = a * b;
    CHECK(p.coeff(rat(1, 6)) == 2);
    QSeries s = a + b;
    CHECK(s.coeff(rat(1, 24)) == 1);
    CHECK(s.coeff(rat(3, 24)) == 2);
}

TEST_CASE("eta matches the euler product") {
    long N = 40;
    QSeries e = eta(rat(N)) * QSeries::monomial(rat(1), rat(-1, 24));
    QSeries ref = euler_product_ref(N);
    for (long n = 0; n <= 35; ++n) CHECK(e.coeff(rat(n)) == ref.coeff(rat(n)));
}

TEST_CASE("inverse and pow round-trips") {
    QSeries e = eta(rat(20));
    QSeries inv = e.inverse();
    QSeries prod = e * inv;
    CHECK(prod.coeff(rat(0)) == 1);
    for (long n = 1; n <= 15; ++n) CHECK(prod.coeff(rat(n)) == 0);
    QSeries p3 = e.pow(3);
    CHECK(p3 == e * e * e);
    QSeries pm2 = e.pow(-2);
    QSeries id = pm2 * e * e;
    CHECK(id.coeff(rat(0)) == 1);
    for (long n = 1; n <= 12; ++n) CHECK(id.coeff(rat(n)) == 0);
}

TEST_CASE("discriminant form eta^24 and its inverse") {
    // Delta = q - 24 q^2 + 252 q^3 - 1472 q^4 + ...; 1/Delta = q^-1 + 24 +
    // 324 q + 3200 q^2 + ...
    QSeries delta = eta(rat(12)).pow(24);
    CHECK(delta.coeff(rat(1)) == 1);
    CHECK(delta.coeff(rat(2)) == -24);
    CHECK(delta.coeff(rat(3)) == 252);
    CHECK(delta.coeff(rat(4)) == -1472);
    CHECK(delta.coeff(rat(5)) == 4830);
    QSeries dinv = delta.inverse();
    CHECK(dinv.coeff(rat(-1)) == 1);
    CHECK(dinv.coeff(rat(0)) == 24);
    CHECK(dinv.coeff(rat(1)) == 324);
    CHECK(dinv.coeff(rat(2)) == 3200);
}

TEST_CASE("eta quotient shapes") {
    // eta(tau)^8 eta(2 tau)^8 = q - 8 q^2 + 12 q^3 + 64 q^4 - 210 q^5 ...
    QSeries f = eta_quotient(EtaShape::parse("1^8.2^8"), rat(8));
    CHECK(f.coeff(rat(1)) == 1);
    CHECK(f.coeff(rat(2)) == -8);
    CHECK(f.coeff(rat(3)) == 12);
    CHECK(f.coeff(rat(4)) == 64);
    CHECK(f.coeff(rat(5)) == -210);
    // Reference by direct multiplication.
    QSeries ref = eta(rat(9)).pow(8) * eta(rat(9, 2)).rescale_exponent(2).pow(8);
    for (long n = 1; n <= 8; ++n) CHECK(f.coeff(rat(n)) == ref.coeff(rat(n)));
    // Negative exponents: 1 / (eta(tau) eta(23 tau)) has leading q^-1.
    QSeries g = eta_quotient(EtaShape::parse("1^-1.23^-1"), rat(4));
    CHECK(g.coeff(rat(-1)) == 1);
    CHECK(g.coeff(rat(0)) == 1);
    CHECK(g.valuation() == rat(-1));
    EtaShape s = EtaShape::parse("1^-1.23^-1");
    CHECK(s.weight() == rat(-1));
    CHECK(s.degree() == -24);
    CHECK(s.str() == "1^-1.23^-1");
}

TEST_CASE("rescale and shift") {
    QSeries e = eta(rat(6));
    QSeries e2 = e.rescale_exponent(2);
    CHECK(e2.coeff(rat(2, 24)) == 1);
    CHECK(e2.coeff(rat(2, 24) + rat(2)) == -1);
    QSeries half = e.rescale_exponent(1, 3);
    CHECK(half.coeff(rat(1, 72)) == 1);
    QSeries sh = e.shifted(rat(-1, 24));
    CHECK(sh.coeff(rat(0)) == 1);
    CHECK(sh.coeff(rat(1)) == -1);
}

TEST_CASE("dump and parse round-trip bit-exactly") {
    QSeries f = eta_quotient(EtaShape::parse("1^-8.2^8"), rat(6)) * rat(16);
    QSeries g = QSeries::parse(f.dump());
    CHECK(f == g);
    CHECK(f.dump() == g.dump());
    QSeries z = QSeries::zero(24, 100);
    CHECK(QSeries::parse(z.dump()) == z);
}

TEST_CASE("numeric evaluation sanity") {
    // eta(i) = Gamma(1/4) / (2 pi^(3/4)).
    QSeries e = eta(rat(60));
    std::complex<double> val = e.eval({0.0, 1.0});
    double expected = std::tgamma(0.25) / (2 * std::pow(M_PI, 0.75));
    CHECK(std::abs(val.real() - expected) < 1e-9);
    CHECK(std::abs(val.imag()) < 1e-12);
    // Modularity spot check: eta(-1/tau) = sqrt(-i tau) eta(tau) at tau = 2i.
    std::complex<double> lhs = e.eval({0.0, 0.5});
    std::complex<double> rhs = std::sqrt(2.0) * e.eval({0.0, 2.0});
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("print format") {
    QSeries f = QSeries::monomial(rat(3, 2), rat(-1, 8)) + QSeries::monomial(rat(-1), rat(2));
    CHECK(f.str() == "3/2*q^(-1/8) - q^2");
}
