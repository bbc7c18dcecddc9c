#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autprod/numeric.hpp"

using namespace autprod;

namespace {
// Slow reference implementations used as oracles.
int moebius_ref(long n) {
    if (n == 1) return 1;
    int cnt = 0;
    for (long p = 2; p <= n; ++p) {
        if (n % p) continue;
        if (n % (p * p) == 0) return 0;
        ++cnt;
        n /= p;
        --p;
    }
    return cnt % 2 ? -1 : 1;
}
long phi_ref(long n) {
    long c = 0;
    for (long k = 1; k <= n; ++k)
        if (gcd_long(k, n) == 1) ++c;
    return c;
}
long sigma1_ref(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}
}  // namespace

TEST_CASE("multiplicative functions against direct enumeration") {
    for (long n = 1; n <= 600; ++n) {
        CAPTURE(n);
        CHECK(moebius(n) == moebius_ref(n));
        CHECK(euler_phi(n) == phi_ref(n));
        CHECK(sigma1(n) == sigma1_ref(n));
    }
}

TEST_CASE("divisors are sorted and complete") {
    for (long n : {1L, 2L, 12L, 23L, 46L, 360L, 529L}) {
        auto ds = divisors(n);
        long count = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) ++count;
        CHECK(long(ds.size()) == count);
        for (size_t i = 0; i + 1 < ds.size(); ++i) CHECK(ds[i] < ds[i + 1]);
        for (long d : ds) CHECK(n % d == 0);
    }
}

TEST_CASE("ramanujan sum equals sum over primitive roots of unity") {
    // R(a, n) = sum over k coprime to n of cos(2 pi k a / n); check the
    // divisor-moebius formula against the exponential sum numerically.
    const double pi = 3.14159265358979323846;
    for (long n = 1; n <= 40; ++n)
        for (long a = 0; a <= n; ++a) {
            double s = 0;
            for (long k = 1; k <= n; ++k)
                if (gcd_long(k, n) == 1) s += std::cos(2 * pi * double(k) * double(a) / double(n));
            CHECK(std::abs(s - double(ramanujan_sum(a, n))) < 1e-7);
        }
    // Values used in closed forms elsewhere.
    CHECK(ramanujan_sum(0, 12) == euler_phi(12));
    CHECK(ramanujan_sum(1, 23) == -1);
    CHECK(ramanujan_sum(23, 23) == 22);
}

TEST_CASE("rational helpers") {
    CHECK(rat_floor(rat(7, 2)) == 3);
    CHECK(rat_floor(rat(-7, 2)) == -4);
    CHECK(rat_ceil(rat(7, 2)) == 4);
    CHECK(rat_ceil(rat(-7, 2)) == -3);
    CHECK(qpow(rat(2, 3), -2) == rat(9, 4));
    CHECK(is_integer(rat(4, 2)));
    CHECK(checked_long(rat(12, 4)) == 3);
    CHECK_THROWS(checked_long(rat(1, 3)));
}

TEST_CASE("primality and factorization") {
    CHECK(is_prime(2));
    CHECK(is_prime(23));
    CHECK(!is_prime(1));
    CHECK(!is_prime(529));
    auto f = factorize(504);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<long, int>{2, 3});
    CHECK(f[1] == std::pair<long, int>{3, 2});
    CHECK(f[2] == std::pair<long, int>{7, 1});
}
