// SPDX-License-Identifier: MIT
#include "autprod/numeric.hpp"

#include <algorithm>

namespace autprod {

std::vector<std::pair<long, int>> factorize(long n) {
    require(n >= 1, "factorize expects n >= 1");
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<long> divisors(long n) {
    require(n >= 1, "divisors expects n >= 1");
    std::vector<long> out{1};
    for (auto [p, e] : factorize(n)) {
        size_t base = out.size();
        long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(long n) {
    require(n >= 1, "moebius expects n >= 1");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

long euler_phi(long n) {
    require(n >= 1, "euler_phi expects n >= 1");
    long r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r -= r / p;
    }
    return r;
}

long sigma1(long n) {
    require(n >= 1, "sigma1 expects n >= 1");
    long r = 1;
    for (auto [p, e] : factorize(n)) {
        long pk = 1, s = 1;
        for (int k = 0; k < e; ++k) {
            pk *= p;
            s += pk;
        }
        r *= s;
    }
    return r;
}

long ramanujan_sum(long a, long n) {
    require(n >= 1, "ramanujan_sum expects n >= 1");
    a %= n;
    if (a < 0) a += n;
    long g = gcd_long(a, n);
    long r = 0;
    for (long t : divisors(g)) r += t * moebius(n / t);
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace autprod
