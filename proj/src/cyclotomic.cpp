// SPDX-License-Identifier: MIT
#include "autprod/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace autprod {

namespace {

// Exact polynomial long division, remainder discarded; requires the
// divisor to be monic after normalization and the division to be exact.
std::vector<Rat> poly_divide_exact(std::vector<Rat> num, const std::vector<Rat>& den) {
    check(!den.empty() && den.back() != 0, "polynomial division by zero");
    check(num.size() >= den.size(), "polynomial division degree underflow");
    std::vector<Rat> quot(num.size() - den.size() + 1, rat(0));
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
        Rat c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c == 0) continue;
        for (size_t k = 0; k < den.size(); ++k) num[i + k] -= c * den[k];
    }
    for (const Rat& c : num) check(c == 0, "inexact polynomial division");
    return quot;
}

std::map<long, std::vector<Rat>>& cyclotomic_cache() {
    static std::map<long, std::vector<Rat>> cache;
    return cache;
}

std::mutex& cyclotomic_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const std::vector<Rat>& cyclotomic_polynomial(long n) {
    require(n >= 1, "cyclotomic polynomial order must be positive");
    std::lock_guard<std::mutex> lock(cyclotomic_mutex());
    auto& cache = cyclotomic_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively
    // without re-entering the lock.
    std::vector<long> pending{n};
    while (!pending.empty()) {
        long m = pending.back();
        if (cache.count(m)) {
            pending.pop_back();
            continue;
        }
        bool ready = true;
        for (long d : divisors(m))
            if (d < m && !cache.count(d)) {
                pending.push_back(d);
                ready = false;
            }
        if (!ready) continue;
        std::vector<Rat> num(m + 1, rat(0));
        num[0] = rat(-1);
        num[m] = rat(1);
        for (long d : divisors(m)) {
            if (d == m) continue;
            num = poly_divide_exact(std::move(num), cache.at(d));
        }
        cache.emplace(m, std::move(num));
        pending.pop_back();
    }
    return cache.at(n);
}

CycQ::CycQ(long order) : n_(order) {
    require(order >= 1, "CycQ order must be positive");
    c_.assign(cyclotomic_polynomial(order).size() - 1, rat(0));
}

namespace {

// Reduce a coefficient vector modulo Phi_n in place and trim to phi(n).
void reduce_mod_phi(long n, std::vector<Rat>& v) {
    const std::vector<Rat>& phi = cyclotomic_polynomial(n);
    size_t deg = phi.size() - 1;
    if (v.size() < deg) v.resize(deg, rat(0));
    for (size_t i = v.size(); i-- > deg;) {
        Rat c = v[i];
        if (c != 0) {
            v[i] = 0;
            for (size_t k = 0; k < deg; ++k) v[i - deg + k] -= c * phi[k];
        }
    }
    v.resize(deg);
}

}  // namespace

CycQ CycQ::rational(long order, const Rat& r) {
    CycQ z(order);
    z.c_[0] = r;
    return z;
}

CycQ CycQ::root(long order, long k) {
    k %= order;
    if (k < 0) k += order;
    std::vector<Rat> v(static_cast<size_t>(k) + 1, rat(0));
    v[k] = 1;
    reduce_mod_phi(order, v);
    CycQ z(order);
    z.c_ = std::move(v);
    return z;
}

CycQ CycQ::e(long order, const Rat& t) {
    long d = checked_long(Int(den(t)));
    require(order % d == 0, "root denominator " + std::to_string(d) + " does not divide order " +
                                std::to_string(order));
    long k = checked_long(Int(num(t))) % order;
    return root(order, k * (order / d));
}

bool CycQ::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycQ::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycQ::rational_part() const {
    require(is_rational(), "cyclotomic number is not rational: " + str());
    return c_[0];
}

CycQ CycQ::galois(long t) const {
    t %= n_;
    if (t < 0) t += n_;
    require(gcd_long(t, n_) == 1, "galois exponent must be coprime to the order");
    std::vector<Rat> v(n_, rat(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        v[(t * static_cast<long>(j)) % n_] += c_[j];
    }
    reduce_mod_phi(n_, v);
    CycQ z(n_);
    z.c_ = std::move(v);
    return z;
}

CycQ CycQ::operator-() const {
    CycQ z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
    return z;
}

CycQ CycQ::operator+(const CycQ& o) const {
    require(n_ == o.n_, "cyclotomic order mismatch");
    CycQ z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] + o.c_[i];
    return z;
}

CycQ CycQ::operator-(const CycQ& o) const { return *this + (-o); }

CycQ CycQ::operator*(const CycQ& o) const {
    require(n_ == o.n_, "cyclotomic order mismatch");
    std::vector<Rat> v(2 * c_.size(), rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            v[i + j] += c_[i] * o.c_[j];
        }
    }
    reduce_mod_phi(n_, v);
    CycQ z(n_);
    z.c_ = std::move(v);
    return z;
}

CycQ CycQ::operator*(const Rat& s) const {
    CycQ z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] * s;
    return z;
}

CycQ& CycQ::operator+=(const CycQ& o) {
    require(n_ == o.n_, "cyclotomic order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

bool CycQ::operator==(const CycQ& o) const { return n_ == o.n_ && c_ == o.c_; }

std::string CycQ::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) out << " + ";
        out << rat_str(c_[i]);
        if (i > 0) out << "*z" << n_ << "^" << i;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

CycQ cyclotomic_sqrt(long order, long m0) {
    require(m0 >= 1, "squarefree radicand must be positive");
    CycQ res = CycQ::rational(order, rat(1));
    for (auto [p, e] : factorize(m0)) {
        require(e == 1, "radicand must be squarefree");
        if (p == 2) {
            require(order % 8 == 0, "sqrt(2) needs an order divisible by 8");
            res = res * (CycQ::root(order, order / 8) + CycQ::root(order, -order / 8));
        } else {
            require(order % p == 0, "sqrt(p) needs an order divisible by p");
            // Quadratic Gauss sum: sum_a e(a^2/p) equals sqrt(p) for
            // p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4.
            CycQ g(order);
            for (long a = 0; a < p; ++a) g += CycQ::root(order, (a * a % p) * (order / p));
            if (p % 4 == 3) {
                require(order % 4 == 0, "sqrt(p), p = 3 mod 4, needs an order divisible by 4");
                g = g * CycQ::root(order, -order / 4);
            }
            res = res * g;
        }
    }
    check(res * res == CycQ::rational(order, rat(m0)), "cyclotomic square root failed to verify");
    return res;
}

AlgScalar::AlgScalar(const Rat& r_, long ipow_, long rad_) : r(r_), ipow(0), rad(1) {
    require(rad_ >= 1, "AlgScalar radical must be positive");
    if (r == 0) return;
    ipow = static_cast<int>(((ipow_ % 4) + 4) % 4);
    long m0 = rad_;
    for (auto [p, e] : factorize(rad_)) {
        while (m0 % (p * p) == 0) {
            m0 /= p * p;
            r *= p;
        }
        (void)e;
    }
    rad = m0;
}

AlgScalar AlgScalar::sqrt_int(long n) { return AlgScalar(rat(1), 0, n); }

AlgScalar AlgScalar::inv_sqrt_int(long n) {
    // 1/sqrt(n) = sqrt(n)/n.
    AlgScalar s = sqrt_int(n);
    s.r /= n;
    return s;
}

AlgScalar AlgScalar::half_power(long n, long k) {
    AlgScalar s = (k >= 0) ? sqrt_int(n) : inv_sqrt_int(n);
    long reps = k >= 0 ? k : -k;
    AlgScalar acc = from_rat(rat(1));
    for (long i = 0; i < reps; ++i) acc = acc * s;
    return acc;
}

AlgScalar AlgScalar::operator*(const AlgScalar& o) const {
    long g = gcd_long(rad, o.rad);
    return AlgScalar(r * o.r * g, ipow + o.ipow, (rad / g) * (o.rad / g));
}

bool AlgScalar::is_rational() const { return r == 0 || (rad == 1 && ipow % 2 == 0); }

Rat AlgScalar::rat_value() const {
    require(is_rational(), "scalar is irrational: " + str());
    return ipow == 2 ? Rat(-r) : r;
}

std::string AlgScalar::str() const {
    std::ostringstream out;
    out << rat_str(r);
    if (r != 0 && ipow) out << "*i^" << ipow;
    if (r != 0 && rad != 1) out << "*sqrt(" << rad << ")";
    return out.str();
}

}  // namespace autprod
