// SPDX-License-Identifier: MIT
#include "autprod/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace autprod {

long QSeries::sat_add(long a, long b) {
    if (a >= INF_PREC || b >= INF_PREC) return INF_PREC;
    long s = a + b;
    return s >= INF_PREC ? INF_PREC : s;
}

QSeries QSeries::monomial(const Rat& coeff, const Rat& exponent) {
    long d = checked_long(Int(exponent.get_den()));
    QSeries s(d, INF_PREC);
    if (coeff != 0) s.c_[checked_long(Int(exponent.get_num()))] = coeff;
    return s;
}

Rat QSeries::coeff(const Rat& e) const {
    Rat scaled = e * den_;
    require(is_integer(scaled), "exponent " + e.get_str() + " not representable over denominator " +
                                    std::to_string(den_));
    return coeff_num(checked_long(scaled));
}

Rat QSeries::coeff_num(long e_num) const {
    if (e_num > prec_)
        throw PrecisionError("coefficient of q^(" + std::to_string(e_num) + "/" +
                             std::to_string(den_) + ") requested beyond precision " +
                             std::to_string(prec_) + "/" + std::to_string(den_));
    auto it = c_.find(e_num);
    return it == c_.end() ? Rat(0) : it->second;
}

QSeries QSeries::rebase(long nden) const {
    require(nden >= den_ && nden % den_ == 0, "rebase requires a multiple of the denominator");
    if (nden == den_) return *this;
    long f = nden / den_;
    QSeries r(nden, infinite_prec() ? INF_PREC : prec_ * f);
    for (auto& [e, v] : c_) r.c_[e * f] = v;
    return r;
}

QSeries align_den(const QSeries& a, long nden) { return a.rebase(nden); }

QSeries QSeries::truncated(const Rat& new_prec) const {
    long p = checked_long(rat_floor(new_prec * den_));
    QSeries r(den_, std::min(p, prec_));
    for (auto& [e, v] : c_)
        if (e <= r.prec_) r.c_[e] = v;
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
}

QSeries QSeries::operator+(const QSeries& o) const {
    long nden = lcm_long(den_, o.den_);
    QSeries a = rebase(nden), b = o.rebase(nden);
    QSeries r(nden, std::min(a.prec_, b.prec_));
    r.c_ = std::move(a.c_);
    for (auto& [e, v] : b.c_) {
        auto [it, fresh] = r.c_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) r.c_.erase(it);
        }
    }
    // Terms beyond the combined precision are unreliable; drop them.
    r.c_.erase(r.c_.upper_bound(r.prec_), r.c_.end());
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator*(const QSeries& o) const {
    long nden = lcm_long(den_, o.den_);
    QSeries a = rebase(nden), b = o.rebase(nden);
    long p = std::min(sat_add(a.prec_, b.val_bound_num()), sat_add(b.prec_, a.val_bound_num()));
    QSeries r(nden, p);
    for (auto& [ea, va] : a.c_) {
        if (!b.c_.empty() && sat_add(ea, b.c_.begin()->first) > p) break;
        for (auto& [eb, vb] : b.c_) {
            long e = ea + eb;
            if (e > p) break;
            Rat prod = va * vb;
            auto [it, fresh] = r.c_.emplace(e, prod);
            if (!fresh) {
                it->second += prod;
                if (it->second == 0) r.c_.erase(it);
            }
        }
    }
    return r;
}

QSeries QSeries::operator*(const Rat& s) const {
    QSeries r(den_, prec_);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& [e, v] : r.c_) v *= s;
    return r;
}

bool QSeries::operator==(const QSeries& o) const {
    long nden = lcm_long(den_, o.den_);
    QSeries a = rebase(nden), b = o.rebase(nden);
    return a.prec_ == b.prec_ && a.c_ == b.c_;
}

QSeries QSeries::inverse() const {
    require(!c_.empty(), "inverse of a series with no stored terms");
    auto lead = *c_.begin();
    // 1 / (c q^v (1 + u)) with u of positive valuation: expand geometrically.
    long v = lead.first;
    Rat cinv = 1 / lead.second;
    long out_prec = infinite_prec() ? INF_PREC : prec_ - 2 * v;
    QSeries r(den_, out_prec);
    if (infinite_prec() && c_.size() == 1) {
        r.c_[-v] = cinv;
        return r;
    }
    require(!infinite_prec(), "inverse of an exact multi-term series needs a truncation first");
    // r satisfies sum_{e' <= e} r[e'] * this[e - e'] = [e == 0], solved in
    // increasing exponent order.
    std::map<long, Rat> rc;
    rc[-v] = cinv;
    for (long e = -v + 1; e <= out_prec; ++e) {
        Rat s(0);
        for (auto& [er, vr] : rc) {
            long need = e + v - (er + v);
            if (need <= 0) break;
            auto it = c_.find(need + v);
            if (it != c_.end()) s += vr * it->second;
        }
        if (s != 0) rc[e] = -cinv * s;
    }
    r.c_ = std::move(rc);
    return r;
}

QSeries QSeries::pow(long e) const {
    if (e == 0) return QSeries::one(den_);
    QSeries base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    QSeries acc = base;
    --k;
    while (k) {
        if (k & 1) acc = acc * base;
        if ((k >>= 1)) base = base * base;
    }
    return acc;
}

QSeries QSeries::rescale_exponent(long num, long dden) const {
    require(num >= 1 && dden >= 1, "rescale_exponent expects a positive rational");
    long g = gcd_long(num, dden);
    num /= g;
    dden /= g;
    QSeries r(den_ * dden, INF_PREC);
    if (!infinite_prec()) {
        // exponent e/den kept iff e*num/(den*dden) <= prec; new prec floor.
        r.prec_ = prec_ * num;
    }
    for (auto& [e, v] : c_) r.c_[e * num] = v;
    return r;
}

QSeries QSeries::shifted(const Rat& e) const {
    long ed = checked_long(Int(e.get_den()));
    long nden = lcm_long(den_, ed);
    QSeries a = rebase(nden);
    long off = checked_long(Int(e.get_num())) * (nden / ed);
    QSeries r(nden, sat_add(a.prec_, off));
    for (auto& [ex, v] : a.c_) r.c_[ex + off] = v;
    return r;
}

Rat QSeries::valuation() const {
    require(!c_.empty(), "valuation of a series with no stored terms");
    return rat(c_.begin()->first, den_);
}

void QSeries::set_coeff(const Rat& e, const Rat& v) {
    Rat scaled = e * den_;
    require(is_integer(scaled), "exponent not representable over the series denominator");
    long en = checked_long(scaled);
    if (v == 0)
        c_.erase(en);
    else
        c_[en] = v;
}

namespace {
std::string exp_str(long e, long den) {
    long g = gcd_long(e, den);
    long n = e / g, d = den / g;
    if (d == 1) return std::to_string(n);
    return "(" + std::to_string(n) + "/" + std::to_string(d) + ")";
}
}  // namespace

std::string QSeries::str() const {
    if (c_.empty()) return "0 + O(q^" + exp_str(prec_ == INF_PREC ? 0 : prec_ + 1, den_) + ")";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : c_) {
        if (!first) os << (v > 0 ? " + " : " - ");
        Rat av = v > 0 || first ? v : Rat(-v);
        first = false;
        if (e == 0) {
            os << av.get_str();
            continue;
        }
        if (av != 1) os << av.get_str() << "*";
        os << "q^" << exp_str(e, den_);
    }
    if (!infinite_prec()) os << " + O(q^" << exp_str(prec_ + 1, den_) << ")";
    return os.str();
}

std::string QSeries::dump() const {
    std::ostringstream os;
    os << "qseries " << den_ << " " << (infinite_prec() ? std::string("inf") : std::to_string(prec_))
       << "\n";
    for (auto& [e, v] : c_) os << e << " " << v.get_str() << "\n";
    os << "end\n";
    return os.str();
}

QSeries QSeries::parse(const std::string& dump) {
    std::istringstream is(dump);
    std::string tag, precs;
    long den;
    is >> tag >> den >> precs;
    require(tag == "qseries", "bad qseries dump header");
    QSeries r(den, precs == "inf" ? INF_PREC : std::stol(precs));
    std::string tok;
    while (is >> tok) {
        if (tok == "end") return r;
        long e = std::stol(tok);
        std::string cs;
        is >> cs;
        Rat v(cs);
        v.canonicalize();
        if (v != 0) r.c_[e] = v;
    }
    throw std::invalid_argument("unterminated qseries dump");
}

std::complex<double> QSeries::eval(std::complex<double> tau) const {
    std::complex<double> s = 0;
    const double two_pi = 2 * 3.14159265358979323846;
    for (auto& [e, v] : c_) {
        double ex = double(e) / double(den_);
        s += v.get_d() * std::exp(std::complex<double>(0, two_pi * ex) * tau);
    }
    return s;
}

QSeries eta(const Rat& prec) {
    // q^(1/24) sum_{k in Z} (-1)^k q^(k(3k-1)/2), Euler's pentagonal series.
    Rat p24 = prec * 24;
    long pn = checked_long(rat_floor(p24));
    QSeries s(24, pn);
    for (long k = 0;; ++k) {
        long e = 24 * (k * (3 * k - 1) / 2) + 1;
        if (e > pn && k > 0) break;
        if (e <= pn) s.set_coeff(rat(e, 24), (k % 2 == 0) ? 1 : -1);
        if (k > 0) {
            long e2 = 24 * (k * (3 * k + 1) / 2) + 1;
            if (e2 <= pn) s.set_coeff(rat(e2, 24), (k % 2 == 0) ? 1 : -1);
        }
        if (e > pn) break;
    }
    return s;
}

EtaShape EtaShape::parse(const std::string& s) {
    EtaShape shape;
    require(!s.empty(), "empty eta shape");
    auto number = [&s](const std::string& tok) {
        size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        require(used == tok.size(), "malformed eta shape '" + s + "' near '" + tok + "'");
        return v;
    };
    std::string part;
    std::istringstream is(s);
    while (std::getline(is, part, '.')) {
        auto caret = part.find('^');
        long k, b;
        if (caret == std::string::npos) {
            k = number(part);
            b = 1;
        } else {
            k = number(part.substr(0, caret));
            b = number(part.substr(caret + 1));
        }
        require(k >= 1, "eta shape scale must be positive");
        shape.factors.emplace_back(k, b);
    }
    std::sort(shape.factors.begin(), shape.factors.end());
    for (size_t i = 1; i < shape.factors.size(); ++i)
        require(shape.factors[i].first != shape.factors[i - 1].first,
                "repeated scale in eta shape");
    return shape;
}

std::string EtaShape::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, b] : factors) {
        if (b == 0) continue;
        if (!first) os << ".";
        first = false;
        os << k;
        if (b != 1) os << "^" << b;
    }
    return first ? "1^0" : os.str();
}

Rat EtaShape::weight() const {
    long s = 0;
    for (auto& [k, b] : factors) {
        (void)k;
        s += b;
    }
    return rat(s, 2);
}

long EtaShape::degree() const {
    long s = 0;
    for (auto& [k, b] : factors) s += k * b;
    return s;
}

long EtaShape::level_lcm() const {
    long l = 1;
    for (auto& [k, b] : factors)
        if (b != 0) l = lcm_long(l, k);
    return l;
}

QSeries eta_quotient(const EtaShape& shape, const Rat& prec) {
    // The unit part of eta(k tau)^{b} starts at q^{kb/24}; negative powers
    // push the needed working precision up.  Iterate with a growing margin
    // until the tracked precision of the product covers the request.
    for (Rat margin = rat(1);; margin *= 2) {
        QSeries acc = QSeries::one(24);
        Rat work = prec + margin;
        bool ok = true;
        for (auto& [k, b] : shape.factors) {
            if (b == 0) continue;
            QSeries f = eta(work / k + 1).rescale_exponent(k).truncated(work + 1);
            acc = acc * f.pow(b);
            if (acc.prec() < prec) {
                ok = false;
                break;
            }
        }
        if (ok && acc.prec() >= prec) return acc.truncated(prec);
        check(margin < 10000, "eta_quotient precision iteration diverged");
    }
}

}  // namespace autprod
