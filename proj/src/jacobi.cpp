// SPDX-License-Identifier: MIT
#include "autprod/jacobi.hpp"

#include <algorithm>
#include <sstream>

namespace autprod {

long JacobiSeries::sat_add(long a, long b) {
    if (a >= INF_PREC || b >= INF_PREC) return INF_PREC;
    long s = a + b;
    return s >= INF_PREC ? INF_PREC : s;
}

void JacobiSeries::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first > prec_) {
            it = c_.erase(it);
            continue;
        }
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = (jt->second == 0) ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? c_.erase(it) : std::next(it);
    }
}

DualVec JacobiSeries::scale_key(const std::vector<Rat>& zexp) const {
    require(int(zexp.size()) == zrank_, "character key has wrong length");
    DualVec key(zrank_);
    for (int i = 0; i < zrank_; ++i) {
        Rat s = zexp[i] * zden_;
        require(is_integer(s), "character key not representable over zden " +
                                   std::to_string(zden_));
        key[i] = checked_long(s);
    }
    return key;
}

JacobiSeries JacobiSeries::one(int zrank) {
    JacobiSeries s(zrank);
    s.c_[0][DualVec(zrank, 0)] = 1;
    return s;
}

JacobiSeries JacobiSeries::monomial(int zrank, const Rat& coeff, const Rat& qexp,
                                    const std::vector<Rat>& zexp) {
    require(int(zexp.size()) == zrank, "character key has wrong length");
    long zd = 1;
    for (auto& x : zexp) zd = lcm_long(zd, checked_long(Int(x.get_den())));
    JacobiSeries s(zrank, checked_long(Int(qexp.get_den())), INF_PREC, zd);
    if (coeff != 0) s.c_[checked_long(Int(qexp.get_num()))][s.scale_key(zexp)] = coeff;
    return s;
}

JacobiSeries JacobiSeries::from_qseries(const QSeries& s, int zrank) {
    JacobiSeries r(zrank, s.den(), s.prec_num());
    DualVec zero(zrank, 0);
    for (auto& [e, v] : s.terms()) r.c_[e][zero] = v;
    return r;
}

Rat JacobiSeries::coeff(const Rat& qexp, const std::vector<Rat>& zexp) const {
    Rat scaled = qexp * qden_;
    require(is_integer(scaled), "q-exponent not representable over denominator " +
                                    std::to_string(qden_));
    return coeff_int(checked_long(scaled), scale_key(zexp));
}

Rat JacobiSeries::coeff_int(long qexp_num, const DualVec& key_scaled) const {
    if (qexp_num > prec_)
        throw PrecisionError("Jacobi coefficient at q^(" + std::to_string(qexp_num) + "/" +
                             std::to_string(qden_) + ") requested beyond precision");
    auto it = c_.find(qexp_num);
    if (it == c_.end()) return Rat(0);
    auto jt = it->second.find(key_scaled);
    return jt == it->second.end() ? Rat(0) : jt->second;
}

std::vector<std::pair<std::vector<Rat>, Rat>> JacobiSeries::zterms(const Rat& qexp) const {
    Rat scaled = qexp * qden_;
    require(is_integer(scaled), "q-exponent not representable over denominator " +
                                    std::to_string(qden_));
    long e = checked_long(scaled);
    if (e > prec_) throw PrecisionError("Jacobi slice requested beyond precision");
    std::vector<std::pair<std::vector<Rat>, Rat>> out;
    auto it = c_.find(e);
    if (it == c_.end()) return out;
    for (auto& [key, v] : it->second) {
        std::vector<Rat> zc(zrank_);
        for (int i = 0; i < zrank_; ++i) zc[i] = rat(key[i], zden_);
        out.emplace_back(std::move(zc), v);
    }
    return out;
}

QSeries JacobiSeries::zslice(const std::vector<Rat>& zexp) const {
    QSeries r(qden_, prec_);
    DualVec key;
    bool representable = true;
    {
        require(int(zexp.size()) == zrank_, "character key has wrong length");
        key.resize(zrank_);
        for (int i = 0; i < zrank_ && representable; ++i) {
            Rat s = zexp[i] * zden_;
            if (!is_integer(s))
                representable = false;
            else
                key[i] = checked_long(s);
        }
    }
    if (!representable) return r;
    for (auto& [e, p] : c_) {
        auto jt = p.find(key);
        if (jt != p.end()) r.set_coeff(rat(e, qden_), jt->second);
    }
    return r;
}

QSeries JacobiSeries::at_z_zero() const {
    QSeries r(qden_, prec_);
    for (auto& [e, p] : c_) {
        Rat s(0);
        for (auto& [key, v] : p) s += v;
        if (s != 0) r.set_coeff(rat(e, qden_), s);
    }
    return r;
}

JacobiSeries JacobiSeries::rebase(long nqden) const {
    require(nqden >= qden_ && nqden % qden_ == 0, "rebase requires a multiple of the denominator");
    if (nqden == qden_) return *this;
    long f = nqden / qden_;
    JacobiSeries r(zrank_, nqden, infinite_prec() ? INF_PREC : prec_ * f, zden_);
    for (auto& [e, p] : c_) r.c_[e * f] = p;
    return r;
}

JacobiSeries JacobiSeries::to_zden(long nzden) const {
    require(nzden >= zden_ && nzden % zden_ == 0, "to_zden requires a multiple of zden");
    if (nzden == zden_) return *this;
    long f = nzden / zden_;
    JacobiSeries r(zrank_, qden_, prec_, nzden);
    for (auto& [e, p] : c_) {
        ZPoly np;
        for (auto& [key, v] : p) np.emplace(f * key, v);
        r.c_[e] = std::move(np);
    }
    return r;
}

JacobiSeries JacobiSeries::truncated(const Rat& new_prec) const {
    long p = checked_long(rat_floor(new_prec * qden_));
    JacobiSeries r(zrank_, qden_, std::min(p, prec_), zden_);
    for (auto& [e, pol] : c_)
        if (e <= r.prec_) r.c_[e] = pol;
    return r;
}

JacobiSeries JacobiSeries::operator-() const {
    JacobiSeries r = *this;
    for (auto& [e, p] : r.c_)
        for (auto& [key, v] : p) v = -v;
    return r;
}

JacobiSeries JacobiSeries::operator+(const JacobiSeries& o) const {
    require(zrank_ == o.zrank_, "zrank mismatch");
    long nq = lcm_long(qden_, o.qden_);
    long nz = lcm_long(zden_, o.zden_);
    JacobiSeries a = rebase(nq).to_zden(nz), b = o.rebase(nq).to_zden(nz);
    JacobiSeries r(zrank_, nq, std::min(a.prec_, b.prec_), nz);
    r.c_ = std::move(a.c_);
    for (auto& [e, p] : b.c_) {
        auto& slot = r.c_[e];
        for (auto& [key, v] : p) {
            auto [it, fresh] = slot.emplace(key, v);
            if (!fresh) it->second += v;
        }
    }
    r.prune();
    return r;
}

JacobiSeries JacobiSeries::operator-(const JacobiSeries& o) const { return *this + (-o); }

JacobiSeries JacobiSeries::operator*(const JacobiSeries& o) const {
    require(zrank_ == o.zrank_, "zrank mismatch");
    long nq = lcm_long(qden_, o.qden_);
    long nz = lcm_long(zden_, o.zden_);
    JacobiSeries a = rebase(nq).to_zden(nz), b = o.rebase(nq).to_zden(nz);
    long p = std::min(sat_add(a.prec_, b.val_bound_num()), sat_add(b.prec_, a.val_bound_num()));
    JacobiSeries r(zrank_, nq, p, nz);
    for (auto& [ea, pa] : a.c_) {
        if (!b.c_.empty() && sat_add(ea, b.c_.begin()->first) > p) break;
        for (auto& [eb, pb] : b.c_) {
            long e = ea + eb;
            if (e > p) break;
            auto& slot = r.c_[e];
            for (auto& [ka, va] : pa)
                for (auto& [kb, vb] : pb) {
                    Rat prod = va * vb;
                    auto [it, fresh] = slot.emplace(ka + kb, prod);
                    if (!fresh) it->second += prod;
                }
        }
    }
    r.prune();
    return r;
}

JacobiSeries JacobiSeries::operator*(const QSeries& s) const {
    return *this * from_qseries(s, zrank_);
}

JacobiSeries JacobiSeries::operator*(const Rat& s) const {
    JacobiSeries r(zrank_, qden_, prec_, zden_);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& [e, p] : r.c_)
        for (auto& [key, v] : p) v *= s;
    return r;
}

bool JacobiSeries::operator==(const JacobiSeries& o) const {
    if (zrank_ != o.zrank_) return false;
    long nq = lcm_long(qden_, o.qden_);
    long nz = lcm_long(zden_, o.zden_);
    JacobiSeries a = rebase(nq).to_zden(nz), b = o.rebase(nq).to_zden(nz);
    return a.prec_ == b.prec_ && a.c_ == b.c_;
}

JacobiSeries JacobiSeries::inverse() const {
    require(!c_.empty(), "inverse of a series with no stored terms");
    auto& lead = *c_.begin();
    require(lead.second.size() == 1 && is_zero(lead.second.begin()->first),
            "inverse needs a scalar leading q-slice");
    long v = lead.first;
    Rat cinv = 1 / lead.second.begin()->second;
    DualVec zero(zrank_, 0);
    long out_prec = infinite_prec() ? INF_PREC : prec_ - 2 * v;
    JacobiSeries r(zrank_, qden_, out_prec, zden_);
    if (infinite_prec() && c_.size() == 1) {
        r.c_[-v][zero] = cinv;
        return r;
    }
    require(!infinite_prec(), "inverse of an exact multi-term series needs a truncation first");
    // sum_{a+b=e} r[a] this[b] = [e == 0], solved by ascending q-exponent.
    std::map<long, ZPoly> rc;
    rc[-v][zero] = cinv;
    for (long e = -v + 1; e <= out_prec; ++e) {
        ZPoly s;
        for (auto& [a, pa] : rc) {
            if (a >= e) break;
            auto it = c_.find(e - a);
            if (it == c_.end()) continue;
            for (auto& [ka, va] : pa)
                for (auto& [kb, vb] : it->second) {
                    Rat prod = va * vb;
                    auto [jt, fresh] = s.emplace(ka + kb, prod);
                    if (!fresh) jt->second += prod;
                }
        }
        ZPoly& dst = rc[e];
        for (auto& [k, val] : s) {
            Rat x = -cinv * val;
            if (x != 0) dst[k] = x;
        }
        if (dst.empty()) rc.erase(e);
    }
    r.c_ = std::move(rc);
    return r;
}

JacobiSeries JacobiSeries::pow(long e) const {
    if (e == 0) return one(zrank_);
    JacobiSeries base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    JacobiSeries acc = base;
    --k;
    while (k) {
        if (k & 1) acc = acc * base;
        if ((k >>= 1)) base = base * base;
    }
    return acc;
}

JacobiSeries JacobiSeries::exp_series() const {
    if (c_.empty()) {
        JacobiSeries r(zrank_, qden_, prec_, zden_);
        if (r.prec_ >= 0) r.c_[0][DualVec(zrank_, 0)] = 1;
        return r;
    }
    require(c_.begin()->first >= 1, "exp needs positive q-valuation");
    require(!infinite_prec(), "exp of an exact series needs a truncation first");
    JacobiSeries acc = one(zrank_) + *this;
    JacobiSeries term = *this;
    long v = c_.begin()->first;
    for (long k = 2; k * v <= prec_; ++k) {
        term = term * *this * rat(1, k);
        if (term.is_zero_stored()) break;
        acc = acc + term;
    }
    return acc;
}

JacobiSeries JacobiSeries::scaled(long m) const {
    require(m >= 1, "scaled expects a positive factor");
    if (m == 1) return *this;
    JacobiSeries r(zrank_, qden_, infinite_prec() ? INF_PREC : prec_ * m, zden_);
    for (auto& [e, p] : c_) {
        ZPoly np;
        for (auto& [key, v] : p) np.emplace(m * key, v);
        r.c_[m * e] = std::move(np);
    }
    return r;
}

JacobiSeries JacobiSeries::qshifted(const Rat& e) const {
    long ed = checked_long(Int(e.get_den()));
    long nq = lcm_long(qden_, ed);
    JacobiSeries a = rebase(nq);
    long off = checked_long(Int(e.get_num())) * (nq / ed);
    JacobiSeries r(zrank_, nq, sat_add(a.prec_, off), zden_);
    for (auto& [ex, p] : a.c_) r.c_[ex + off] = p;
    return r;
}

JacobiSeries JacobiSeries::zshifted(const std::vector<Rat>& zexp) const {
    long nz = zden_;
    for (auto& x : zexp) nz = lcm_long(nz, checked_long(Int(x.get_den())));
    JacobiSeries a = to_zden(nz);
    DualVec off = a.scale_key(zexp);
    JacobiSeries r(zrank_, qden_, prec_, nz);
    for (auto& [e, p] : a.c_) {
        ZPoly np;
        for (auto& [key, v] : p) np.emplace(key + off, v);
        r.c_[e] = std::move(np);
    }
    return r;
}

Rat JacobiSeries::qvaluation() const {
    require(!c_.empty(), "valuation of a series with no stored terms");
    return rat(c_.begin()->first, qden_);
}

void JacobiSeries::set_coeff(const Rat& qexp, const std::vector<Rat>& zexp, const Rat& v) {
    long nz = zden_;
    for (auto& x : zexp) nz = lcm_long(nz, checked_long(Int(x.get_den())));
    if (nz != zden_) *this = to_zden(nz);
    Rat scaled = qexp * qden_;
    require(is_integer(scaled), "q-exponent not representable over the series denominator");
    set_coeff_int(checked_long(scaled), scale_key(zexp), v);
}

void JacobiSeries::set_coeff_int(long qexp_num, const DualVec& key_scaled, const Rat& v) {
    require(int(key_scaled.size()) == zrank_, "character key has wrong length");
    if (v == 0) {
        auto it = c_.find(qexp_num);
        if (it != c_.end()) {
            it->second.erase(key_scaled);
            if (it->second.empty()) c_.erase(it);
        }
    } else {
        c_[qexp_num][key_scaled] = v;
    }
}

namespace {

std::string exp_str(long e, long den) {
    long g = gcd_long(e, den);
    long n = e / g, d = den / g;
    if (d == 1) return std::to_string(n);
    return "(" + std::to_string(n) + "/" + std::to_string(d) + ")";
}

std::string zkey_str(const DualVec& key, long zden, int zrank, const Lattice* K) {
    std::vector<Rat> coords(zrank);
    if (K != nullptr) {
        auto primal = K->primal_from_dual(key);
        for (int i = 0; i < zrank; ++i) coords[i] = primal[i] / zden;
    } else {
        for (int i = 0; i < zrank; ++i) coords[i] = rat(key[i], zden);
    }
    std::string s = "z[";
    for (int i = 0; i < zrank; ++i) {
        if (i) s += ",";
        s += coords[i].get_str();
    }
    return s + "]";
}

}  // namespace

std::string JacobiSeries::str(const Lattice* K) const {
    if (K != nullptr) require(K->rank() == zrank_, "lattice rank does not match zrank");
    std::ostringstream os;
    bool first = true;
    for (auto& [e, p] : c_)
        for (auto& [key, v] : p) {
            if (!first) os << (v > 0 ? " + " : " - ");
            Rat av = v > 0 || first ? v : Rat(-v);
            first = false;
            bool zero_key = is_zero(key);
            bool unit = av == 1;
            if (!unit || (zero_key && e == 0)) os << av.get_str();
            bool need_star = !unit;
            if (!zero_key) {
                if (need_star) os << "*";
                os << zkey_str(key, zden_, zrank_, K);
                need_star = true;
            }
            if (e != 0) {
                if (need_star) os << "*";
                os << "q^" << exp_str(e, qden_);
            }
        }
    if (first) os << "0";
    if (!infinite_prec()) os << " + O(q^" << exp_str(prec_ + 1, qden_) << ")";
    return os.str();
}

std::string JacobiSeries::dump() const {
    std::ostringstream os;
    os << "jacobi " << zrank_ << " " << qden_ << " " << zden_ << " "
       << (infinite_prec() ? std::string("inf") : std::to_string(prec_)) << "\n";
    for (auto& [e, p] : c_)
        for (auto& [key, v] : p) {
            os << e << " " << v.get_str();
            for (long k : key) os << " " << k;
            os << "\n";
        }
    os << "end\n";
    return os.str();
}

JacobiSeries JacobiSeries::parse(const std::string& dump) {
    std::istringstream is(dump);
    std::string tag, precs;
    int zrank;
    long qden, zden;
    is >> tag >> zrank >> qden >> zden >> precs;
    require(tag == "jacobi", "bad jacobi dump header");
    JacobiSeries r(zrank, qden, precs == "inf" ? INF_PREC : std::stol(precs), zden);
    std::string tok;
    while (is >> tok) {
        if (tok == "end") return r;
        long e = std::stol(tok);
        std::string cs;
        is >> cs;
        Rat v(cs);
        v.canonicalize();
        DualVec key(zrank);
        for (int i = 0; i < zrank; ++i) is >> key[i];
        require(bool(is), "truncated jacobi dump");
        if (v != 0) r.c_[e][key] = v;
    }
    throw std::invalid_argument("unterminated jacobi dump");
}

}  // namespace autprod
