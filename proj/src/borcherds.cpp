// SPDX-License-Identifier: MIT
#include "autprod/borcherds.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "autprod/matrix.hpp"

namespace autprod {

namespace {

bool zero_key(const DualVec& v) {
    return std::all_of(v.begin(), v.end(), [](long c) { return c == 0; });
}

DualVec key_sum(const DualVec& a, const DualVec& b) {
    DualVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

DualVec key_times(const DualVec& a, long s) {
    DualVec r(a);
    for (long& c : r) c *= s;
    return r;
}

// Coefficient at integral q-exponent x and integral character key l.
Rat read_at(const JacobiSeries& phi, long x, const DualVec& l) {
    return phi.coeff_int(x * phi.qden(), l);
}

// Read-modify-write that respects the precision window of s.
void add_at(JacobiSeries& s, long e_num, const DualVec& key, const Rat& v) {
    if (v == 0) return;
    if (!s.infinite_prec() && e_num > s.prec_num()) return;
    s.set_coeff_int(e_num, key, s.coeff_int(e_num, key) + v);
}

// Entries must exist for every divisor of N with matching rank, integral
// q-exponents, integral character keys and at least the q^0 row known.
void require_engine_tuple(const JacobiTuple& t) {
    require(t.N >= 1, "tuple level must be positive");
    require(t.L != nullptr, "tuple has no lattice");
    for (long d : divisors(t.N)) {
        const JacobiSeries& phi = t.at(d);
        std::string tag = "phi_" + std::to_string(d);
        require(phi.zrank() == t.L->rank(), tag + " has the wrong character rank");
        require(phi.zden() == 1, tag + " has fractional character keys");
        require(phi.infinite_prec() || phi.prec_num() >= 0, tag + " is not known to q^0");
        for (const auto& [e, zp] : phi.terms())
            require(e % phi.qden() == 0, tag + " has a non-integral q-exponent");
    }
}

// Largest pole depth -valuation across the entries, at least 0.
long pole_depth(const JacobiTuple& t) {
    long depth = 0;
    for (long d : divisors(t.N)) {
        const JacobiSeries& phi = t.at(d);
        if (phi.terms().empty()) continue;
        depth = std::max(depth, -(phi.terms().begin()->first / phi.qden()));
    }
    return depth;
}

// The q-exponent A of the lift, (1/24) sum_l phi_N(0, l).
Rat prefactor_a(const JacobiTuple& t) {
    const JacobiSeries& top = t.at(t.N);
    Rat a = 0;
    auto it = top.terms().find(0);
    if (it != top.terms().end())
        for (const auto& [key, v] : it->second) a += v;
    return a / 24;
}

void check_box(FJBox box) {
    require(box.q_max >= 0 && box.s_max >= 0, "box bounds must be nonnegative");
}

void check_input_precision(const JacobiTuple& t, FJBox box, const Rat& a) {
    Rat absa = a < 0 ? Rat(-a) : a;
    long base = box.q_max * box.s_max + checked_long(rat_ceil(absa)) + 1;
    for (long d : divisors(t.N)) {
        const JacobiSeries& phi = t.at(d);
        if (phi.infinite_prec()) continue;
        long need = (base + d * d - 1) / (d * d);
        if (phi.prec() < rat(need))
            throw PrecisionError("phi_" + std::to_string(d) + " is known to q-precision " +
                                 phi.prec().get_str() + " but the box needs " +
                                 std::to_string(need));
    }
}

// mult_d = (1/d) sum_{t|d} mu(d/t) phi_t, one series per divisor.
std::map<long, JacobiSeries> moebius_rows(const JacobiTuple& t) {
    std::map<long, JacobiSeries> rows;
    for (long d : divisors(t.N)) {
        JacobiSeries r = t.at(d) * rat(1, d);
        for (long s : divisors(d)) {
            if (s == d) continue;
            int mu = moebius(d / s);
            if (mu != 0) r = r + t.at(s) * rat(mu, d);
        }
        rows.emplace(d, std::move(r));
    }
    return rows;
}

Rat mult_value(const JacobiTuple& t, long n, const DualVec& l, long m) {
    Rat total = 0;
    for (long g : divisors(t.N)) {
        if (n != 0 && n % g != 0) continue;
        if (m != 0 && m % g != 0) continue;
        if (!Lattice::divisible(l, g)) continue;
        long x = (n / g) * (m / g);
        DualVec lg = Lattice::divided(l, g);
        for (long d : divisors(g)) {
            int mu = moebius(g / d);
            if (mu != 0) total += rat(mu, g) * read_at(t.at(d), x, lg);
        }
    }
    return total;
}

// Character keys that can carry a nonzero mult(n, ., m), from the stored
// support of the entries.  A row beyond an entry's precision has unknown
// support, so it raises PrecisionError instead of being skipped.
std::set<DualVec> mult_candidates(const JacobiTuple& t, long n, long m) {
    std::set<DualVec> cand;
    for (long g : divisors(t.N)) {
        if (n != 0 && n % g != 0) continue;
        if (m != 0 && m % g != 0) continue;
        long x = (n / g) * (m / g);
        for (long d : divisors(g)) {
            if (moebius(g / d) == 0) continue;
            const JacobiSeries& phi = t.at(d);
            long xn = x * phi.qden();
            if (!phi.infinite_prec() && xn > phi.prec_num())
                throw PrecisionError("mult(" + std::to_string(n) + ", ., " + std::to_string(m) +
                                     ") needs phi_" + std::to_string(d) + " at q^" +
                                     std::to_string(x) + " beyond its precision");
            auto it = phi.terms().find(xn);
            if (it == phi.terms().end()) continue;
            for (const auto& [key, v] : it->second)
                if (v != 0) cand.insert(key_times(key, g));
        }
    }
    return cand;
}

void collect_mult_row(const JacobiTuple& t, long m, long n_lo, long n_hi,
                      std::vector<MultTable::Entry>& out) {
    for (long n = n_lo; n <= n_hi; ++n) {
        if (m == 0 && n <= 0) continue;
        for (const DualVec& l : mult_candidates(t, n, m)) {
            Rat v = mult_value(t, n, l, m);
            if (v != 0) out.push_back({n, l, m, v});
        }
    }
}

// Triples (0, l, 0) with l < 0, the character-only factors.
void collect_zero_sector(const JacobiTuple& t, std::vector<MultTable::Entry>& out) {
    for (const DualVec& l : mult_candidates(t, 0, 0)) {
        if (zero_key(l) || is_sign_positive(l)) continue;
        Rat v = mult_value(t, 0, l, 0);
        if (v != 0) out.push_back({0, l, 0, v});
    }
}

void zpoly_entry_add(ZPoly& p, const DualVec& key, const Rat& v) {
    auto [it, fresh] = p.emplace(key, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) p.erase(it);
    }
}

// Joint powers of one factor group prod_i (1 - q^n zeta^{l_i} s^m)^{r_i}:
// acc[k] is the character polynomial multiplying q^{kn} s^{km}.
std::vector<ZPoly> factor_powers(const std::vector<MultTable::Entry>& fac, size_t lo, size_t hi,
                                 long cap, int rank) {
    std::vector<ZPoly> acc(size_t(cap) + 1);
    acc[0].emplace(DualVec(size_t(rank), 0), Rat(1));
    for (size_t i = lo; i < hi; ++i) {
        // bin[k] = (-1)^k binom(r, k), the q^{kn} s^{km} zeta^{k l} weights
        const Rat& r = fac[i].value;
        std::vector<Rat> bin(size_t(cap) + 1);
        std::vector<DualVec> shift(size_t(cap) + 1);
        bin[0] = 1;
        shift[0] = DualVec(size_t(rank), 0);
        for (long k = 1; k <= cap; ++k) {
            bin[size_t(k)] = bin[size_t(k - 1)] * (r - (k - 1)) / k * -1;
            shift[size_t(k)] = key_times(fac[i].l, k);
        }
        for (long j = cap; j >= 1; --j) {
            ZPoly& dst = acc[size_t(j)];
            for (long k = 1; k <= j; ++k) {
                if (bin[size_t(k)] == 0) continue;
                for (const auto& [key, v] : acc[size_t(j - k)])
                    zpoly_entry_add(dst, key_sum(key, shift[size_t(k)]), v * bin[size_t(k)]);
            }
        }
    }
    return acc;
}

// Multiply a slice by a character polynomial through a rebuilt copy.
void apply_zpoly(JacobiSeries& s, const ZPoly& f, int rank) {
    JacobiSeries r = JacobiSeries::zero(rank, s.qden(), s.prec_num());
    for (const auto& [e, zp] : s.terms())
        for (const auto& [key, v] : zp)
            for (const auto& [fk, fv] : f) add_at(r, e, key_sum(key, fk), v * fv);
    s = std::move(r);
}

std::string fmt_monomial(long mm, long e, long nq, const DualVec& key, long nz) {
    std::ostringstream o;
    o << "s^" << mm << " q^(" << rat(e, nq).get_str() << ") zeta[";
    for (size_t i = 0; i < key.size(); ++i) o << (i ? ", " : "") << rat(key[i], nz).get_str();
    o << "]";
    return o.str();
}

JacobiSeries clip_slice(JacobiSeries s, long q_max, long mm) {
    if (!s.infinite_prec() && s.prec() < rat(q_max))
        throw PrecisionError("slice s^" + std::to_string(mm) +
                             " is only determined to q-precision " + s.prec().get_str() +
                             " of the requested " + std::to_string(q_max));
    return s.truncated(rat(q_max));
}

struct ExpandSetup {
    WeylVector w;
    Rat weight;
    long c0 = 0;      // s-valuation
    long budget = 0;  // number of slices above it
    long depth = 0;   // pole depth of the entries
};

ExpandSetup expand_setup(const JacobiTuple& tuple, FJBox box, bool need_b_integral) {
    require_engine_tuple(tuple);
    check_box(box);
    ExpandSetup es;
    es.w = weyl_vector(tuple);
    es.weight = product_weight(tuple);
    check_input_precision(tuple, box, es.w.A);
    require(is_integer(es.w.C),
            "s-valuation " + es.w.C.get_str() + " is not an integer, cannot slice");
    es.c0 = checked_long(es.w.C);
    require(box.s_max >= es.c0, "box ends below the s-valuation " + es.w.C.get_str());
    if (need_b_integral)
        for (const Rat& b : es.w.B)
            require(is_integer(b), "character valuation " + b.get_str() + " is not integral");
    es.budget = box.s_max - es.c0;
    es.depth = pole_depth(tuple);
    return es;
}

}  // namespace

WeylVector weyl_vector(const JacobiTuple& tuple) {
    require_engine_tuple(tuple);
    const Lattice& L = *tuple.L;
    const JacobiSeries& top = tuple.at(tuple.N);
    WeylVector w;
    w.A = 0;
    w.B.assign(size_t(L.rank()), Rat(0));
    Rat normsum = 0;
    auto it = top.terms().find(0);
    if (it != top.terms().end()) {
        for (const auto& [key, v] : it->second) {
            w.A += v;
            if (!zero_key(key) && is_sign_positive(key)) {
                for (size_t i = 0; i < key.size(); ++i) w.B[i] += v * key[i];
                normsum += v * L.norm2(key);
            }
        }
    }
    w.A /= 24;
    for (Rat& b : w.B) b /= 2;
    w.C = w.A;
    for (const auto& [e, zp] : top.terms()) {
        if (e >= 0) break;
        long n = -(e / top.qden());
        Rat rowsum = 0;
        for (const auto& [key, v] : zp) rowsum += v;
        w.C -= sigma1(n) * rowsum;
    }
    if (L.rank() >= 1) {
        Rat alt = normsum / L.rank();
        if (alt != w.C)
            throw VerifyError("Weyl vector mismatch: C = " + w.C.get_str() +
                              " but the norm formula gives " + alt.get_str());
    }
    return w;
}

Rat product_weight(const JacobiTuple& tuple) {
    require_engine_tuple(tuple);
    DualVec zerok(size_t(tuple.L->rank()), 0);
    Rat w = 0;
    for (long d : divisors(tuple.N)) w += euler_phi(tuple.N / d) * read_at(tuple.at(d), 0, zerok);
    w /= 2 * tuple.N;
    Rat alt = 0;
    for (long d : divisors(tuple.N))
        for (long s : divisors(d)) {
            int mu = moebius(d / s);
            if (mu != 0) alt += rat(mu, 2 * d) * read_at(tuple.at(s), 0, zerok);
        }
    check(w == alt, "weight formulas disagree");
    return w;
}

MultTable::MultTable(const JacobiTuple& tuple, FJBox box) : tuple_(tuple), box_(box) {
    require_engine_tuple(tuple_);
    check_box(box);
    check_input_precision(tuple_, box, prefactor_a(tuple_));
    rows_ = moebius_rows(tuple_);
    long depth = pole_depth(tuple_);
    for (long m = 0; m <= box.s_max; ++m) {
        if (m == 0) {
            collect_zero_sector(tuple_, entries_);
            collect_mult_row(tuple_, 0, 1, box.q_max, entries_);
        } else {
            collect_mult_row(tuple_, m, -std::min(tuple_.N, m) * depth, box.q_max, entries_);
        }
    }
    for (const Entry& e : entries_)
        if (!is_integer(e.value) && offenders_.size() < 16) offenders_.push_back(e);
}

const JacobiSeries& MultTable::row(long d) const {
    auto it = rows_.find(d);
    require(it != rows_.end(), "no multiplicity row for divisor " + std::to_string(d));
    return it->second;
}

Rat MultTable::mult_d(long d, long x, const DualVec& l) const { return read_at(row(d), x, l); }

Rat MultTable::mult(long n, const DualVec& l, long m) const {
    return mult_value(tuple_, n, l, m);
}

JacobiSeries theta_f(const JacobiTuple& tuple, const Rat& qprec) {
    require_engine_tuple(tuple);
    int rank = tuple.L->rank();
    auto rows = moebius_rows(tuple);
    EtaShape shape;
    std::vector<std::tuple<long, DualVec, long>> thetas;
    Rat slack = 1;
    for (long d : divisors(tuple.N)) {
        auto it = rows.at(d).terms().find(0);
        if (it == rows.at(d).terms().end()) continue;
        std::map<DualVec, Rat> pos, neg;
        for (const auto& [key, v] : it->second) {
            if (v == 0) continue;
            if (!is_integer(v))
                throw VerifyError("theta_F exponent mult_" + std::to_string(d) + "(0, l) = " +
                                  v.get_str() + " is not an integer");
            if (zero_key(key)) {
                long e = checked_long(v);
                shape.factors.emplace_back(d, e);
                slack += rat(d * (e < 0 ? -e : e), 24);
            } else if (is_sign_positive(key)) {
                pos.emplace(key, v);
            } else {
                neg.emplace(sign_normalized(key), v);
            }
        }
        if (pos != neg)
            throw VerifyError("mult_" + std::to_string(d) +
                              "(0, l) is not symmetric under l -> -l");
        for (const auto& [key, v] : pos) {
            long e = checked_long(v);
            if (e < 0)
                throw VerifyError("negative theta_F exponent mult_" + std::to_string(d) +
                                  "(0, l) = " + v.get_str() + " at l != 0");
            if (e == 0) continue;
            thetas.emplace_back(d, key, e);
            slack += rat(d * e, 12);
        }
    }
    std::sort(shape.factors.begin(), shape.factors.end());
    Rat margin = qprec + slack;
    JacobiSeries result = JacobiSeries::from_qseries(eta_quotient(shape, margin), rank);
    for (const auto& [d, l, e] : thetas) result = result * odd_theta_quotient(d, l, margin).pow(e);
    return result.truncated(qprec);
}

JacobiSeries hecke_minus(const JacobiSeries& phi, long k, long m, long t) {
    require(m >= 1, "Hecke index must be positive");
    require(t >= 1, "level must be positive");
    require(phi.zden() == 1, "phi must have integral character keys");
    long qden = phi.qden();
    for (const auto& [e, zp] : phi.terms())
        require(e % qden == 0, "phi has a non-integral q-exponent");
    long oprec = JacobiSeries::INF_PREC;
    if (!phi.infinite_prec()) {
        long p = phi.prec_num();
        oprec = p >= 0 ? p / m : -((-p + m - 1) / m);
    }
    JacobiSeries out(phi.zrank(), qden, oprec, 1);
    for (long a : divisors(m)) {
        if (gcd_long(a, t) != 1) continue;
        long mp = m / a;
        Rat w = qpow(rat(a), k - 1);
        for (const auto& [e, zp] : phi.terms()) {
            long x = e / qden;
            if (x % mp != 0) continue;
            long ne = a * (x / mp) * qden;
            for (const auto& [key, c] : zp) add_at(out, ne, key_times(key, a), w * c);
        }
    }
    return out;
}

FJProduct expand_product(const JacobiTuple& tuple, FJBox box) {
    ExpandSetup es = expand_setup(tuple, box, true);
    int rank = tuple.L->rank();
    long qden = checked_long(Int(es.w.A.get_den()));
    long prec_num = box.q_max * qden;
    long floor_a = checked_long(rat_floor(es.w.A));

    std::map<long, JacobiSeries> slices;
    for (long mm = es.c0; mm <= box.s_max; ++mm)
        slices.emplace(mm, JacobiSeries::zero(rank, qden, prec_num));
    DualVec bkey(size_t(rank), 0);
    for (size_t i = 0; i < bkey.size(); ++i) bkey[i] = checked_long(es.w.B[i]);
    add_at(slices.at(es.c0), checked_long(es.w.A * qden), bkey, 1);

    // factors beyond these bounds cannot reach the box: a single application
    // of q^n s^m lands at q >= n + A - (remaining s-room) * depth
    std::vector<MultTable::Entry> fac;
    collect_zero_sector(tuple, fac);
    size_t zcount = fac.size();
    collect_mult_row(tuple, 0, 1, box.q_max - floor_a + es.budget * es.depth, fac);
    for (long m = 1; m <= es.budget; ++m)
        collect_mult_row(tuple, m, -std::min(tuple.N, m) * es.depth,
                         box.q_max - floor_a + (es.budget - m) * es.depth, fac);

    for (size_t zi = 0; zi < zcount; ++zi) {
        const MultTable::Entry& en = fac[zi];
        require(is_integer(en.value) && en.value >= 0,
                "character factor needs a nonnegative integer exponent, got " +
                    en.value.get_str());
        long r = checked_long(en.value);
        ZPoly f;
        Rat b = 1;
        for (long k = 0; k <= r; ++k) {
            zpoly_entry_add(f, key_times(en.l, k), k % 2 ? Rat(-b) : b);
            b = b * (r - k) / (k + 1);
        }
        for (auto& [mm, sl] : slices) apply_zpoly(sl, f, rank);
    }

    size_t i = zcount;
    while (i < fac.size()) {
        size_t j = i;
        while (j < fac.size() && fac[j].m == fac[i].m && fac[j].n == fac[i].n) ++j;
        long n = fac[i].n, m = fac[i].m;
        long cap = es.budget;
        if (m >= 1) cap = std::min(cap, es.budget / m);
        if (n >= 1) cap = std::min(cap, (box.q_max - floor_a + es.budget * es.depth) / n);
        if (cap <= 0) {
            i = j;
            continue;
        }
        std::vector<ZPoly> acc = factor_powers(fac, i, j, cap, rank);
        if (m >= 1) {
            // descending targets read lower slices this group has not touched
            for (long t = box.s_max; t >= es.c0 + m; --t) {
                JacobiSeries& dst = slices.at(t);
                for (long k = 1; k <= cap && t - k * m >= es.c0; ++k) {
                    if (acc[size_t(k)].empty()) continue;
                    long shift = k * n * qden;
                    for (const auto& [e, zp] : slices.at(t - k * m).terms()) {
                        long ne = e + shift;
                        if (ne > prec_num) continue;
                        for (const auto& [key, v] : zp)
                            for (const auto& [ak, av] : acc[size_t(k)])
                                add_at(dst, ne, key_sum(key, ak), v * av);
                    }
                }
            }
        } else {
            // in-place along q: snapshot first, writes can erase map nodes
            for (auto& [mm, sl] : slices) {
                std::vector<std::tuple<long, DualVec, Rat>> snap;
                for (const auto& [e, zp] : sl.terms())
                    for (const auto& [key, v] : zp) snap.emplace_back(e, key, v);
                for (const auto& [e, key, v] : snap)
                    for (long k = 1; k <= cap; ++k) {
                        long ne = e + k * n * qden;
                        if (ne > prec_num) break;
                        if (acc[size_t(k)].empty()) continue;
                        for (const auto& [ak, av] : acc[size_t(k)])
                            add_at(sl, ne, key_sum(key, ak), v * av);
                    }
            }
        }
        i = j;
    }

    FJProduct p;
    p.weyl = es.w;
    p.weight = es.weight;
    p.box = box;
    p.coeffs = std::move(slices);
    return p;
}

FJProduct expand_exp(const JacobiTuple& tuple, FJBox box) {
    ExpandSetup es = expand_setup(tuple, box, true);
    int rank = tuple.L->rank();
    DualVec zerok(size_t(rank), 0);
    for (long d : divisors(tuple.N)) {
        auto it = tuple.at(d).terms().find(0);
        if (it == tuple.at(d).terms().end()) continue;
        for (const auto& [key, v] : it->second)
            if (v != 0 && !zero_key(key))
                throw VerifyError("phi_" + std::to_string(d) +
                                  "(0, l) != 0 at l != 0: the exponential route cannot "
                                  "expand this character factor");
    }
    long capstar = checked_long(rat_ceil(rat(box.q_max) - es.w.A));
    auto cap_of = [&](long j) { return capstar + (es.budget - j) * es.depth; };

    // Y_j collects -phi_{(a,N)}(nm, l)/a q^{an} zeta^{al} over am = j, m >= 1;
    // claimed precision is limited by what the entries can support
    std::map<long, long> yprec;
    for (long j = 1; j <= es.budget; ++j) yprec[j] = cap_of(j);
    for (long m = 1; m <= es.budget; ++m)
        for (long a = 1; a * m <= es.budget; ++a) {
            const JacobiSeries& phi = tuple.at(gcd_long(a, tuple.N));
            if (phi.infinite_prec()) continue;
            long p = phi.prec_num() / phi.qden();
            yprec[a * m] = std::min(yprec[a * m], a * (p / m) + a - 1);
        }
    std::map<long, JacobiSeries> ys;
    for (long j = 1; j <= es.budget; ++j) ys.emplace(j, JacobiSeries::zero(rank, 1, yprec[j]));
    for (long m = 1; m <= es.budget; ++m)
        for (long a = 1; a * m <= es.budget; ++a) {
            const JacobiSeries& phi = tuple.at(gcd_long(a, tuple.N));
            JacobiSeries& dst = ys.at(a * m);
            Rat c = rat(-1, a);
            for (const auto& [e, zp] : phi.terms()) {
                long x = e / phi.qden();
                if (x % m != 0) continue;
                long ne = a * (x / m);
                if (ne > dst.prec_num()) break;
                for (const auto& [key, v] : zp) add_at(dst, ne, key_times(key, a), c * v);
            }
        }
    // the m = 0 sector contributes -sum_a phi_a(0,0)/a sum_{n>=1} q^{an}
    long cap0 = cap_of(0);
    JacobiSeries y0 = JacobiSeries::zero(rank, 1, cap0);
    for (long a = 1; a <= cap0; ++a) {
        Rat c = read_at(tuple.at(gcd_long(a, tuple.N)), 0, zerok);
        if (c == 0) continue;
        c = -c / a;
        for (long n = 1; a * n <= cap0; ++n) add_at(y0, a * n, zerok, c);
    }

    std::vector<JacobiSeries> es_exp;
    es_exp.push_back(y0.exp_series());
    for (long j = 1; j <= es.budget; ++j) {
        JacobiSeries acc = JacobiSeries::zero(rank, 1, cap_of(j));
        for (long i = 1; i <= j; ++i)
            acc = acc + ys.at(i) * es_exp[size_t(j - i)] * rat(i, j);
        es_exp.push_back(std::move(acc));
    }

    FJProduct p;
    p.weyl = es.w;
    p.weight = es.weight;
    p.box = box;
    bool shiftz = !std::all_of(es.w.B.begin(), es.w.B.end(), [](const Rat& b) { return b == 0; });
    for (long j = 0; j <= es.budget; ++j) {
        JacobiSeries s = es_exp[size_t(j)].qshifted(es.w.A);
        if (shiftz) s = s.zshifted(es.w.B);
        p.coeffs.emplace(es.c0 + j, clip_slice(std::move(s), box.q_max, es.c0 + j));
    }
    return p;
}

FJProduct expand_fj(const JacobiTuple& tuple, FJBox box) {
    ExpandSetup es = expand_setup(tuple, box, false);
    int rank = tuple.L->rank();
    JacobiSeries th = theta_f(tuple, rat(box.q_max + es.budget * es.depth));
    if (th.qvaluation() != es.w.A)
        throw VerifyError("theta_F valuation " + th.qvaluation().get_str() +
                          " disagrees with the Weyl vector exponent " + es.w.A.get_str());
    long capstar = checked_long(rat_ceil(rat(box.q_max) - es.w.A));
    auto cap_of = [&](long j) { return capstar + (es.budget - j) * es.depth; };

    std::map<long, JacobiSeries> ys;
    for (long d : divisors(tuple.N))
        for (long mp = 1; d * mp <= es.budget; ++mp) {
            JacobiSeries h = (hecke_minus(tuple.at(d), 0, mp, tuple.N / d).scaled(d) * rat(-1, d))
                                 .truncated(rat(cap_of(d * mp)));
            auto [it, fresh] = ys.emplace(d * mp, h);
            if (!fresh) it->second = it->second + h;
        }
    std::vector<JacobiSeries> es_exp;
    es_exp.push_back(JacobiSeries::one(rank));
    for (long j = 1; j <= es.budget; ++j) {
        JacobiSeries acc = JacobiSeries::zero(rank, 1, cap_of(j));
        for (long i = 1; i <= j; ++i) {
            auto it = ys.find(i);
            if (it == ys.end()) continue;
            acc = acc + it->second * es_exp[size_t(j - i)] * rat(i, j);
        }
        es_exp.push_back(std::move(acc));
    }

    FJProduct p;
    p.weyl = es.w;
    p.weight = es.weight;
    p.box = box;
    for (long j = 0; j <= es.budget; ++j)
        p.coeffs.emplace(es.c0 + j, clip_slice(th * es_exp[size_t(j)], box.q_max, es.c0 + j));
    return p;
}

std::string first_difference(const FJProduct& a, const FJProduct& b) {
    for (const auto& [mm, sa] : a.coeffs) {
        auto itb = b.coeffs.find(mm);
        if (itb == b.coeffs.end()) continue;
        const JacobiSeries& sb = itb->second;
        long nq = lcm_long(sa.qden(), sb.qden());
        long nz = lcm_long(sa.zden(), sb.zden());
        JacobiSeries ra = sa.rebase(nq).to_zden(nz);
        JacobiSeries rb = sb.rebase(nq).to_zden(nz);
        long pmin = std::min(ra.prec_num(), rb.prec_num());
        std::set<long> rows;
        for (const auto& [e, zp] : ra.terms())
            if (e <= pmin) rows.insert(e);
        for (const auto& [e, zp] : rb.terms())
            if (e <= pmin) rows.insert(e);
        for (long e : rows) {
            std::set<DualVec> keys;
            for (const JacobiSeries* s : {&ra, &rb}) {
                auto it = s->terms().find(e);
                if (it == s->terms().end()) continue;
                for (const auto& [key, v] : it->second) keys.insert(key);
            }
            for (const DualVec& key : keys) {
                Rat va = ra.coeff_int(e, key), vb = rb.coeff_int(e, key);
                if (va != vb)
                    return fmt_monomial(mm, e, nq, key, nz) + ": " + va.get_str() + " vs " +
                           vb.get_str();
            }
        }
    }
    return "";
}

FJProduct expand_checked(const JacobiTuple& tuple, FJBox box) {
    FJProduct p = expand_product(tuple, box);
    FJProduct x = expand_exp(tuple, box);
    std::string d = first_difference(p, x);
    if (!d.empty())
        throw VerifyError("product and exponential expansions disagree at " + d);
    FJProduct f = expand_fj(tuple, box);
    d = first_difference(p, f);
    if (!d.empty())
        throw VerifyError("product and theta_F expansions disagree at " + d);
    return p;
}

bool singular_support(const FJProduct& P, const Lattice& L, std::string* offender) {
    for (const auto& [mm, s] : P.coeffs) {
        require(s.zrank() == L.rank(), "slice rank does not match the lattice");
        long zd = s.zden();
        for (const auto& [e, zp] : s.terms())
            for (const auto& [key, v] : zp) {
                if (v == 0) continue;
                Rat lhs = rat(2 * e * mm, s.qden());
                Rat rhs = L.norm2(key) / (zd * zd);
                if (lhs != rhs) {
                    if (offender)
                        *offender = fmt_monomial(mm, e, s.qden(), key, zd) + " has 2nm = " +
                                    lhs.get_str() + " but (l, l) = " + rhs.get_str();
                    return false;
                }
            }
    }
    return true;
}

namespace {

// Shift dual coordinates by the nearest lattice vector (Babai rounding),
// then pick the shortest coset element, ties broken canonically.
DualVec shortest_in_coset(const Lattice& L, const DualVec& v) {
    if (L.rank() == 0) return v;
    int r = L.rank();
    MatQ g(L.gram());
    std::vector<Rat> c(v.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = rat(v[i]);
    std::vector<Rat> x = solve(g, c);
    DualVec red = v;
    for (int i = 0; i < r; ++i) {
        long k = checked_long(rat_floor(x[size_t(i)] + rat(1, 2)));
        if (k == 0) continue;
        for (int j = 0; j < r; ++j) red[size_t(j)] -= k * checked_long(L.gram().at(j, i));
    }
    DualVec best = red;
    Rat bound = L.norm2(red);
    for (const DualVec& cand : short_coset_vectors(L, red, bound)) {
        Rat nn = L.norm2(cand);
        if (nn < bound || (nn == bound && canonical_less(cand, best))) {
            best = cand;
            bound = nn;
        }
    }
    return best;
}

}  // namespace

Rat divisor_multiplicity(const JacobiTuple& tuple, long n, const DualVec& l, long m, long depth) {
    require_engine_tuple(tuple);
    require(depth >= 1, "depth must be positive");
    const Lattice& L = *tuple.L;
    require(l.size() == size_t(L.rank()), "dual vector has the wrong length");
    long g = gcd_long(n < 0 ? -n : n, m < 0 ? -m : m);
    for (long c : l) g = gcd_long(g, c < 0 ? -c : c);
    require(g == 1, "lambda = (n, l, m) must be primitive");
    Rat lam2 = rat(2 * n * m) + L.norm2(l);
    require(lam2 > 0, "lambda^2 = " + lam2.get_str() + " is not positive");
    Rat total = 0;
    for (long a = 1; a <= depth; ++a) {
        DualVec rep = shortest_in_coset(L, key_times(l, a));
        Rat xr = -lam2 * a * a / 2 + L.q_value(rep);
        check(is_integer(xr), "divisor discriminant is not an integer");
        long x = checked_long(xr);
        for (long d : divisors(tuple.N)) {
            const JacobiSeries& phi = tuple.at(d);
            if (phi.terms().empty()) continue;
            if (x * phi.qden() < phi.terms().begin()->first) continue;
            total += euler_phi(tuple.N / d) * read_at(phi, x, rep);
        }
    }
    return total / tuple.N;
}

AdditiveLift additive_lift(const JacobiTuple& tuple, long k, FJBox box) {
    require_engine_tuple(tuple);
    check_box(box);
    require(k >= 1, "weight must be a positive integer");
    check_input_precision(tuple, box, Rat(0));
    int rank = tuple.L->rank();
    AdditiveLift out;
    out.box = box;

    JacobiSeries m0 = JacobiSeries::zero(rank, 1, box.q_max);
    bool unresolved = false;
    for (long d : divisors(tuple.N)) {
        const JacobiSeries& phi = tuple.at(d);
        auto it = phi.terms().find(0);
        if (it == phi.terms().end()) continue;
        long inner = (box.q_max + d - 1) / d;
        long cop = tuple.N / d;
        JacobiSeries part = JacobiSeries::zero(rank, 1, inner);
        for (const auto& [key, v] : it->second) {
            if (v == 0) continue;
            bool kz = zero_key(key);
            if (kz) unresolved = true;
            for (long a = 1; a <= inner; ++a) {
                if (gcd_long(a, cop) != 1) continue;
                Rat c = qpow(rat(a), k - 1) * v;
                DualVec ak = key_times(key, a);
                if (!kz && is_sign_positive(key)) add_at(part, 0, ak, c);
                for (long np = 1; a * np <= inner; ++np) add_at(part, a * np, ak, c);
            }
        }
        m0 = m0 + part.scaled(d) * qpow(rat(d), k - 1);
    }
    out.constant_unresolved = unresolved;
    out.coeffs.emplace(0, clip_slice(std::move(m0), box.q_max, 0));

    for (long m = 1; m <= box.s_max; ++m) {
        JacobiSeries s = JacobiSeries::zero(rank, 1, box.q_max);
        for (long d : divisors(gcd_long(m, tuple.N)))
            s = s + hecke_minus(tuple.at(d), k, m / d, tuple.N / d).scaled(d) * qpow(rat(d), k - 1);
        out.coeffs.emplace(m, clip_slice(std::move(s), box.q_max, m));
    }
    return out;
}

std::string FJProduct::dump() const {
    std::ostringstream o;
    o << "weyl " << weyl.A.get_str();
    for (const Rat& b : weyl.B) o << " " << b.get_str();
    o << " " << weyl.C.get_str() << "\n";
    o << "weight " << weight.get_str() << "\n";
    for (const auto& [mm, s] : coeffs)
        for (const auto& [e, zp] : s.terms())
            for (const auto& [key, v] : zp) {
                if (v == 0) continue;
                o << mm << " " << rat(e, s.qden()).get_str();
                for (size_t i = 0; i < key.size(); ++i)
                    o << " " << rat(key[i], s.zden()).get_str();
                o << " " << v.get_str() << "\n";
            }
    return o.str();
}

std::string FJProduct::str(const Lattice* K) const {
    std::ostringstream o;
    o << "weight " << weight.get_str() << ", leading monomial q^(" << weyl.A.get_str()
      << ") zeta^[";
    for (size_t i = 0; i < weyl.B.size(); ++i) o << (i ? ", " : "") << weyl.B[i].get_str();
    o << "] s^(" << weyl.C.get_str() << ")\n";
    for (const auto& [mm, s] : coeffs) o << "s^" << mm << ": " << s.str(K) << "\n";
    return o.str();
}

}  // namespace autprod
