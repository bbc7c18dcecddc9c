// SPDX-License-Identifier: MIT
#include "autprod/jmap.hpp"

#include <cstdlib>

namespace autprod {

namespace {

Rat mod1(const Rat& x) {
    Rat r = x - Rat(rat_floor(x));
    r.canonicalize();
    return r;
}

std::vector<DualVec> coset_vectors(const Lattice& L, const DualVec& rep, const Rat& qbound) {
    if (L.rank() == 0) return {DualVec{}};
    if (qbound < 0) return {};
    return short_coset_vectors(L, rep, 2 * qbound);
}

// Smallest stored exponent over the (a, 0, gamma) components, floored.
long slice_valuation_floor(const VectorValuedForm& F, long N, const Lattice& L) {
    Rat vm(0);
    for (long a = 0; a < N; ++a)
        for (auto& gamma : L.coset_representatives()) {
            const QSeries& c = F.component(embed_label(*F.M, N, a, gamma));
            if (c.is_zero_stored()) continue;
            Rat v = c.valuation();
            if (v < vm) vm = v;
        }
    return checked_long(rat_floor(vm));
}

JacobiTuple tuple_shell(const VectorValuedForm& F) {
    CuspSplit sp = split_cusp_lattice(*F.M);
    JacobiTuple t;
    t.N = sp.N;
    t.L = std::make_shared<Lattice>(sp.L);
    return t;
}

void check_unit_invariance(const VectorValuedForm& F, long N, const Lattice& L) {
    for (long u = 2; u < N; ++u) {
        if (gcd_long(u, N) != 1) continue;
        for (long a = 0; a < N; ++a)
            for (auto& gamma : L.coset_representatives()) {
                const QSeries& lhs = F.component(embed_label(*F.M, N, a, gamma));
                const QSeries& rhs = F.component(embed_label(*F.M, N, (u * a) % N, gamma));
                if (!(lhs == rhs))
                    throw VerifyError("components are not invariant under (Z/N)*: label a = " +
                                      std::to_string(a) + ", unit " + std::to_string(u));
            }
    }
}

}  // namespace

const JacobiSeries& JacobiTuple::at(long d) const {
    auto it = entries.find(d);
    require(it != entries.end(), "tuple has no entry for divisor " + std::to_string(d));
    return it->second;
}

CuspSplit split_cusp_lattice(const Lattice& M) {
    const MatZ& g = M.gram();
    int r = M.rank();
    require(r >= 4, "lattice is too small for a U(N) + U + L decomposition");
    auto off_block_zero = [&](int i) {
        for (int j = 0; j < r; ++j)
            if (j / 2 != i / 2 && g.at(i, j) != 0) return false;
        return true;
    };
    require(g.at(0, 0) == 0 && g.at(1, 1) == 0 && g.at(0, 1) > 0 && off_block_zero(0) &&
                off_block_zero(1),
            "leading block is not a rescaled hyperbolic plane");
    require(g.at(2, 2) == 0 && g.at(3, 3) == 0 && g.at(2, 3) == 1 && off_block_zero(2) &&
                off_block_zero(3),
            "second block is not a hyperbolic plane");
    long N = checked_long(g.at(0, 1));
    MatZ gl(r - 4, r - 4);
    for (int i = 4; i < r; ++i)
        for (int j = 4; j < r; ++j) gl.at(i - 4, j - 4) = g.at(i, j);
    Lattice L(gl);
    require(L.rank() == 0 || L.is_positive_definite(), "trailing block is not positive definite");
    return {N, L};
}

DualVec embed_label(const Lattice& M, long N, long a, const DualVec& gamma) {
    DualVec v(static_cast<size_t>(M.rank()), 0);
    v[1] = ((a % N) + N) % N;
    for (size_t i = 0; i < gamma.size(); ++i) v[4 + i] = gamma[i];
    return v;
}

JacobiTuple jmap_forward(const VectorValuedForm& F, long qprec) {
    require(F.basis == VVBasis::E, "jmap expects components in the standard basis");
    JacobiTuple t = tuple_shell(F);
    long N = t.N;
    const Lattice& L = *t.L;
    long vm = slice_valuation_floor(F, N, L);
    std::vector<long> ds = divisors(N);
    for (long d : ds) t.entries.emplace(d, JacobiSeries(L.rank(), 1, qprec));
    for (auto& gamma : L.coset_representatives()) {
        std::vector<const QSeries*> comp(N);
        for (long a = 0; a < N; ++a) comp[a] = &F.component(embed_label(*F.M, N, a, gamma));
        for (auto& l : coset_vectors(L, gamma, rat(qprec) - vm)) {
            Rat ql = L.q_value(l);
            for (long n = checked_long(rat_ceil(ql + vm)); n <= qprec; ++n) {
                std::vector<Rat> ca(N);
                bool any = false;
                for (long a = 0; a < N; ++a) {
                    ca[a] = comp[a]->coeff(n - ql);
                    if (ca[a] != 0) any = true;
                }
                if (!any) continue;
                for (long d : ds) {
                    CycQ acc(N);
                    for (long a = 0; a < N; ++a) acc += CycQ::root(N, a * d) * ca[a];
                    if (!acc.is_rational())
                        throw VerifyError("tuple coefficient is not rational at q^" +
                                          std::to_string(n));
                    Rat v = acc.rational_part();
                    if (v != 0) t.entries.at(d).set_coeff_int(n, l, v);
                }
            }
        }
    }
    return t;
}

JacobiTuple jmap_forward_moebius(const VectorValuedForm& F, long qprec) {
    require(F.basis == VVBasis::E, "jmap expects components in the standard basis");
    JacobiTuple t = tuple_shell(F);
    long N = t.N;
    const Lattice& L = *t.L;
    check_unit_invariance(F, N, L);
    long vm = slice_valuation_floor(F, N, L);
    std::vector<long> ds = divisors(N);
    for (long d : ds) t.entries.emplace(d, JacobiSeries(L.rank(), 1, qprec));
    for (auto& gamma : L.coset_representatives()) {
        std::vector<const QSeries*> comp;
        for (long c : ds) comp.push_back(&F.component(embed_label(*F.M, N, c % N, gamma)));
        for (auto& l : coset_vectors(L, gamma, rat(qprec) - vm)) {
            Rat ql = L.q_value(l);
            for (long n = checked_long(rat_ceil(ql + vm)); n <= qprec; ++n)
                for (long d : ds) {
                    Rat acc(0);
                    for (size_t ci = 0; ci < ds.size(); ++ci)
                        acc += rat(ramanujan_sum(d, N / ds[ci])) * comp[ci]->coeff(n - ql);
                    if (acc != 0) t.entries.at(d).set_coeff_int(n, l, acc);
                }
        }
    }
    return t;
}

JacobiTuple jmap_forward_theta(const VectorValuedForm& F, long qprec) {
    require(F.basis == VVBasis::E, "jmap expects components in the standard basis");
    JacobiTuple t = tuple_shell(F);
    long N = t.N;
    const Lattice& L = *t.L;
    long vm = slice_valuation_floor(F, N, L);
    std::vector<long> ds = divisors(N);
    for (long d : ds) t.entries.emplace(d, JacobiSeries(L.rank(), 1, qprec));
    for (auto& gamma : L.coset_representatives()) {
        std::vector<const QSeries*> comp(N);
        for (long a = 0; a < N; ++a) {
            comp[a] = &F.component(embed_label(*F.M, N, a, gamma));
            require(comp[a]->prec() >= qprec, "component precision is below the requested box");
        }
        JacobiSeries theta = L.rank() == 0 ? JacobiSeries::one(0).truncated(rat(qprec) - vm)
                                           : theta_jacobi(L, gamma, rat(qprec) - vm);
        for (long d : ds) {
            // h_{d,gamma} = sum_a e(ad/N) c_{(a,0),gamma} as a scalar q-series.
            std::map<Rat, CycQ> acc;
            long den = 1;
            for (long a = 0; a < N; ++a) {
                den = lcm_long(den, comp[a]->den());
                for (auto& [e, cv] : comp[a]->terms()) {
                    Rat ex = rat(e, comp[a]->den());
                    if (ex > qprec) continue;
                    auto it = acc.try_emplace(ex, CycQ(N)).first;
                    it->second += CycQ::root(N, a * d) * cv;
                }
            }
            QSeries h(den, qprec * den);
            for (auto& [ex, cy] : acc) {
                if (cy.is_zero()) continue;
                if (!cy.is_rational())
                    throw VerifyError("theta-route coefficient is not rational at q^" +
                                      rat_str(ex));
                h.set_coeff(ex, cy.rational_part());
            }
            JacobiSeries& e = t.entries.at(d);
            e = e + (theta * h).truncated(rat(qprec));
        }
    }
    return t;
}

VectorValuedSlice jmap_inverse_slice(const JacobiTuple& tuple) {
    VectorValuedSlice s;
    s.N = tuple.N;
    s.L = tuple.L;
    const Lattice& L = *tuple.L;
    require(!tuple.entries.empty(), "empty tuple");
    Rat prec = tuple.entries.begin()->second.prec();
    long mlo = 0;
    for (auto& [d, j] : tuple.entries) {
        prec = std::min(prec, j.prec());
        if (!j.is_zero_stored()) mlo = std::min(mlo, checked_long(rat_floor(j.qvaluation())));
    }
    long mhi = checked_long(rat_floor(prec));
    s.comps.assign(static_cast<size_t>(tuple.N), {});
    for (long a = 0; a < tuple.N; ++a)
        for (auto& gamma : L.coset_representatives()) {
            Rat qg = L.q_value(gamma);
            std::vector<Rat> key(gamma.begin(), gamma.end());
            long cden = checked_long(den(mod1(qg)));
            QSeries c(cden, checked_long(rat_floor((prec - qg) * cden)));
            for (long m = mlo; m <= mhi; ++m) {
                Rat v(0);
                for (auto& [d, j] : tuple.entries)
                    v += rat(ramanujan_sum(a, tuple.N / d)) * j.coeff(rat(m), key);
                if (v != 0) c.set_coeff(m - qg, v / tuple.N);
            }
            s.comps[a].push_back(c);
        }
    return s;
}

VectorValuedSlice slice_of(const VectorValuedForm& F) {
    CuspSplit sp = split_cusp_lattice(*F.M);
    VectorValuedSlice s;
    s.N = sp.N;
    s.L = std::make_shared<Lattice>(sp.L);
    s.comps.assign(static_cast<size_t>(sp.N), {});
    for (long a = 0; a < sp.N; ++a)
        for (auto& gamma : sp.L.coset_representatives())
            s.comps[a].push_back(F.component(embed_label(*F.M, sp.N, a, gamma)));
    return s;
}

JacobiSeries integer_q_slice(const JacobiSeries& s) {
    long qden = s.qden();
    long prec = s.prec_num() >= JacobiSeries::INF_PREC ? JacobiSeries::INF_PREC
                                                       : checked_long(rat_floor(s.prec()));
    JacobiSeries out(s.zrank(), 1, prec, s.zden());
    for (auto& [e, zp] : s.terms()) {
        if (e % qden != 0) continue;
        for (auto& [key, v] : zp) out.set_coeff_int(e / qden, key, v);
    }
    return out;
}

JacobiTuple prime_tuple_from_eta(const EtaShape& shape, const Rat& scale, long p,
                                 const Lattice& L, long qprec, long qprec_p) {
    if (qprec_p < 0) qprec_p = qprec;
    require(qprec_p <= qprec, "phi_p precision cannot exceed phi_1 precision");
    require(is_prime(p), "tuple construction needs a prime level");
    require(L.rank() % 2 == 0, "odd-rank definite parts are not supported");
    long b1 = 0, bp = 0;
    for (auto [k, b] : shape.factors) {
        if (k == 1)
            b1 = b;
        else if (k == p)
            bp = b;
        else
            require(false, "eta quotient must have level dividing " + std::to_string(p));
    }
    require((b1 + bp) % 2 == 0, "input eta quotient must have integral weight");
    long kappa = (b1 + bp) / 2;
    require((b1 + p * bp) % 24 == 0, "eta quotient must have integral q-exponents");
    long vf = (b1 + p * bp) / 24;
    long dl = 1;
    if (L.rank() > 0) {
        const DiscriminantForm& D = L.discriminant_form();
        require(D.level == 1 || D.level == p,
                "definite part must have level 1 or " + std::to_string(p));
        dl = checked_long(D.group_order);
    }

    JacobiTuple t;
    t.N = p;
    t.L = std::make_shared<Lattice>(L);

    QSeries f = eta_quotient(shape, rat(qprec)) * scale;
    JacobiSeries theta0 = theta_jacobi(L, DualVec(L.rank(), 0), rat(qprec - vf));
    JacobiSeries phi1 = (theta0 * f).truncated(rat(qprec));

    // phi_1 | S in closed form; its valuation is (p b1 + bp) / (24 p).
    long marg = 2 + (labs(b1) + labs(bp)) / 24;
    QSeries seta = QSeries::one();
    if (b1 != 0) seta = seta * eta_quotient(EtaShape{{{1, b1}}}, rat(qprec_p + marg));
    if (bp != 0)
        seta = seta *
               eta_quotient(EtaShape{{{1, bp}}}, rat((qprec_p + marg) * p)).rescale_exponent(1, p);
    AlgScalar beta = AlgScalar::from_rat(scale) * AlgScalar::i_power(-kappa) *
                     AlgScalar::half_power(p, -bp) * AlgScalar::i_power(-L.rank() / 2) *
                     AlgScalar::inv_sqrt_int(dl);
    if (!beta.is_rational())
        throw VerifyError("square roots fail to cancel in phi_1 | S: residual scalar " +
                          beta.str());
    Rat vs = rat(p * b1 + bp, 24 * p);
    JacobiSeries thetad = L.rank() == 0 ? JacobiSeries::one(0).truncated(rat(qprec_p) - vs)
                                        : theta_dual_jacobi(L, rat(qprec_p) - vs);
    JacobiSeries slash = (thetad * seta) * beta.rat_value();
    JacobiSeries phip =
        (phi1.truncated(rat(qprec_p)) + integer_q_slice(slash) * rat(p)).truncated(rat(qprec_p));

    t.entries.emplace(1, phi1);
    t.entries.emplace(p, phip);
    return t;
}

}  // namespace autprod
