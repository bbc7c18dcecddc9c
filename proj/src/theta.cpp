// SPDX-License-Identifier: MIT
#include "autprod/jacobi.hpp"

namespace autprod {

namespace {

// Collect (Q(v), dual coords) for all v in gamma + K with Q(v) <= qprec.
std::vector<std::pair<Rat, DualVec>> coset_terms(const Lattice& K, const DualVec& gamma,
                                                 const Rat& qprec) {
    require(K.is_positive_definite(), "theta series needs a positive definite lattice");
    std::vector<std::pair<Rat, DualVec>> out;
    if (K.rank() == 0) {
        require(gamma.empty(), "coset rep has wrong length");
        if (qprec >= 0) out.push_back({Rat(0), {}});
        return out;
    }
    auto vecs = short_coset_vectors(K, gamma, 2 * qprec);
    out.reserve(vecs.size());
    for (auto& v : vecs) out.push_back({K.q_value(v), v});
    return out;
}

long common_qden(const std::vector<std::pair<Rat, DualVec>>& terms, const Rat& qprec) {
    long d = checked_long(Int(qprec.get_den()));
    for (auto& [q, v] : terms) d = lcm_long(d, checked_long(Int(q.get_den())));
    return d;
}

}  // namespace

JacobiSeries theta_jacobi(const Lattice& K, const DualVec& gamma, const Rat& qprec) {
    auto terms = coset_terms(K, gamma, qprec);
    long qden = common_qden(terms, qprec);
    long prec = checked_long(rat_floor(qprec * qden));
    JacobiSeries s(K.rank(), qden, prec);
    for (auto& [q, v] : terms) s.set_coeff_int(checked_long(Rat(q * qden)), v, 1);
    return s;
}

QSeries theta_qseries(const Lattice& K, const DualVec& gamma, const Rat& qprec) {
    auto terms = coset_terms(K, gamma, qprec);
    long qden = common_qden(terms, qprec);
    long prec = checked_long(rat_floor(qprec * qden));
    QSeries s(qden, prec);
    for (auto& [q, v] : terms) s.set_coeff(q, s.coeff(q) + 1);
    return s;
}

JacobiSeries theta_dual_jacobi(const Lattice& K, const Rat& qprec) {
    require(K.is_positive_definite(), "theta series needs a positive definite lattice");
    std::vector<std::pair<Rat, DualVec>> terms;
    if (K.rank() > 0)
        for (auto& v : short_dual_vectors(K, 2 * qprec)) terms.push_back({K.q_value(v), v});
    if (qprec >= 0) terms.push_back({Rat(0), DualVec(K.rank(), 0)});
    long qden = common_qden(terms, qprec);
    long prec = checked_long(rat_floor(qprec * qden));
    JacobiSeries s(K.rank(), qden, prec);
    for (auto& [q, v] : terms) s.set_coeff_int(checked_long(Rat(q * qden)), v, 1);
    return s;
}

JacobiSeries odd_theta_quotient(long d, const DualVec& l, const Rat& qprec) {
    require(d >= 1, "scale must be positive");
    int zrank = int(l.size());
    // Margin for dividing by eta(d tau) = q^(d/24) (1 + ...).
    Rat wprec = qprec + rat(d, 24) + 1;
    JacobiSeries th(zrank, 8, checked_long(rat_floor(wprec * 8)), 2);
    for (long k = 0;; ++k) {
        // nu = k + 1/2: exponent d nu^2 / 2 = d (2k+1)^2 / 8, sign (-1)^k,
        // key d nu l stored as d (2k+1) l over zden 2; nu and -nu pair up.
        long e = d * (2 * k + 1) * (2 * k + 1);
        if (e > th.prec_num()) break;
        Rat sgn = (k % 2 == 0) ? 1 : -1;
        th.set_coeff_int(e, (d * (2 * k + 1)) * l, sgn);
        th.set_coeff_int(e, (-d * (2 * k + 1)) * l, -sgn);
    }
    EtaShape inv_shape;
    inv_shape.factors = {{d, -1}};
    QSeries eta_inv = eta_quotient(inv_shape, wprec);
    return (th * eta_inv).truncated(qprec);
}

}  // namespace autprod
