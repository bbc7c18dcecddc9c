// SPDX-License-Identifier: MIT
#include "autprod/weilrep.hpp"

#include <sstream>

namespace autprod {

namespace {

Rat mod1(const Rat& x) {
    Rat r = x - Rat(rat_floor(x));
    r.canonicalize();
    return r;
}

// |D| = s^2 * m0 with m0 squarefree.
std::pair<long, long> square_split(long n) {
    long s = 1, m0 = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        while (m0 % (p * p) == 0) {
            m0 /= p * p;
            s *= p;
        }
    }
    return {s, m0};
}

// 1/sqrt(n) as an exact element of Q(zeta_order).
CycQ inv_sqrt_cyc(long order, long n) {
    auto [s, m0] = square_split(n);
    return cyclotomic_sqrt(order, m0) * rat(1, s * m0);
}

std::vector<std::vector<CycQ>> mat_mul(const std::vector<std::vector<CycQ>>& a,
                                       const std::vector<std::vector<CycQ>>& b, long order) {
    size_t n = a.size();
    std::vector<std::vector<CycQ>> c(n, std::vector<CycQ>(n, CycQ(order)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace

WeilRep weil_matrices(const Lattice& M) {
    const DiscriminantForm& D = M.discriminant_form();
    require(D.group_order <= 64,
            "dense Weil matrices are limited to discriminant groups of order <= 64");
    WeilRep W{M, checked_long(D.group_order), M.signature_mod8(), D.level,
              lcm_long(8, D.level),          M.coset_representatives(),
              {},
              {},
              {}};
    long n = W.dim;
    long m = W.modulus;
    W.qvals.reserve(n);
    for (auto& x : W.elements) W.qvals.push_back(mod1(M.q_value(x)));

    W.T.reserve(n);
    for (long i = 0; i < n; ++i) W.T.push_back(CycQ::e(m, mod1(-W.qvals[i])));

    CycQ kappa = CycQ::e(m, rat(W.sign8, 8)) * inv_sqrt_cyc(m, n);
    W.S.assign(n, std::vector<CycQ>(n, CycQ(m)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= i; ++j) {
            CycQ v = kappa * CycQ::e(m, mod1(M.pairing(W.elements[i], W.elements[j])));
            W.S[i][j] = v;
            W.S[j][i] = v;
        }

    // rho(S) is unitary: S conj(S)^T = 1.
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            CycQ acc(m);
            for (long k = 0; k < n; ++k) acc += W.S[i][k] * W.S[j][k].conj();
            check(acc == CycQ::rational(m, rat(i == j ? 1 : 0)), "Weil S matrix is not unitary");
        }
    return W;
}

bool weil_relations_hold(const WeilRep& W) {
    long n = W.dim, m = W.modulus;
    std::vector<std::vector<CycQ>> ST = W.S;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) ST[i][j] = ST[i][j] * W.T[j];
    auto ST2 = mat_mul(ST, ST, m);
    auto ST3 = mat_mul(ST2, ST, m);
    auto S2 = mat_mul(W.S, W.S, m);
    if (ST3 != S2) return false;
    // S^4 = e(sign/2): the identity for even signature, -1 for odd, where
    // S has order 8 on the metaplectic double cover.
    auto S4 = mat_mul(S2, S2, m);
    CycQ s4phase = CycQ::e(m, mod1(rat(W.sign8, 2)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (S4[i][j] != (i == j ? s4phase : CycQ(m))) return false;
    // S^2 e_x = e(sign/4) e_{-x}; the sign in the exponent matches the
    // e(+(x,y)) kernel of S, which is conjugate to the classical one.
    CycQ phase = CycQ::e(m, mod1(rat(W.sign8, 4)));
    for (long j = 0; j < n; ++j) {
        DualVec neg = W.elements[j];
        for (auto& c : neg) c = -c;
        long nj = W.index_of(neg);
        for (long i = 0; i < n; ++i)
            if (S2[i][j] != (i == nj ? phase : CycQ(m))) return false;
    }
    return true;
}

bool milgram_identity_holds(const Lattice& M) {
    const DiscriminantForm& D = M.discriminant_form();
    long m = lcm_long(8, D.level);
    CycQ gauss(m);
    for (auto& x : M.coset_representatives()) gauss += CycQ::e(m, mod1(M.q_value(x)));
    auto [s, m0] = square_split(checked_long(D.group_order));
    CycQ rhs = cyclotomic_sqrt(m, m0) * rat(s) * CycQ::e(m, mod1(rat(M.signature_mod8(), 8)));
    return gauss == rhs;
}

FBasis f_basis(long N) {
    require(N >= 1 && N <= 23, "f-basis supported for 1 <= N <= 23");
    long n = N * N;
    FBasis B{N, std::vector<std::vector<CycQ>>(n, std::vector<CycQ>(n, CycQ(N))),
             std::vector<std::vector<CycQ>>(n, std::vector<CycQ>(n, CycQ(N)))};
    auto idx = [N](long a, long b) { return ((a % N + N) % N) * N + ((b % N + N) % N); };
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b)
            for (long c = 0; c < N; ++c) {
                // f_{(a,b)} = (1/N) sum_c e(-ac/N) e_{(c,b)} and the
                // inverse e_{(a,b)} = sum_c e(ac/N) f_{(c,b)}.
                B.to_e[idx(c, b)][idx(a, b)] = CycQ::root(N, -a * c) * rat(1, N);
                B.to_f[idx(c, b)][idx(a, b)] = CycQ::root(N, a * c);
            }
    // to_e * to_f = identity, blockwise in b.
    for (long b = 0; b < N; ++b)
        for (long r = 0; r < N; ++r)
            for (long c = 0; c < N; ++c) {
                CycQ acc(N);
                for (long k = 0; k < N; ++k)
                    acc += B.to_e[idx(r, b)][idx(k, b)] * B.to_f[idx(k, b)][idx(c, b)];
                check(acc == CycQ::rational(N, rat(r == c ? 1 : 0)),
                      "f-basis change of basis is not involutive");
            }
    return B;
}

std::vector<CycQ> to_f_coeffs(long N, const std::vector<CycQ>& e_coeffs) {
    require(static_cast<long>(e_coeffs.size()) == N, "coefficient vector has wrong length");
    std::vector<CycQ> out(N, CycQ(N));
    for (long d = 0; d < N; ++d)
        for (long a = 0; a < N; ++a) out[d] += CycQ::root(N, a * d) * e_coeffs[a];
    return out;
}

std::vector<CycQ> to_e_coeffs(long N, const std::vector<CycQ>& f_coeffs) {
    require(static_cast<long>(f_coeffs.size()) == N, "coefficient vector has wrong length");
    std::vector<CycQ> out(N, CycQ(N));
    for (long a = 0; a < N; ++a) {
        for (long d = 0; d < N; ++d) out[a] += CycQ::root(N, -a * d) * f_coeffs[d];
        out[a] = out[a] * rat(1, N);
    }
    return out;
}

bool f_basis_identities_hold(long N) {
    require(N >= 1, "level must be positive");
    // Character sums S_r = sum_c e(cr/N), evaluated term by term.
    std::vector<CycQ> charsum(N, CycQ(N));
    for (long r = 0; r < N; ++r)
        for (long c = 0; c < N; ++c) charsum[r] += CycQ::root(N, c * r);

    // rho(T) f_{(a,b)} = f_{(a+b,b)}: compare coefficients of e_{(c,b)}.
    // Q((c,b)) = cb/N on D(U(N)).
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b)
            for (long c = 0; c < N; ++c) {
                CycQ lhs = CycQ::root(N, -a * c) * CycQ::root(N, -c * b);
                CycQ rhs = CycQ::root(N, -(a + b) * c);
                if (lhs != rhs) return false;
            }

    // rho(S) f_{(a,b)} = f_{(-b,a)}: the e_{(lambda,mu)} coefficient of the
    // left side is (1/N^2) e(b lambda/N) sum_c e(c(mu - a)/N); the right
    // side has (1/N) e(b lambda/N) exactly when mu = a.  Both sides carry
    // the same unit factor e(b lambda/N), so it cancels and the comparison
    // is independent of (b, lambda).
    for (long a = 0; a < N; ++a)
        for (long mu = 0; mu < N; ++mu) {
            CycQ lhs = charsum[((mu - a) % N + N) % N] * rat(1, N * N);
            CycQ rhs = mu == a ? CycQ::rational(N, rat(1, N)) : CycQ(N);
            if (lhs != rhs) return false;
        }
    return true;
}

const QSeries& VectorValuedForm::component(const DualVec& rep) const {
    long i = M->coset_index(rep);
    return comps.at(static_cast<size_t>(i));
}

std::string VectorValuedForm::dump() const {
    std::ostringstream out;
    out << "vvform " << comps.size() << " weight " << rat_str(weight) << " basis "
        << (basis == VVBasis::E ? "e" : "f") << "\n";
    for (auto& c : comps) out << c.dump();
    return out.str();
}

VectorValuedForm VectorValuedForm::parse(const Lattice& M, const std::string& text) {
    std::istringstream in(text);
    std::string header;
    require(static_cast<bool>(std::getline(in, header)), "empty vvform dump");
    std::istringstream hs(header);
    std::string tag, wstr, wtag, btag, bval;
    size_t ncomps;
    hs >> tag >> ncomps >> wtag >> wstr >> btag >> bval;
    require(tag == "vvform" && wtag == "weight" && btag == "basis", "bad vvform header");
    require(M.coset_representatives().size() == ncomps, "component count mismatch");
    Rat weight(wstr);
    weight.canonicalize();
    VectorValuedForm F{std::make_shared<Lattice>(M), weight,
                       bval == "e" ? VVBasis::E : VVBasis::F, {}};
    std::string line, block;
    for (size_t i = 0; i < ncomps; ++i) {
        block.clear();
        while (std::getline(in, line)) {
            block += line;
            block += "\n";
            if (line == "end") break;
        }
        F.comps.push_back(QSeries::parse(block));
    }
    return F;
}

VectorValuedForm averaging_lift_prime(const EtaShape& shape, const Rat& scale, const Lattice& M,
                                      long qprec) {
    const DiscriminantForm& D = M.discriminant_form();
    long p = D.level;
    require(is_prime(p), "averaging lift needs a discriminant form of prime level");
    int sign8 = M.signature_mod8();
    require(sign8 % 2 == 0, "averaging lift is stated for even signature only");

    long b1 = 0, bp = 0;
    for (auto [k, b] : shape.factors) {
        if (k == 1)
            b1 = b;
        else if (k == p)
            bp = b;
        else
            require(false, "eta quotient must have level dividing " + std::to_string(p));
    }
    require((b1 + bp) % 2 == 0, "averaging lift input must have integral weight");
    long k = (b1 + bp) / 2;
    require((b1 + p * bp) % 24 == 0, "eta quotient must have integral q-exponents");

    long dsize = checked_long(D.group_order);
    QSeries f = eta_quotient(shape, rat(qprec)) * scale;

    // f|S = scale * (-i)^k * p^{-bp/2} * eta(tau)^{b1} eta(tau/p)^{bp},
    // from eta(-1/tau) = sqrt(-i tau) eta(tau).
    QSeries slash = QSeries::one();
    if (b1 != 0) slash = slash * eta_quotient(EtaShape{{{1, b1}}}, rat(qprec + 2));
    if (bp != 0)
        slash = slash *
                eta_quotient(EtaShape{{{1, bp}}}, rat((qprec + 2) * p)).rescale_exponent(1, p);
    AlgScalar alpha = AlgScalar::from_rat(scale) * AlgScalar::i_power(-k) *
                      AlgScalar::half_power(p, -bp);
    AlgScalar xi1 = AlgScalar::from_rat(rat(kronecker(Int(-1), D.group_order))) *
                    AlgScalar::i_power(sign8 / 2);
    AlgScalar beta = xi1 * AlgScalar::from_rat(rat(p)) * AlgScalar::inv_sqrt_int(dsize) * alpha;
    if (!beta.is_rational())
        throw VerifyError("square roots fail to cancel in the averaging lift: residual scalar " +
                          beta.str());
    Rat beta_r = beta.rat_value();

    // Split f|S by exponent residue mod 1; every term must land on the
    // (1/p)-grid for the slices g_j to make sense.
    std::vector<QSeries> g;
    long gden = slash.den();
    long gprec = slash.prec_num();
    for (long j = 0; j < p; ++j) g.push_back(QSeries(gden, gprec));
    for (auto& [e, c] : slash.terms()) {
        if (c == 0) continue;
        Rat frac = mod1(rat(e, gden));
        long fd = checked_long(Int(den(frac)));
        if (fd != 1 && fd != p)
            throw VerifyError("f|S has an exponent off the 1/" + std::to_string(p) +
                              " grid: " + rat_str(rat(e, gden)));
        long j = checked_long(Rat(frac * p));
        g[j].set_coeff(rat(e, gden), c);
    }

    VectorValuedForm F{std::make_shared<Lattice>(M), rat(k), VVBasis::E, {}};
    auto reps = F.M->coset_representatives();
    check(static_cast<long>(reps.size()) == dsize, "coset sweep size mismatch");
    for (auto& x : reps) {
        Rat qx = mod1(F.M->q_value(x));
        long j = checked_long(Rat(mod1(-qx) * p));
        QSeries comp = g[j] * beta_r;
        if (is_zero(x)) comp = comp + f;
        for (auto& [e, c] : comp.terms())
            check(c == 0 || mod1(rat(e, comp.den())) == mod1(-qx),
                  "lift component exponents violate Z - Q(coset)");
        F.comps.push_back(comp);
    }
    return F;
}

}  // namespace autprod
