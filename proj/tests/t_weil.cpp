// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>

#include "autprod/catalog.hpp"
#include "autprod/weilrep.hpp"

using namespace autprod;

namespace {

using CycMat = std::vector<std::vector<CycQ>>;

CycMat cyc_mat(long n, long order) { return CycMat(n, std::vector<CycQ>(n, CycQ(order))); }

CycMat mul(const CycMat& a, const CycMat& b, long order) {
    size_t n = a.size();
    CycMat c = cyc_mat(static_cast<long>(n), order);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

bool is_perm_matrix(const CycMat& m, long order,
                    const std::function<long(long)>& target_row) {
    long n = static_cast<long>(m.size());
    CycQ one = CycQ::rational(order, rat(1));
    for (long col = 0; col < n; ++col) {
        long hit = target_row(col);
        for (long row = 0; row < n; ++row)
            if (m[row][col] != (row == hit ? one : CycQ(order))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("dense matrices for the discriminant form of A1") {
    WeilRep W = weil_matrices(catalog_lattice("A1"));
    CHECK(W.dim == 2);
    CHECK(W.sign8 == 1);
    CHECK(W.level == 4);
    CHECK(W.modulus == 8);
    long i0 = W.index_of({0}), i1 = W.index_of({1});
    CHECK(W.qvals[i0] == 0);
    CHECK(W.qvals[i1] == rat(1, 4));
    // T = diag(1, e(-1/4)).
    CHECK(W.T[i0] == CycQ::rational(8, rat(1)));
    CHECK(W.T[i1] == CycQ::root(8, -2));
    // S = e(1/8)/sqrt(2) * [[1,1],[1,-1]] and e(1/8)/sqrt(2) = (1+i)/2.
    CycQ kappa = (CycQ::rational(8, rat(1)) + CycQ::root(8, 2)) * rat(1, 2);
    CHECK(W.S[i0][i0] == kappa);
    CHECK(W.S[i0][i1] == kappa);
    CHECK(W.S[i1][i0] == kappa);
    CHECK(W.S[i1][i1] == -kappa);
    CHECK(weil_relations_hold(W));
}

TEST_CASE("Weil relations hold for catalog and hyperbolic forms") {
    for (const char* name : {"A1", "A2", "A4", "E6", "E7", "E8"})
        CHECK(weil_relations_hold(weil_matrices(catalog_lattice(name))));
    for (long n : {1L, 2L, 3L, 4L, 6L}) CHECK(weil_relations_hold(weil_matrices(hyperbolic_plane(n))));
    CHECK(weil_relations_hold(weil_matrices(direct_sum(catalog_lattice("A1"), catalog_lattice("A1")))));
    CHECK(weil_relations_hold(weil_matrices(direct_sum(catalog_lattice("A2"), hyperbolic_plane(2)))));
    // Dense matrices are capped at discriminant groups of order 64.
    CHECK_THROWS_AS(weil_matrices(hyperbolic_plane(9)), std::invalid_argument);
}

TEST_CASE("Milgram formula holds across the catalog") {
    for (const std::string& name : catalog_names()) CHECK(milgram_identity_holds(catalog_lattice(name)));
    for (long n : {2L, 3L, 4L, 5L}) CHECK(milgram_identity_holds(hyperbolic_plane(n)));
    CHECK(milgram_identity_holds(direct_sum(catalog_lattice("A1"), hyperbolic_plane(2))));
    CHECK(milgram_identity_holds(direct_sum(catalog_lattice("E6"), hyperbolic_plane(3))));
    CHECK(milgram_identity_holds(
        direct_sum(direct_sum(hyperbolic_plane(2), hyperbolic_plane()), catalog_lattice("BW16"))));
}

TEST_CASE("discriminant basis conjugates S and T to permutations") {
    // On the discriminant form of a rescaled hyperbolic plane the basis
    // change to f_(a,b) turns rho(T) into the shift (a,b) -> (a+b,b) and
    // rho(S) into the swap (a,b) -> (-b,a).  Conjugate the dense matrices
    // explicitly for small N.
    for (long N : {2L, 3L, 5L}) {
        Lattice M = hyperbolic_plane(N);
        WeilRep W = weil_matrices(M);
        long n = N * N, m = W.modulus;
        REQUIRE(W.dim == n);
        REQUIRE(m % N == 0);
        auto idx = [N](long a, long b) { return ((a % N + N) % N) * N + ((b % N + N) % N); };

        // The label (a,b) stands for (a e1 + b e2)/N, whose coordinates in
        // the dual basis are (b, a).  Check the index map is a bijection
        // carrying Q((a,b)) = ab/N.
        std::vector<long> wi(n, -1), seen(n, 0);
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                long i = W.index_of({b, a});
                wi[idx(a, b)] = i;
                seen[i] += 1;
                CHECK(W.qvals[i] == rat(((a * b) % N + N) % N, N));
            }
        for (long i = 0; i < n; ++i) CHECK(seen[i] == 1);

        CycMat Se = cyc_mat(n, m), Te = cyc_mat(n, m);
        for (long i = 0; i < n; ++i) {
            Te[i][i] = W.T[wi[i]];
            for (long j = 0; j < n; ++j) Se[i][j] = W.S[wi[i]][wi[j]];
        }
        // to_e carries f-coordinates to e-coordinates, lifted to order m.
        CycMat to_e = cyc_mat(n, m), to_f = cyc_mat(n, m);
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b)
                for (long c = 0; c < N; ++c) {
                    to_e[idx(c, b)][idx(a, b)] = CycQ::root(m, -(m / N) * a * c) * rat(1, N);
                    to_f[idx(c, b)][idx(a, b)] = CycQ::root(m, (m / N) * a * c);
                }
        CycMat Tf = mul(to_f, mul(Te, to_e, m), m);
        CycMat Sf = mul(to_f, mul(Se, to_e, m), m);
        auto unpack = [N](long i) { return std::pair<long, long>{i / N, i % N}; };
        CHECK(is_perm_matrix(Tf, m, [&](long col) {
            auto [a, b] = unpack(col);
            return idx(a + b, b);
        }));
        CHECK(is_perm_matrix(Sf, m, [&](long col) {
            auto [a, b] = unpack(col);
            return idx(-b, a);
        }));
    }
}

TEST_CASE("shift and swap identities at the classification levels") {
    for (long N : {1L, 2L, 3L, 5L, 7L, 11L, 23L}) {
        CHECK(f_basis_identities_hold(N));
        f_basis(N);  // constructor verifies the change of basis inverts
    }
}

TEST_CASE("ramanujan sums match cyclotomic unit sums") {
    for (long n = 1; n <= 12; ++n)
        for (long a = 0; a <= 12; ++a) {
            CycQ s(n);
            for (long k = 0; k < n; ++k)
                if (std::gcd(k, n) == 1) s += CycQ::root(n, k * a);
            REQUIRE(s.is_rational());
            CHECK(s.rational_part() == ramanujan_sum(a, n));
        }
    CHECK(ramanujan_sum(0, 12) == euler_phi(12));
    CHECK(ramanujan_sum(1, 7) == -1);
    CHECK(ramanujan_sum(7, 7) == 6);
}

TEST_CASE("coefficient transforms between the two bases invert") {
    long N = 6;
    std::vector<CycQ> c;
    for (long a = 0; a < N; ++a) c.push_back(CycQ::root(N, a * a) * rat(a + 1, 3));
    std::vector<CycQ> h = to_f_coeffs(N, c);
    std::vector<CycQ> back = to_e_coeffs(N, h);
    for (long a = 0; a < N; ++a) CHECK(back[a] == c[a]);
    // A pure f-coefficient pulls back to the contragredient character.
    std::vector<CycQ> hd(N, CycQ(N));
    hd[2] = CycQ::rational(N, rat(1));
    std::vector<CycQ> e = to_e_coeffs(N, hd);
    for (long a = 0; a < N; ++a) CHECK(e[a] == CycQ::root(N, -2 * a) * rat(1, N));
    for (long d = 0; d < N; ++d) CHECK(to_f_coeffs(N, e)[d] == hd[d]);
}

TEST_CASE("averaging lift of delta over a rescaled hyperbolic plane") {
    // f*e_0 + sum over cosets of S T^j is exact here: delta has level one,
    // so every slice is delta itself or zero and the scalars collapse to 1.
    Lattice M = hyperbolic_plane(2);
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^24"), rat(1), M, 6);
    CHECK(F.weight == 12);
    QSeries delta = eta_quotient(EtaShape::parse("1^24"), rat(6));
    CHECK(F.component({0, 0}).truncated(rat(6)) == delta * rat(2));
    CHECK(F.component({0, 1}).truncated(rat(6)) == delta);
    CHECK(F.component({1, 0}).truncated(rat(6)) == delta);
    CHECK(F.component({1, 1}).is_zero_stored());
}

TEST_CASE("averaging lift principal parts for two catalog inputs") {
    // 1/(eta(t)^8 eta(2t)^8) over U(2) + U + BW16: the zero component is
    // q^-1 + 16 + O(q) and the components of norm 1/2 start at q^(-1/2).
    Lattice M2 = direct_sum(direct_sum(hyperbolic_plane(2), hyperbolic_plane()),
                            catalog_lattice("BW16"));
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^-8.2^-8"), rat(1), M2, 3);
    CHECK(F.weight == -8);
    const QSeries& e0 = F.component(DualVec(20, 0));
    CHECK(e0.valuation() == -1);
    CHECK(e0.coeff(rat(-1)) == 1);
    CHECK(e0.coeff(rat(0)) == 16);
    DualVec gamma(20, 0);
    gamma[0] = gamma[1] = 1;
    const QSeries& half = F.component(gamma);
    CHECK(half.valuation() == rat(-1, 2));
    CHECK(half.coeff(rat(-1, 2)) == 1);

    // 16 eta(2t)^8/eta(t)^16 over U(2) + U + E8: holomorphic zero component
    // 8 + O(q), pole of order 1/2 on the norm-1/2 coset.
    Lattice M8 = direct_sum(direct_sum(hyperbolic_plane(2), hyperbolic_plane()),
                            catalog_lattice("E8"));
    VectorValuedForm G = averaging_lift_prime(EtaShape::parse("1^-16.2^8"), rat(16), M8, 3);
    CHECK(G.weight == -4);
    const QSeries& g0 = G.component(DualVec(12, 0));
    CHECK(g0.valuation() == 0);
    CHECK(g0.coeff(rat(0)) == 8);
    DualVec delta8(12, 0);
    delta8[0] = delta8[1] = 1;
    CHECK(G.component(delta8).coeff(rat(-1, 2)) == 1);
}

TEST_CASE("averaging lift rejects scalars that stay irrational") {
    Lattice M = hyperbolic_plane(3);
    CHECK_THROWS_AS(averaging_lift_prime(EtaShape::parse("1^21.3^1"), rat(1), M, 4), VerifyError);
}

TEST_CASE("vector-valued dump and parse round trip") {
    Lattice M = hyperbolic_plane(2);
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^-8.2^-8"), rat(1), M, 4);
    VectorValuedForm G = VectorValuedForm::parse(M, F.dump());
    CHECK(G.weight == F.weight);
    CHECK(G.basis == F.basis);
    REQUIRE(G.comps.size() == F.comps.size());
    for (size_t i = 0; i < F.comps.size(); ++i) CHECK(G.comps[i] == F.comps[i]);
}
