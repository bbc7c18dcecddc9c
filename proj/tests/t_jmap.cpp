// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autprod/catalog.hpp"
#include "autprod/jmap.hpp"

using namespace autprod;

namespace {

Lattice base_lattice(long N, const char* name) {
    Lattice u = direct_sum(hyperbolic_plane(N), hyperbolic_plane());
    return name ? direct_sum(u, catalog_lattice(name)) : u;
}

void check_tuples_equal(const JacobiTuple& a, const JacobiTuple& b, const Rat& prec) {
    REQUIRE(a.entries.size() == b.entries.size());
    for (auto& [d, ja] : a.entries) {
        REQUIRE(b.entries.count(d) == 1);
        CHECK(ja.truncated(prec) == b.entries.at(d).truncated(prec));
    }
}

}  // namespace

TEST_CASE("cusp splitting recognizes the block shape") {
    CuspSplit sp = split_cusp_lattice(base_lattice(2, "A2"));
    CHECK(sp.N == 2);
    CHECK(sp.L.gram() == catalog_lattice("A2").gram());
    CuspSplit flat = split_cusp_lattice(base_lattice(5, nullptr));
    CHECK(flat.N == 5);
    CHECK(flat.L.rank() == 0);

    CHECK_THROWS_AS(split_cusp_lattice(hyperbolic_plane(2)), std::invalid_argument);
    CHECK_THROWS_AS(split_cusp_lattice(direct_sum(hyperbolic_plane(2), catalog_lattice("A2"))),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        split_cusp_lattice(direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane(2)),
                                      catalog_lattice("E8"))),
        std::invalid_argument);
}

TEST_CASE("forward tuple of the averaged delta lift") {
    // Over U(2)+U the lift of delta has components (2D, D, D, 0), so the
    // tuple is phi_1 = D and phi_2 = 3D; delta is fixed by S, which makes
    // phi_2 = phi_1 + 2 * phi_1 | S an exact cross-check.
    Lattice M = base_lattice(2, nullptr);
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^24"), rat(1), M, 6);
    JacobiTuple t = jmap_forward(F, 6);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries.at(1).coeff_int(1, {}) == 1);
    CHECK(t.entries.at(1).coeff_int(2, {}) == -24);
    CHECK(t.entries.at(2).coeff_int(1, {}) == 3);
    CHECK(t.entries.at(2).coeff_int(2, {}) == -72);

    check_tuples_equal(t, jmap_forward_moebius(F, 6), rat(6));
    check_tuples_equal(t, jmap_forward_theta(F, 6), rat(6));

    CuspSplit sp = split_cusp_lattice(M);
    check_tuples_equal(t, prime_tuple_from_eta(EtaShape::parse("1^24"), rat(1), 2, sp.L, 6, 6),
                       rat(6));
}

TEST_CASE("forward routes agree on a lift with a nontrivial theta block") {
    Lattice M = base_lattice(2, "E8");
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^-16.2^8"), rat(16), M, 5);
    JacobiTuple t = jmap_forward(F, 5);
    check_tuples_equal(t, jmap_forward_moebius(F, 5), rat(5));
    check_tuples_equal(t, jmap_forward_theta(F, 5), rat(5));
}

TEST_CASE("averaging lift and eta-quotient tuples agree at prime level") {
    // The two constructions take different routes to the same pair
    // (phi_1, phi_p): coset averaging of f e_0 against slicing f | S after
    // multiplying by the theta series of L and its dual.
    struct Row {
        long p;
        const char* shape;
        long scale;
        const char* lattice;
    };
    for (const Row& r : {Row{2, "1^-16.2^8", 16, "E8"}, Row{3, "1^-9.3^3", 9, "E6"},
                         Row{5, "1^-5.5^1", 5, "A4"}}) {
        Lattice M = base_lattice(r.p, r.lattice);
        EtaShape shape = EtaShape::parse(r.shape);
        VectorValuedForm F = averaging_lift_prime(shape, rat(r.scale), M, 6);
        JacobiTuple via_lift = jmap_forward(F, 6);
        JacobiTuple via_eta =
            prime_tuple_from_eta(shape, rat(r.scale), r.p, catalog_lattice(r.lattice), 6, 6);
        check_tuples_equal(via_lift, via_eta, rat(6));
    }
}

TEST_CASE("tuple identities survive a dense discriminant group") {
    Lattice K = catalog_lattice("K12");
    EtaShape shape = EtaShape::parse("1^-6.3^-6");
    JacobiTuple t = prime_tuple_from_eta(shape, rat(1), 3, K, 2, 1);

    std::vector<Rat> zero(12, rat(0));
    CHECK(t.entries.at(1).coeff(rat(-1), zero) == 1);
    CHECK(t.entries.at(1).coeff(rat(0), zero) == 6);
    CHECK(t.entries.at(3).coeff(rat(-1), zero) == 1);
    // q^0 of the level-divisor slice carries the full vector count 24.
    CHECK(t.entries.at(3).coeff(rat(0), zero) == 24);
    // A minimal vector contributes through the principal part of f.
    DualVec lmin;
    for (auto& v : short_vectors(K, rat(4)))
        if (K.norm2(v) == 4) {
            lmin = v;
            break;
        }
    REQUIRE(!lmin.empty());
    CHECK(t.entries.at(1).coeff(rat(1), std::vector<Rat>(lmin.begin(), lmin.end())) == 1);

    VectorValuedForm F = averaging_lift_prime(shape, rat(1), base_lattice(3, "K12"), 1);
    JacobiTuple fwd = jmap_forward(F, 1);
    CHECK(fwd.entries.at(1) == t.entries.at(1).truncated(rat(1)));
    CHECK(fwd.entries.at(3) == t.entries.at(3).truncated(rat(1)));
}

TEST_CASE("inverse slices recover the lift components") {
    Lattice M = base_lattice(2, "E8");
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^-16.2^8"), rat(16), M, 5);
    VectorValuedSlice direct = slice_of(F);
    VectorValuedSlice recovered = jmap_inverse_slice(jmap_forward(F, 5));
    REQUIRE(direct.comps.size() == recovered.comps.size());
    for (size_t a = 0; a < direct.comps.size(); ++a) {
        REQUIRE(direct.comps[a].size() == recovered.comps[a].size());
        for (size_t g = 0; g < direct.comps[a].size(); ++g) {
            Rat prec = std::min(direct.comps[a][g].prec(), recovered.comps[a][g].prec());
            CHECK(direct.comps[a][g].truncated(prec) == recovered.comps[a][g].truncated(prec));
        }
    }
}

TEST_CASE("inverse slice normalization on a constant tuple") {
    CuspSplit sp = split_cusp_lattice(base_lattice(5, nullptr));
    JacobiTuple t{5, std::make_shared<Lattice>(sp.L), {}};
    t.entries.emplace(1, JacobiSeries::monomial(0, rat(7), rat(0), {}).truncated(rat(3)));
    t.entries.emplace(5, JacobiSeries(0, 1, 3));
    VectorValuedSlice s = jmap_inverse_slice(t);
    // c_(a,0) = (1/5)(R(a,5) phi_1(0) + R(a,1) phi_5(0)).
    CHECK(s.comps[0][0].coeff(rat(0)) == rat(28, 5));
    for (long a = 1; a < 5; ++a) CHECK(s.comps[a][0].coeff(rat(0)) == rat(-7, 5));
}

TEST_CASE("integer exponent slice") {
    JacobiSeries s = JacobiSeries::monomial(1, rat(2), rat(3, 2), {rat(1, 2)}) +
                     JacobiSeries::monomial(1, rat(5), rat(2), {rat(1)});
    JacobiSeries sliced = integer_q_slice(s.truncated(rat(4)));
    CHECK(sliced.qden() == 1);
    CHECK(sliced.coeff(rat(2), {rat(1)}) == 5);
    CHECK(sliced.terms().size() == 1);
}

TEST_CASE("eta tuple rejects scalars that stay irrational") {
    CHECK_THROWS_AS(
        prime_tuple_from_eta(EtaShape::parse("1^18.3^2"), rat(1), 3, catalog_lattice("A2"), 3, 3),
        VerifyError);
}

TEST_CASE("forward tuple demands enough component precision") {
    Lattice M = base_lattice(2, nullptr);
    VectorValuedForm F = averaging_lift_prime(EtaShape::parse("1^24"), rat(1), M, 4);
    CHECK_THROWS_AS(jmap_forward(F, 12), PrecisionError);
    CHECK_THROWS_AS(jmap_forward_theta(F, 12), std::invalid_argument);
}
