#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "autprod/catalog.hpp"
#include "autprod/lattice.hpp"

using namespace autprod;

namespace {

// Naive box enumeration oracle: every vector with x^T G x <= bound has
// |x_i| <= sqrt((G^-1)_ii * bound) by Cauchy-Schwarz in the dual basis.
std::multiset<std::vector<Rat>> box_enumerate(const MatZ& gram, const Rat& bound,
                                              const std::vector<Rat>& shift) {
    int n = gram.nr;
    MatQ ginv = inverse(MatQ(gram));
    std::vector<long> radius(n);
    for (int i = 0; i < n; ++i) {
        Rat r2 = ginv.at(i, i) * bound;
        long r = 0;
        while (Rat((r + 1)) * (r + 1) <= r2) ++r;
        radius[i] = r + 1;  // +1 headroom for the shift
    }
    std::multiset<std::vector<Rat>> out;
    std::vector<long> x(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            std::vector<Rat> y(n);
            for (int k = 0; k < n; ++k) y[k] = Rat(x[k]) + shift[k];
            Rat norm(0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) norm += y[r] * Rat(gram.at(r, c)) * y[c];
            if (norm <= bound) out.insert(y);
            return;
        }
        for (x[i] = -radius[i]; x[i] <= radius[i]; ++x[i]) rec(i + 1);
        x[i] = 0;
    };
    rec(0);
    return out;
}

}  // namespace

TEST_CASE("enumeration matches box oracle on random definite forms") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + int(rng() % 4);
        MatZ b(n, n);
        for (auto& v : b.a) v = d(rng);
        MatZ g = b.transpose() * b;
        for (int i = 0; i < n; ++i) g.at(i, i) += 2;  // ensure positive definite
        Rat bound = rat(4 + long(rng() % 8));
        std::vector<Rat> shift(n, Rat(0));
        if (trial % 2) {
            for (auto& s : shift) s = rat(long(rng() % 3) - 1, 1 + long(rng() % 3));
        }
        std::multiset<std::vector<Rat>> got;
        enumerate_quadratic(g, bound, shift, [&](const std::vector<Rat>& y, const Rat& norm) {
            std::vector<Rat> chk = y;
            Rat n2(0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) n2 += y[r] * Rat(g.at(r, c)) * y[c];
            REQUIRE(n2 == norm);
            got.insert(chk);
        });
        CHECK(got == box_enumerate(g, bound, shift));
    }
}

TEST_CASE("root lattice invariants") {
    Lattice e8 = catalog_lattice("E8");
    CHECK(e8.rank() == 8);
    CHECK(e8.det() == 1);
    CHECK(e8.signature_mod8() == 0);
    CHECK(short_vectors(e8, rat(2)).size() == 240);
    Lattice a2 = catalog_lattice("A2");
    CHECK(a2.det() == 3);
    CHECK(a2.discriminant_form().level == 3);
    CHECK(a2.discriminant_form().orders == std::vector<long>{3});
    CHECK(short_vectors(a2, rat(2)).size() == 6);
    Lattice e6 = catalog_lattice("E6");
    CHECK(e6.det() == 3);
    CHECK(short_vectors(e6, rat(2)).size() == 72);
    Lattice e7 = catalog_lattice("E7");
    CHECK(e7.det() == 2);
    CHECK(short_vectors(e7, rat(2)).size() == 126);
    Lattice a4 = catalog_lattice("A4");
    CHECK(a4.det() == 5);
    CHECK(short_vectors(a4, rat(2)).size() == 20);
    Lattice a1 = catalog_lattice("A1");
    CHECK(a1.discriminant_form().level == 4);
}

TEST_CASE("hyperbolic planes and rescaling") {
    Lattice u = catalog_lattice("U");
    CHECK(u.det() == -1);
    CHECK(u.signature() == std::pair<int, int>{1, 1});
    CHECK(u.signature_mod8() == 0);
    Lattice u2 = hyperbolic_plane(2);
    CHECK(u2.disc() == 4);
    CHECK(u2.discriminant_form().level == 2);
    CHECK(u2.signature_mod8() == 0);
    Lattice a1_4 = rescaled(catalog_lattice("A1"), 2);
    CHECK(a1_4.gram().at(0, 0) == 4);
    Lattice sum = direct_sum(u, catalog_lattice("A2"));
    CHECK(sum.rank() == 4);
    CHECK(sum.det() == -3);
}

TEST_CASE("dual coordinates, membership, conversions") {
    Lattice a2 = catalog_lattice("A2");
    DualVec v{1, 0};  // a dual basis vector
    CHECK(!a2.in_lattice(v));
    CHECK(a2.norm2(v) == rat(2, 3));
    DualVec w{2, -1};  // = gram * (1,0), i.e. the first basis vector of A2
    CHECK(a2.in_lattice(w));
    CHECK(a2.norm2(w) == 2);
    auto p = a2.primal_from_dual(w);
    CHECK(p == std::vector<Rat>{rat(1), rat(0)});
    CHECK(a2.dual_from_primal(p) == w);
    CHECK(a2.pairing(v, w) == 1);
    CHECK(Lattice::divisible(DualVec{2, 4}, 2));
    CHECK(!Lattice::divisible(DualVec{2, 3}, 2));
}

TEST_CASE("canonical ordering and sign normalization") {
    CHECK(sign_normalized(DualVec{0, -2, 1}) == DualVec{0, 2, -1});
    CHECK(is_sign_positive(DualVec{0, 0, 0}));
    CHECK(!is_sign_positive(DualVec{0, -1, 5}));
    Lattice a2 = catalog_lattice("A2");
    auto roots = short_vectors(a2, rat(2));
    REQUIRE(roots.size() == 6);
    // Pairs are adjacent: representative with positive sign first.
    for (size_t i = 0; i < roots.size(); i += 2) {
        CHECK(is_sign_positive(roots[i]));
        CHECK(roots[i + 1] == -1 * roots[i]);
    }
}

TEST_CASE("coset enumeration and indices") {
    Lattice a2 = catalog_lattice("A2");
    auto reps = a2.coset_representatives();
    REQUIRE(reps.size() == 3);
    for (size_t i = 0; i < reps.size(); ++i) CHECK(a2.coset_index(reps[i]) == long(i));
    // Shifting a representative by a lattice vector keeps its index.
    DualVec lat{1, 1};  // = gram * (1,1)
    REQUIRE(a2.in_lattice(lat));
    for (auto& r : reps) CHECK(a2.coset_index(r + lat) == a2.coset_index(r));
    // Nontrivial A2 cosets each contain 3 vectors of norm 2/3.
    for (auto& r : reps) {
        if (is_zero(r)) continue;
        auto vs = short_coset_vectors(a2, r, rat(2, 3));
        CHECK(vs.size() == 3);
        for (auto& v : vs) CHECK(a2.norm2(v) == rat(2, 3));
    }
    // Dual vectors of A2 with norm <= 2/3: the 6 weight vectors.
    CHECK(short_dual_vectors(a2, rat(2, 3)).size() == 6);
}

TEST_CASE("milgram formula on catalog discriminant forms") {
    const double pi = 3.14159265358979323846;
    for (const std::string& name : {"U", "A1", "A2", "A4", "E6", "E7", "E8"}) {
        Lattice l = catalog_lattice(name);
        auto reps = l.coset_representatives();
        std::complex<double> s = 0;
        for (auto& r : reps) {
            double q = l.q_value(r).get_d();
            s += std::exp(std::complex<double>(0, 2 * pi * q));
        }
        std::complex<double> expected =
            std::sqrt(double(l.disc().get_d())) *
            std::exp(std::complex<double>(0, 2 * pi * l.signature_mod8() / 8.0));
        CAPTURE(name);
        CHECK(std::abs(s - expected) < 1e-9);
    }
}

TEST_CASE("fixed sublattice and orthogonal complement") {
    Lattice a2 = catalog_lattice("A2");
    MatZ swap = MatZ::from_rows({{0, 1}, {1, 0}});
    REQUIRE(is_isometry(a2, swap));
    Sublattice fix = fixed_point_sublattice(a2, swap);
    CHECK(fix.lat.rank() == 1);
    CHECK(fix.lat.gram().at(0, 0) == 2);
    Sublattice comp = orthogonal_complement(a2, fix.embedding);
    CHECK(comp.lat.rank() == 1);
    CHECK(comp.lat.gram().at(0, 0) == 6);
    // Rotation of order 3 fixes only the origin.
    MatZ rot = MatZ::from_rows({{0, -1}, {1, -1}});
    REQUIRE(is_isometry(a2, rot));
    CHECK(fixed_point_sublattice(a2, rot).lat.rank() == 0);
}

TEST_CASE("even overlattice by glue") {
    // A1^4 glued by (1,1,1,1)/ lattice: index 2 overlattice isometric to D4.
    Lattice a1 = catalog_lattice("A1");
    Lattice l = direct_sum(direct_sum(a1, a1), direct_sum(a1, a1));
    DualVec glue{1, 1, 1, 1};
    CHECK(l.q_value(glue) == rat(1));
    MatQ basis;
    Lattice over = even_overlattice(l, {glue}, &basis);
    CHECK(over.disc() == 4);
    CHECK(short_vectors(over, rat(2)).size() == 24);
    // Odd glue is rejected: Q = 1/4 + 1/4 = 1/2 not integral.
    Lattice l2 = direct_sum(a1, a1);
    CHECK_THROWS_AS(even_overlattice(l2, {DualVec{1, 1}}, nullptr), VerifyError);
}

TEST_CASE("rootless predicate") {
    CHECK(!is_rootless(catalog_lattice("E8")));
    Lattice a1_4 = rescaled(catalog_lattice("A1"), 2);
    CHECK(is_rootless(a1_4));
}
