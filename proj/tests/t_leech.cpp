#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "autprod/catalog.hpp"
#include "autprod/golay.hpp"

using namespace autprod;

TEST_CASE("golay code is the [24,12,8] doubly even self-dual code") {
    const GolayCode& c = leech_construction().code;
    CHECK(c.basis().size() == 12);
    CHECK(c.codewords().size() == 4096);
    CHECK(c.octads().size() == 759);
    int min_wt = 24;
    for (uint32_t w : c.codewords())
        if (w != 0) min_wt = std::min(min_wt, std::popcount(w));
    CHECK(min_wt == 8);
    // Closure under addition (spot check via contains).
    for (size_t i = 0; i < 50; ++i) {
        uint32_t a = c.codewords()[(i * 97) % 4096];
        uint32_t b = c.codewords()[(i * 211) % 4096];
        CHECK(c.contains(a ^ b));
    }
    CHECK(!c.contains(0x7u));  // weight 3, below the minimum distance
    // Any two distinct octads meet in 0, 2 or 4 points.
    for (size_t i = 0; i < 200; ++i) {
        uint32_t a = c.octads()[(i * 131) % 759];
        uint32_t b = c.octads()[(i * 257) % 759];
        if (a == b) continue;
        int m = std::popcount(a & b);
        CHECK((m == 0 || m == 2 || m == 4));
    }
}

TEST_CASE("leech lattice invariants") {
    Lattice leech = catalog_lattice("Leech");
    CHECK(leech.rank() == 24);
    CHECK(leech.det() == 1);
    CHECK(leech.is_positive_definite());
    CHECK(leech.signature_mod8() == 0);
    CHECK(is_rootless(leech));
}

TEST_CASE("leech membership examples") {
    const GolayCode& code = leech_construction().code;
    std::vector<Int> v(24, Int(0));
    v[0] = 4;
    v[1] = 4;
    CHECK(leech_contains(code, v));
    v[1] = -4;
    CHECK(leech_contains(code, v));
    v[1] = 0;
    CHECK(!leech_contains(code, v));  // (4,0,...): sum = 4, not 0 mod 8
    std::vector<Int> ones(24, Int(1));
    ones[0] = -3;
    CHECK(leech_contains(code, ones));
    std::vector<Int> octad(24, Int(0));
    uint32_t o = code.octads()[0];
    for (int i = 0; i < 24; ++i)
        if (o & (1u << i)) octad[i] = 2;
    CHECK(leech_contains(code, octad));
    for (int i = 0; i < 24; ++i) octad[i] = -octad[i];
    CHECK(leech_contains(code, octad));
}

TEST_CASE("leech minimal shell has 196560 vectors" * doctest::skip(false)) {
    Lattice leech = catalog_lattice("Leech");
    auto shell = short_vectors(leech, rat(4));
    CHECK(shell.size() == 196560);
    for (auto& v : shell) CHECK(leech.norm2(v) == 4);
}
