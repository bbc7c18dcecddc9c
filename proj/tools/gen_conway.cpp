// SPDX-License-Identifier: MIT
//
// Generates data/conway_classes.txt: one integer matrix per frame shape of
// the automorphism group of the Leech lattice, acting on basis coordinates.
//
// The group is generated by the monomial part (coordinate permutations from
// PSL(2,23) acting on the projective line, sign changes on Golay codewords)
// together with one non-monomial block map built from a sextet.  A random
// walk over words in these generators, closed under taking powers, collects
// representatives until no shape is missing.  Every stored matrix is
// re-verified as an isometry whose recomputed frame shape matches its label.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "autprod/conway.hpp"
#include "autprod/golay.hpp"
#include "autprod/lattice.hpp"

using namespace autprod;

namespace {

using Mat24 = std::array<std::array<long, 24>, 24>;

Mat24 to_mat24(const MatZ& m) {
    Mat24 r{};
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) r[i][j] = checked_long(m.at(i, j));
    return r;
}

MatZ to_matz(const Mat24& m) {
    MatZ r(24, 24);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) r.at(i, j) = m[i][j];
    return r;
}

Mat24 mul(const Mat24& a, const Mat24& b) {
    Mat24 r{};
    for (int i = 0; i < 24; ++i)
        for (int k = 0; k < 24; ++k) {
            long aik = a[i][k];
            if (aik == 0) continue;
            for (int j = 0; j < 24; ++j) r[i][j] += aik * b[k][j];
        }
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j)
            check(std::abs(r[i][j]) < 1000000, "matrix entry overflow guard");
    return r;
}

bool is_id(const Mat24& a) {
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j)
            if (a[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

long trace(const Mat24& a) {
    long t = 0;
    for (int i = 0; i < 24; ++i) t += a[i][i];
    return t;
}

// Rational 24x24 map on row vectors in the ambient coordinates, stored as
// twice the matrix so that sextet block maps stay integral.
struct CoordMap {
    std::array<std::array<long, 24>, 24> twice{};  // entries of 2M
};

CoordMap from_permutation(const std::array<int, 24>& pi) {
    CoordMap m;
    for (int i = 0; i < 24; ++i) m.twice[i][pi[i]] = 2;
    return m;
}

CoordMap from_signs(uint32_t mask) {
    CoordMap m;
    for (int i = 0; i < 24; ++i) m.twice[i][i] = (mask & (1u << i)) ? -2 : 2;
    return m;
}

// Whether the map sends every Leech basis vector into the lattice.
bool preserves_leech(const LeechConstruction& lc, const CoordMap& m) {
    for (int r = 0; r < 24; ++r) {
        std::vector<Int> img(24, Int(0));
        for (int j = 0; j < 24; ++j) {
            long s = 0;
            for (int i = 0; i < 24; ++i) {
                long bi = checked_long(lc.basis.at(r, i));
                s += bi * m.twice[i][j];
            }
            if (s % 2 != 0) return false;
            img[j] = s / 2;
        }
        if (!leech_contains(lc.code, img)) return false;
    }
    return true;
}

// Change of coordinates: row action x -> x M on the ambient space becomes a
// column action on basis coordinates, g = (B M B^{-1})^T.
MatZ to_leech_basis(const LeechConstruction& lc, const CoordMap& m) {
    MatQ bm(24, 24);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            Rat s(0);
            for (int k = 0; k < 24; ++k)
                if (m.twice[k][j] != 0) s += Rat(lc.basis.at(i, k)) * rat(m.twice[k][j], 2);
            bm.at(i, j) = s;
        }
    MatQ a = bm * inverse(MatQ(lc.basis));
    MatZ g(24, 24);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            check(is_integer(a.at(j, i)), "generator is not integral on the lattice");
            g.at(i, j) = num(a.at(j, i));
        }
    return g;
}

// The unique sextet refining a tetrad: the five octads through the tetrad
// split the complement into tetrads.
std::vector<uint32_t> sextet_blocks(const GolayCode& code, uint32_t tetrad) {
    std::vector<uint32_t> blocks{tetrad};
    for (uint32_t o : code.octads())
        if ((o & tetrad) == tetrad) blocks.push_back(o & ~tetrad);
    check(blocks.size() == 6, "tetrad does not lie in exactly five octads");
    return blocks;
}

// Non-monomial generator: on each sextet block the map s_b (J/2 - I), with
// the block signs s found by searching for a lattice-preserving choice.
CoordMap sextet_map(const LeechConstruction& lc) {
    auto blocks = sextet_blocks(lc.code, 0b1111u);
    std::array<int, 24> block_of{};
    for (int b = 0; b < 6; ++b)
        for (int i = 0; i < 24; ++i)
            if (blocks[b] & (1u << i)) block_of[i] = b;
    for (uint32_t signs = 0; signs < 64; ++signs) {
        CoordMap m;
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) {
                if (block_of[i] != block_of[j]) continue;
                long v = (i == j) ? -1 : 1;  // 2 * (1/2 - delta_ij)
                if (signs & (1u << block_of[i])) v = -v;
                m.twice[i][j] = v;
            }
        if (preserves_leech(lc, m)) return m;
    }
    throw VerifyError("no sign pattern makes the sextet map an automorphism");
}

long mod_inverse(long a, long p) {
    long r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out_path = argc > 1 ? argv[1] : "data/conway_classes.txt";
    const auto& lc = leech_construction();
    Lattice leech(lc.gram);

    // Projective-line permutations: t -> t+1, t -> 2t, t -> -1/t, with the
    // cyclic coordinates 0..22 and the extra point at 23.
    std::array<int, 24> shift{}, mult{}, inv{};
    for (int t = 0; t < 23; ++t) {
        shift[t] = (t + 1) % 23;
        mult[t] = (2 * t) % 23;
        inv[t] = t == 0 ? 23 : int((23 - mod_inverse(t, 23)) % 23);
    }
    shift[23] = 23;
    mult[23] = 23;
    inv[23] = 0;

    std::vector<CoordMap> coord_gens;
    for (auto& pi : {shift, mult, inv}) coord_gens.push_back(from_permutation(pi));
    coord_gens.push_back(from_signs(lc.code.basis()[0]));
    coord_gens.push_back(from_signs(lc.code.basis()[5]));
    coord_gens.push_back(from_signs(0xFFFFFFu));  // the central -1
    coord_gens.push_back(sextet_map(lc));

    std::vector<Mat24> gens;
    for (auto& m : coord_gens) {
        check(preserves_leech(lc, m), "generator does not preserve the lattice");
        MatZ g = to_leech_basis(lc, m);
        check(is_isometry(leech, g), "generator is not an isometry");
        gens.push_back(to_mat24(g));
    }
    std::cerr << "generators validated: " << gens.size() << "\n";

    std::map<std::string, MatZ> found;
    auto consider = [&](const Mat24& g) {
        // Order and traces of all powers in one sweep.
        std::vector<long> tr{24};  // tr(g^0)
        Mat24 p = g;
        long order = 0;
        for (long m = 1; m <= 240; ++m) {
            tr.push_back(trace(p));
            if (is_id(p)) {
                order = m;
                break;
            }
            p = mul(p, g);
        }
        check(order > 0, "element order exceeds the cap");
        for (long d = 1; d <= order; ++d) {
            if (order % d != 0) continue;
            long sub = order / d;
            std::map<long, long> traces;
            for (long m = 1; m <= sub; ++m) traces[m] = tr[(d * m) % order == 0 ? order : (d * m) % order];
            FrameShape fs = frame_from_traces(traces, sub);
            std::string key = fs.str();
            if (found.count(key)) continue;
            Mat24 pw = g;
            for (long m = 1; m < d; ++m) pw = mul(pw, g);
            found.emplace(key, to_matz(pw));
        }
    };

    std::mt19937_64 rng(20260816ULL);
    auto pick = [&]() { return gens[rng() % gens.size()]; };
    Mat24 cur = to_mat24(MatZ::identity(24));
    size_t last_report = 0;
    long steps = 0;
    for (; steps < 200000 && found.size() < 160; ++steps) {
        cur = mul(cur, pick());
        if (rng() % 97 == 0) cur = pick();
        consider(cur);
        if (found.size() >= last_report + 10 || steps % 5000 == 4999) {
            std::cerr << "step " << steps << ": " << found.size() << " shapes\n";
            last_report = found.size();
        }
    }
    std::cerr << "walk finished after " << steps << " steps with " << found.size()
              << " shapes\n";
    check(found.size() == 160, "expected 160 frame shapes, found " +
                                   std::to_string(found.size()));

    // Final validation pass, independent of the walk bookkeeping.
    std::vector<std::pair<std::pair<long, std::string>, const MatZ*>> order_sorted;
    for (auto& [key, m] : found) {
        check(is_isometry(leech, m), "stored matrix is not an isometry");
        FrameShape fs = frame_shape_of(m);
        check(fs.str() == key, "stored matrix shape mismatch");
        order_sorted.push_back({{shape_order(fs), key}, &m});
    }
    std::sort(order_sorted.begin(), order_sorted.end(),
              [](auto& a, auto& b) { return a.first < b.first; });

    std::ofstream out(out_path);
    require(bool(out), "cannot open output file " + out_path);
    out << "conway-classes 1\n";
    out << "count " << order_sorted.size() << "\n";
    for (auto& [key, m] : order_sorted) {
        out << "class " << key.second << "\n";
        for (int i = 0; i < 24; ++i) {
            for (int j = 0; j < 24; ++j) out << (j ? " " : "") << m->at(i, j).get_str();
            out << "\n";
        }
    }
    out.close();
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}
