// SPDX-License-Identifier: MIT
#include "autprod/golay.hpp"

#include <bit>

namespace autprod {

namespace {

// Reduced row echelon form over GF(2); returns pivot-sorted nonzero rows.
std::vector<uint32_t> rref(std::vector<uint32_t> rows) {
    std::vector<uint32_t> out;
    for (int col = 0; col < 24; ++col) {
        uint32_t bit = 1u << col;
        size_t pivot = SIZE_MAX;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i] & bit) {
                pivot = i;
                break;
            }
        if (pivot == SIZE_MAX) continue;
        uint32_t p = rows[pivot];
        rows.erase(rows.begin() + pivot);
        for (auto& r : rows)
            if (r & bit) r ^= p;
        for (auto& r : out)
            if (r & bit) r ^= p;
        out.push_back(p);
    }
    return out;
}

}  // namespace

GolayCode::GolayCode() {
    // Quadratic residues mod 23.
    bool qr[23] = {};
    for (int k = 1; k < 23; ++k) qr[(k * k) % 23] = true;
    // Cyclic span of the residue idempotent, extended by a parity bit.  For
    // p = 23 the span of the shifts of sum_{r in QR} x^r is 12-dimensional
    // and the extension is the [24,12,8] Golay code; everything asserted
    // below rather than assumed.
    uint32_t idem = 0;
    for (int r = 1; r < 23; ++r)
        if (qr[r]) idem |= 1u << r;
    std::vector<uint32_t> gens;
    for (int s = 0; s < 23; ++s) {
        uint32_t w = 0;
        for (int i = 0; i < 23; ++i)
            if (idem & (1u << i)) w |= 1u << ((i + s) % 23);
        int wt = std::popcount(w);
        if (wt % 2) w |= 1u << 23;  // parity extension
        gens.push_back(w);
    }
    basis_ = rref(gens);
    if (basis_.size() == 11) {
        // The expurgated residue code; adjoin the all-ones word.
        gens.push_back(0xFFFFFFu);
        basis_ = rref(gens);
    }
    check(basis_.size() == 12, "residue code span has wrong dimension");

    words_.reserve(4096);
    for (uint32_t m = 0; m < 4096; ++m) {
        uint32_t w = 0;
        for (int b = 0; b < 12; ++b)
            if (m & (1u << b)) w ^= basis_[b];
        words_.push_back(w);
    }
    int counts[25] = {};
    for (uint32_t w : words_) ++counts[std::popcount(w)];
    check(counts[0] == 1 && counts[8] == 759 && counts[12] == 2576 && counts[16] == 759 &&
              counts[24] == 1,
          "wrong weight distribution for the Golay code");
    for (int k = 0; k < 25; ++k)
        check(counts[k] == 0 || k % 4 == 0, "Golay code must be doubly even");
    // Doubly even and 12-dimensional implies self-dual; verify directly.
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            check(std::popcount(basis_[i] & basis_[j]) % 2 == 0, "Golay basis not self-orthogonal");
    for (uint32_t w : words_)
        if (std::popcount(w) == 8) octads_.push_back(w);
}

bool GolayCode::contains(uint32_t w) const {
    // Reduce against the RREF basis.
    for (uint32_t b : basis_) {
        uint32_t low = b & (~b + 1);
        if (w & low) w ^= b;
    }
    return w == 0;
}

bool leech_contains(const GolayCode& code, const std::vector<Int>& x) {
    if (x.size() != 24) return false;
    Int m = ((x[0] % 2) + 2) % 2;
    Int sum(0);
    uint32_t half = 0;
    for (int i = 0; i < 24; ++i) {
        if (((x[i] - m) % 2) != 0) return false;
        Int h = (x[i] - m) / 2;
        if (((h % 2) + 2) % 2 == 1) half |= 1u << i;
        sum += x[i];
    }
    if (!code.contains(half)) return false;
    return (sum - 4 * m) % 8 == 0;
}

const LeechConstruction& leech_construction() {
    static const LeechConstruction lc = [] {
        LeechConstruction c;
        // Generators in x coordinates: doubled codewords, 4(e_0 + e_i),
        // 8 e_0 and the odd-class vector (-3, 1, ..., 1).
        std::vector<std::vector<long>> gens;
        for (uint32_t b : c.code.basis()) {
            std::vector<long> v(24, 0);
            for (int i = 0; i < 24; ++i)
                if (b & (1u << i)) v[i] = 2;
            gens.push_back(v);
        }
        for (int i = 1; i < 24; ++i) {
            std::vector<long> v(24, 0);
            v[0] = 4;
            v[i] = 4;
            gens.push_back(v);
        }
        {
            std::vector<long> v(24, 0);
            v[0] = 8;
            gens.push_back(v);
        }
        {
            std::vector<long> v(24, 1);
            v[0] = -3;
            gens.push_back(v);
        }
        MatZ g = MatZ::from_rows(gens);
        // Every generator must satisfy the membership conditions.
        for (auto& row : gens) {
            std::vector<Int> xi(row.begin(), row.end());
            check(leech_contains(c.code, xi), "Leech generator fails membership");
        }
        c.basis = hnf_row_basis(g);
        check(c.basis.nr == 24, "Leech basis has wrong rank");
        // Covolume: det of the basis must be 8^12, which together with
        // generator membership pins the lattice exactly.
        Int d = det(c.basis);
        check(abs(d) == ipow(Int(8), 12), "Leech basis has wrong determinant");
        MatZ bb = c.basis * c.basis.transpose();
        c.gram = MatZ(24, 24);
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) {
                check(bb.at(i, j) % 8 == 0, "Leech gram not divisible by 8");
                c.gram.at(i, j) = bb.at(i, j) / 8;
            }
        check(det(c.gram) == 1, "Leech gram must be unimodular");
        for (int i = 0; i < 24; ++i)
            check(c.gram.at(i, i) % 2 == 0, "Leech gram must be even");
        return c;
    }();
    return lc;
}

}  // namespace autprod
