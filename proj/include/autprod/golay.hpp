// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "autprod/lattice.hpp"

namespace autprod {

// Extended binary Golay code [24,12,8], built as the extended quadratic
// residue code of length 23.  Coordinates 0..22 are the residues mod 23,
// coordinate 23 is the point at infinity.  Codewords are 24-bit masks.
class GolayCode {
public:
    GolayCode();

    const std::vector<uint32_t>& basis() const { return basis_; }  // 12 words, RREF
    const std::vector<uint32_t>& codewords() const { return words_; }  // all 4096
    const std::vector<uint32_t>& octads() const { return octads_; }    // 759 weight-8 words
    bool contains(uint32_t w) const;

private:
    std::vector<uint32_t> basis_;
    std::vector<uint32_t> words_;
    std::vector<uint32_t> octads_;
};

// The Leech lattice in the standard coordinates: vectors x in Z^24 with
//   x == m*(1,...,1) mod 2, (x - m*1)/2 mod 2 in the Golay code,
//   sum(x) == 4m mod 8,
// inner product (x . y) / 8.  `basis` has the basis vectors as rows.
struct LeechConstruction {
    GolayCode code;
    MatZ basis;   // 24 x 24, rows in Z^24 coordinates
    MatZ gram;    // basis gram / 8, even unimodular
};

const LeechConstruction& leech_construction();

// Membership of an integer vector in the Leech lattice (x coordinates).
bool leech_contains(const GolayCode& code, const std::vector<Int>& x);

}  // namespace autprod
