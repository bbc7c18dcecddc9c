// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "autprod/matrix.hpp"

namespace autprod {

// Coordinates of a vector of the dual lattice L' with respect to the dual
// basis, i.e. c_i = (v, b_i) for the chosen basis b_i of L.  Every element
// of L' has integer coordinates of this kind; v lies in L itself iff
// gram^{-1} c is integral.
using DualVec = std::vector<long>;

bool is_zero(const DualVec& v);
DualVec operator+(const DualVec& a, const DualVec& b);
DualVec operator-(const DualVec& a, const DualVec& b);
DualVec operator*(long s, const DualVec& a);

// Sign normalization: flip so the first nonzero coordinate is positive.
DualVec sign_normalized(const DualVec& v);
bool is_sign_positive(const DualVec& v);  // zero vector counts as positive

// Canonical total order: by the coordinate sequence, lexicographically.
bool canonical_less(const DualVec& a, const DualVec& b);

struct DualVecHash {
    size_t operator()(const DualVec& v) const;
};

// Invariants of the discriminant group D = L'/L.
struct DiscriminantForm {
    std::vector<long> orders;  // invariant factors > 1, ascending divisibility
    MatZ generators;           // dual coordinates, one generator per column
    Int group_order;           // |D| = product of the orders
    long level;                // smallest N with N Q(x) integral for all x in D
};

class Lattice {
public:
    explicit Lattice(MatZ gram);

    int rank() const { return gram_.nr; }
    const MatZ& gram() const { return gram_; }
    Int det() const { return det_; }           // signed determinant
    Int disc() const { return abs(det_); }     // |L'/L|
    const MatZ& gram_adjugate() const { return adj_; }
    std::pair<int, int> signature() const { return {sig_pos_, sig_neg_}; }
    int signature_mod8() const;
    bool is_positive_definite() const { return sig_neg_ == 0; }
    bool is_unimodular() const { return disc() == 1; }

    // Bilinear pairing and quadratic form in dual coordinates:
    // (v, w) = c_v^T gram^{-1} c_w,  Q(v) = (v, v) / 2.
    Rat pairing(const DualVec& a, const DualVec& b) const;
    Rat norm2(const DualVec& a) const;  // (v, v)
    Rat q_value(const DualVec& a) const;

    // Membership of a dual vector in L itself.
    bool in_lattice(const DualVec& a) const;
    // Divisibility in L': whether v/s still lies in L'.
    static bool divisible(const DualVec& a, long s);
    static DualVec divided(const DualVec& a, long s);

    // Conversions between primal rational coordinates and dual coordinates.
    DualVec dual_from_primal(const std::vector<Rat>& x) const;
    std::vector<Rat> primal_from_dual(const DualVec& c) const;
    DualVec dual_from_lattice_point(const std::vector<Int>& x) const;

    const DiscriminantForm& discriminant_form() const;

    // All elements of L'/L as dual-coordinate representatives, each reduced
    // to the canonical representative of its coset (the one produced by the
    // generator sweep).  Intended for small discriminant groups.
    std::vector<DualVec> coset_representatives() const;
    // Canonical coset label of a dual vector (index into the sweep order).
    long coset_index(const DualVec& v) const;

    bool is_even() const;  // checked at construction; kept for clarity

private:
    MatZ gram_;
    Int det_;
    MatZ adj_;
    int sig_pos_ = 0, sig_neg_ = 0;
    mutable std::optional<DiscriminantForm> disc_form_;
    mutable MatZ smith_l_;
    mutable std::vector<long> smith_diag_;
    mutable std::vector<DualVec> cosets_;
    void build_cosets() const;
};

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice rescaled(const Lattice& l, long n);  // gram scaled by n (n may be negative)

// Hyperbolic plane U and its rescalings U(N).
Lattice hyperbolic_plane(long n = 1);

// All vectors v in (shift + Z^n) with v^T gram v <= bound, reported through
// the callback as primal rational coordinates together with the exact value
// v^T gram v.  gram must be positive definite.  Fincke-Pohst enumeration
// with an exact rational LDL^T decomposition; no floating point is used.
void enumerate_quadratic(const MatZ& gram, const Rat& bound, const std::vector<Rat>& shift,
                         const std::function<void(const std::vector<Rat>&, const Rat&)>& emit);

// Nonzero lattice vectors of L with (v,v) <= bound, as dual coordinates in
// canonical order (sign-normalized representative first, then its negative,
// pairs ordered by (norm, coordinates)).
std::vector<DualVec> short_vectors(const Lattice& l, const Rat& bound);

// Vectors of the coset rep + L with (v,v) <= bound, canonical order.  The
// rep is given in dual coordinates.
std::vector<DualVec> short_coset_vectors(const Lattice& l, const DualVec& rep, const Rat& bound);

// Vectors of the dual lattice L' with (v,v) <= bound (nonzero), canonical order.
std::vector<DualVec> short_dual_vectors(const Lattice& l, const Rat& bound);

bool is_rootless(const Lattice& l);

// Integer matrices acting on primal coordinates as column vectors.
bool is_isometry(const Lattice& l, const MatZ& g);

struct Sublattice {
    Lattice lat;
    MatZ embedding;  // columns: basis of the sublattice in primal coords of the ambient
};

// Fixed-point sublattice of an isometry g, primitively embedded.
Sublattice fixed_point_sublattice(const Lattice& l, const MatZ& g);

// Orthogonal complement of an embedded sublattice, primitively embedded.
Sublattice orthogonal_complement(const Lattice& l, const MatZ& embedding);

// Even overlattice generated by L and a set of dual vectors (glue).  Throws
// VerifyError if the glue does not close into an even integral lattice.
Lattice even_overlattice(const Lattice& l, const std::vector<DualVec>& glue, MatQ* basis_out);

}  // namespace autprod
