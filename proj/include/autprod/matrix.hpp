// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "autprod/numeric.hpp"

namespace autprod {

// Dense matrix over Z.  Row-major storage; all algorithms are exact.
struct MatZ {
    int nr = 0, nc = 0;
    std::vector<Int> a;

    MatZ() = default;
    MatZ(int r, int c) : nr(r), nc(c), a(size_t(r) * c, Int(0)) {}

    Int& at(int i, int j) { return a[size_t(i) * nc + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * nc + j]; }

    static MatZ identity(int n);
    static MatZ from_rows(const std::vector<std::vector<long>>& rows);

    bool operator==(const MatZ& o) const { return nr == o.nr && nc == o.nc && a == o.a; }
    bool is_zero() const;
    bool is_symmetric() const;

    MatZ transpose() const;
    MatZ operator*(const MatZ& o) const;
    MatZ operator+(const MatZ& o) const;
    MatZ operator-(const MatZ& o) const;

    std::vector<Int> mul_vec(const std::vector<Int>& v) const;
};

// Dense matrix over Q.
struct MatQ {
    int nr = 0, nc = 0;
    std::vector<Rat> a;

    MatQ() = default;
    MatQ(int r, int c) : nr(r), nc(c), a(size_t(r) * c, Rat(0)) {}
    explicit MatQ(const MatZ& m);

    Rat& at(int i, int j) { return a[size_t(i) * nc + j]; }
    const Rat& at(int i, int j) const { return a[size_t(i) * nc + j]; }

    static MatQ identity(int n);
    bool operator==(const MatQ& o) const { return nr == o.nr && nc == o.nc && a == o.a; }

    MatQ transpose() const;
    MatQ operator*(const MatQ& o) const;
    std::vector<Rat> mul_vec(const std::vector<Rat>& v) const;
};

Int det(const MatZ& m);

// Smith normal form: unimodular L, R with L * A * R = D, D diagonal with
// d_1 | d_2 | ... and nonnegative entries.
struct SmithResult {
    MatZ d, l, r;
};
SmithResult smith_normal_form(const MatZ& m);

// Row-style Hermite normal form of the row span.  Returns a matrix whose
// rows are a basis of the lattice generated by the rows of m (zero rows
// dropped), in lower-triangular echelon shape with positive pivots and
// reduced entries below them.
MatZ hnf_row_basis(const MatZ& m);

// Basis of the integer kernel {x : A x = 0}, returned as matrix columns.
// The basis spans the full (saturated) kernel lattice.
MatZ kernel_basis(const MatZ& m);

// Inverse of a square rational matrix; throws on singular input.
MatQ inverse(const MatQ& m);

// Solve A x = b over Q; throws on singular A.
std::vector<Rat> solve(const MatQ& A, const std::vector<Rat>& b);

// Signature (n_plus, n_minus) of a symmetric integer matrix, computed by
// exact symmetric Gaussian reduction (Sylvester's law of inertia).
std::pair<int, int> inertia(const MatZ& g);

// Adjugate matrix: adj(m) * m = det(m) * I.
MatZ adjugate(const MatZ& m);

}  // namespace autprod
