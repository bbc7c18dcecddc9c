// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "autprod/lattice.hpp"
#include "autprod/qseries.hpp"

namespace autprod {

// Frame shapes prod_k k^{b_k} share their syntax and arithmetic with eta
// quotient shapes (the eta product of g is exactly the quotient with the
// same exponents).
using FrameShape = EtaShape;

// A conjugacy-class representative of an isometry of the Leech lattice,
// as shipped in the data files: one matrix per distinct frame shape.
struct ConwayClass {
    FrameShape shape;
    long order = 0;   // n_g, the multiplicative order
    long nhat = 0;    // n_g or 2 n_g, the extension order
    long level = 0;   // N_g: smallest multiple of n_g with 24 | N_g * sum b_k / k
    MatZ matrix;      // isometry in Leech basis coordinates
};

// Traces of powers from a frame shape: tr(g^m) = sum_{k | m} k b_k.
long shape_trace_power(const FrameShape& s, long m);

// Frame multiplicities from traces by Moebius inversion:
// b_m = (1/m) sum_{d | m} mu(m/d) tr(g^d).
FrameShape frame_from_traces(const std::map<long, long>& traces, long order);

// Frame shape of g^m: each k^{b_k} contributes (k/gcd(k,m))^{gcd(k,m) b_k}.
FrameShape power_shape(const FrameShape& s, long m);

long shape_rank(const FrameShape& s);    // sum b_k = dim of the fixed space
long shape_order(const FrameShape& s);   // lcm of the k with b_k != 0
long shape_level(const FrameShape& s);
long shape_nhat(const FrameShape& s);

// Frame shape of an isometry, computed from the traces of its powers.
FrameShape frame_shape_of(const MatZ& g);
long matrix_order(const MatZ& g);

// Shipped class table, sorted by (order, shape string); validated at load.
const std::vector<ConwayClass>& conway_classes();
const ConwayClass& conway_class(const std::string& shape);

// The sign character xi_d on Lambda^{g^d}: trivial when n_g or d is odd,
// otherwise (-1)^{(v, g^{d/2} v)}.  v is given in Leech (primal) coords.
int xi_sign(const ConwayClass& g, long d, const std::vector<Int>& v);

// Divisors d of nhat for which xi_d is nontrivial somewhere on
// Lambda^{g^d}, i.e. the lattice splits into xi-even and xi-odd halves.
std::vector<long> xi_nontrivial_divisors(const ConwayClass& g);

}  // namespace autprod
