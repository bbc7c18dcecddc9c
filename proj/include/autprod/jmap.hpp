// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <vector>

#include "autprod/jacobi.hpp"
#include "autprod/weilrep.hpp"

namespace autprod {

// Tuple (phi_d)_{d | N} of Jacobi forms of index L, the image of a
// vector-valued form on U(N) + U + L under the isomorphism J.  Entries
// have integral q-exponents and character keys in dual coordinates of L.
struct JacobiTuple {
    long N = 1;
    std::shared_ptr<const Lattice> L;
    std::map<long, JacobiSeries> entries;

    const JacobiSeries& at(long d) const;
};

// Block decomposition M = U(N) + U + L read off the Gram matrix: the
// hyperbolic planes occupy the leading four coordinates, the positive
// definite part L the rest.
struct CuspSplit {
    long N;
    Lattice L;
};
CuspSplit split_cusp_lattice(const Lattice& M);

// Dual coordinates in M of the coset labeled (a, 0, gamma): the label
// (a, b) on D(U(N)) has dual coordinates (b, a).
DualVec embed_label(const Lattice& M, long N, long a, const DualVec& gamma);

// J by its defining formula: the (n, l) coefficient of phi_d is
// sum_a e(ad/N) c_{(a,0), l+L}(n - Q(l)), assembled as an exact cyclotomic
// sum which must come out rational.
JacobiTuple jmap_forward(const VectorValuedForm& F, long qprec);

// Same map under the assumption that components are invariant under
// (Z/N)* acting on the label a (verified first): the character sums
// collapse to Ramanujan sums and the arithmetic stays rational throughout.
JacobiTuple jmap_forward_moebius(const VectorValuedForm& F, long qprec);

// Same map through the theta decomposition phi_d = sum_gamma h_{d,gamma}
// Theta_{L,gamma} with h_{d,gamma} = sum_a e(ad/N) c_{(a,0),gamma}.
JacobiTuple jmap_forward_theta(const VectorValuedForm& F, long qprec);

// The components c_{(a,0),gamma} recovered from a tuple:
//   c_{(a,0),gamma}(n) = (1/N) sum_{d|N} R(a, N/d) phi_d(n + Q(l_gamma), l_gamma),
// R the Ramanujan sum.  Inverts jmap_forward on the (a, 0, gamma) slice.
struct VectorValuedSlice {
    long N = 1;
    std::shared_ptr<const Lattice> L;
    std::vector<std::vector<QSeries>> comps;  // [a][coset index of D_L]
};
VectorValuedSlice jmap_inverse_slice(const JacobiTuple& tuple);

// The same slice read off a vector-valued form directly.
VectorValuedSlice slice_of(const VectorValuedForm& F);

// Terms with integral q-exponent, over exponent denominator 1.
JacobiSeries integer_q_slice(const JacobiSeries& s);

// J of the averaging lift over Gamma_0(p) in closed form, without ever
// materializing the vector-valued form: phi_1 = scale * eta-quotient *
// Theta_{L,0}, and phi_p = phi_1 + p * (integer-exponent slice of
// phi_1 | S) from the p + 1 cosets of Gamma_0(p) in SL2(Z).  The slash
// is evaluated exactly: eta(-1/tau) = sqrt(-i tau) eta(tau) on the scalar
// part and the Gauss-sum automorphy factor on the theta part, and the
// combined scalar must be rational.  phi_p is built to its own precision
// qprec_p (default qprec): product expansions only ever read it at
// arguments nm/p^2, and its dual-lattice theta enumeration is far denser
// than the one for phi_1.
JacobiTuple prime_tuple_from_eta(const EtaShape& shape, const Rat& scale, long p,
                                 const Lattice& L, long qprec, long qprec_p = -1);

}  // namespace autprod
