// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "autprod/cyclotomic.hpp"
#include "autprod/lattice.hpp"
#include "autprod/qseries.hpp"

namespace autprod {

// The Weil representation of the metaplectic group on the group ring of
// the discriminant group of an even lattice, given by its values on the
// standard generators:
//   rho(T) e_x = e(-Q(x)) e_x,
//   rho(S) e_x = e(sign/8)/sqrt(|D|) * sum_y e((x,y)) e_y.
// All entries are exact elements of Q(zeta_modulus); the square root of
// |D| enters through an explicit Gauss-sum expression, never numerically.
struct WeilRep {
    Lattice M;  // carrier lattice (any signature)
    long dim;   // |D|
    int sign8;
    long level;
    long modulus;  // cyclotomic order, lcm(8, level)
    std::vector<DualVec> elements;  // canonical coset representatives
    std::vector<Rat> qvals;         // Q(x) mod 1 in [0, 1)
    std::vector<CycQ> T;            // diagonal
    std::vector<std::vector<CycQ>> S;

    long index_of(const DualVec& rep) const { return M.coset_index(rep); }
};

// Builds the matrices and verifies unitarity of S.  Dense matrices are
// meant for small discriminant groups; |D| is capped at 64.
WeilRep weil_matrices(const Lattice& M);

// Defining relations on the generators: (ST)^3 = S^2, S^4 = 1, and the
// dual involution S^2 e_x = e(-sign/4) e_{-x}.
bool weil_relations_hold(const WeilRep& W);

// Milgram's formula sum_x e(Q(x)) = sqrt(|D|) e(sign/8), both sides exact
// cyclotomic numbers.
bool milgram_identity_holds(const Lattice& M);

// Discrete Fourier pair between the standard basis e_{(a,b)} of the group
// ring of D(U(N)) = (Z/N)^2 and the transformed basis
//   f_{(a,b)} = (1/N) sum_c e(-ac/N) e_{(c,b)},
// on which SL2(Z) acts by rho(A) f_v = f_{Av}.  The vectors are indexed by
// a*N + b throughout.
struct FBasis {
    long N;
    std::vector<std::vector<CycQ>> to_e;  // column (a,b): f_{(a,b)} in e-coordinates
    std::vector<std::vector<CycQ>> to_f;  // inverse change of basis
};
FBasis f_basis(long N);

// Fourier pair on the a-axis alone, acting on component-coefficient
// vectors of length N: if F = sum_a c_a e_a = sum_d h_d f_d then
// h_d = sum_a e(ad/N) c_a and c_a = (1/N) sum_d e(-ad/N) h_d.  Used by
// the isomorphism with Jacobi form tuples.
std::vector<CycQ> to_f_coeffs(long N, const std::vector<CycQ>& e_coeffs);
std::vector<CycQ> to_e_coeffs(long N, const std::vector<CycQ>& f_coeffs);

// Verifies rho(T) f_{(a,b)} = f_{(a+b,b)} and rho(S) f_{(a,b)} = f_{(-b,a)}
// coefficientwise over the standard basis, with the intermediate sums
// evaluated honestly as cyclotomic numbers.  Works for any N without
// building dense matrices.
bool f_basis_identities_hold(long N);

// Vector-valued q-series for the Weil representation of M: one component
// per canonical coset of D_M, with exponents in Z - Q(coset).
enum class VVBasis { E, F };

struct VectorValuedForm {
    std::shared_ptr<const Lattice> M;
    Rat weight;
    VVBasis basis = VVBasis::E;
    std::vector<QSeries> comps;  // by canonical coset index

    const QSeries& component(const DualVec& rep) const;
    // Records "index a b : exponent = coefficient", canonical order.
    std::string dump() const;
    static VectorValuedForm parse(const Lattice& M, const std::string& text);
};

// Scheithauer's closed form of the averaging lift over Gamma_0(p) for a
// discriminant form of prime level p and even signature:
//   F = f e_0 + xi_1 (p/sqrt(|D|)) sum_gamma g_{j_gamma} e_gamma,
// where f = scale * prod_k eta(k tau)^{b_k} (k in {1, p}), f|S is split
// into the slices g_j by exponent residue j/p mod 1, j_gamma = -p Q(gamma)
// mod p, and xi_1 = (-1/|D|) e(sign/8).  All square roots must cancel;
// a VerifyError reports the defect otherwise.
VectorValuedForm averaging_lift_prime(const EtaShape& shape, const Rat& scale, const Lattice& M,
                                      long qprec);

}  // namespace autprod
