#pragma once

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Bilinear pairing <a_i, h_j> = matrix(i, j) between a dual algebra and an algebra.
struct DualPairing {
    AlgebraHandle left;
    AlgebraHandle right;
    Mat matrix;
};

struct DualResult {
    AlgebraHandle algebra;
    DualPairing pairing;
};

/// Dual Hopf algebra in the dual basis, so the canonical pairing is the identity.
/// Product and coproduct are the transposed coproduct and product; the star, when H
/// has one, is phi*(h) = conj(phi((S h)*)). Throws AxiomViolation if checks fail.
DualResult dual(const AlgebraHandle& algebra);

/// Structure tensors of the dual, without verification.
HopfData dual_data(const Algebra& algebra);

enum class Opposite { Op, Cop };

/// Opposite product or opposite coproduct; the antipode becomes S^-1.
AlgebraHandle op_cop(const AlgebraHandle& algebra, Opposite which);

Complex pair(const DualPairing& pairing, const Element& phi, const Element& h);
/// Factorwise extension to tensor powers of equal length.
Complex pair(const DualPairing& pairing, const TensorElement& phi, const TensorElement& h);

/// Pairing axioms (tensor compatibility, unit/counit, star, antipode) and non-degeneracy.
AxiomReport verify_pairing(const DualPairing& pairing);

/// Gram matrix G(i,j) = <l, e_i* e_j> of the Haar inner product on the dual algebra.
/// Throws StarUndefined if the dual carries no star, NonPositive if G is not positive definite.
Mat gram_matrix(const Algebra& algebra, const Algebra& dual_algebra);

/// <phi|psi> = <l, phi* psi>, conjugate-linear in phi.
Complex inner_product(const Algebra& algebra, const Algebra& dual_algebra, const Vec& phi, const Vec& psi);

}  // namespace hopflat
