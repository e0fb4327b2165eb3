#pragma once

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Solves h l = l h = eps(h) l, eps(l) = 1 from the SVD null space of the stacked
/// invariance constraints. Throws NoHaarIntegral or NonUniqueHaar.
Vec solve_haar(const Algebra& algebra);

/// Cached normalised Haar integral of the algebra behind the handle.
Element haar_integral(const AlgebraHandle& algebra);

/// Residuals of the standard Haar integral properties: invariance, idempotency,
/// star and antipode invariance, cyclic invariance of iterated coproducts up to
/// three applications, the separability idempotent identities (with e.e computed in
/// H (x) H^op) and the pairing identity against the dual algebra.
AxiomReport verify_haar(const Algebra& algebra, const Algebra& dual_algebra);

}  // namespace hopflat
