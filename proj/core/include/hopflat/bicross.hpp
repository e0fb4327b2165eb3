#pragma once

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Mirror bicrossproduct of a base algebra H, built on H (x) H with basis index
/// a * dim(H) + h for a (x) h. The first factor carries the opposite coproduct of H.
struct Bicrossproduct {
    AlgebraHandle base;
    AlgebraHandle mh;
    Mat embed_cop;  ///< a -> a (x) 1, dim^2 x dim
    Mat embed_h;    ///< h -> 1 (x) h, dim^2 x dim
};

/// Product (a h)(b g) = a (h1 b S h2) (x) h3 g; coproduct (a2 (x) h2) (x) (a1 h1 S h3 (x) h4);
/// antipode (1 (x) S h2)(S^-1(a h1 S h3) (x) 1). Runs the full Hopf axiom suite.
Bicrossproduct mirror_bicrossproduct(const AlgebraHandle& base);

/// Residuals of the embedding morphism checks and the cross relation
/// (1 (x) h)(b (x) 1) = (h1 b S h2 (x) 1)(1 (x) h3) on all basis pairs.
AxiomReport verify_bicross(const Bicrossproduct& bc);

/// Adjoint action h1 a S(h2).
Vec adjoint_action(const Algebra& base, const Vec& h, const Vec& a);
Element adjoint_action(const Element& h, const Element& a);

/// Right coaction h2 (x) h1 S(h3) as a dim x dim coefficient matrix.
Mat right_coaction(const Algebra& base, const Vec& h);

/// Matrix of phi -> (a (x) h) |> phi = <S h1 S a, phi1> <h2, phi3> phi2 on the dual of the
/// base algebra (dual basis), for the basis element with M(H) index ah.
Mat dual_left_action_basis(const Algebra& base, const Algebra& dual_algebra, int ah);
/// Same for a general M(H) element.
Mat dual_left_action(const Algebra& base, const Algebra& dual_algebra, const Vec& x);
/// Matrix of phi -> phi <| (a (x) h) = <a h1, phi1> <S h2, phi3> phi2.
Mat dual_right_action(const Algebra& base, const Algebra& dual_algebra, const Vec& x);

}  // namespace hopflat
