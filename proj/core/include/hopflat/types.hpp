#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace hopflat {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Residual ceiling for exact structure identities (axioms, pairings).
inline constexpr double kStructureTol = 1e-12;
/// Residual ceiling for operator-level assertions.
inline constexpr double kOperatorTol = 1e-10;
/// Relative singular-value cutoff used when extracting null spaces.
inline constexpr double kNullSpaceTol = 1e-9;
/// Relative singular-value cutoff for numerical rank of projector products.
inline constexpr double kRankTol = 1e-8;

inline Vec basis_vector(int dim, int i) {
    Vec v = Vec::Zero(dim);
    v(i) = 1.0;
    return v;
}

/// Integer power for small tensor-space dimensions; throws nothing, caller bounds inputs.
inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace hopflat
