#pragma once

#include <cstdint>
#include <vector>

#include "hopflat/site_ops.hpp"

namespace hopflat {

/// Largest lattice dimension for which the ground space is found by probing with random states.
inline constexpr std::int64_t kProbeCap = 1'000'000;

/// A lattice model: a graph, a base algebra and one site per vertex and per face.
struct ModelSpec {
    GraphHandle graph;
    LatticeAlgebraHandle algebra;
    Vec haar_h;    ///< Haar integral of H, labels the vertex projectors
    Vec haar_cop;  ///< Haar integral of H^cop, labels the face projectors
    std::vector<Site> vertex_sites;
    std::vector<Site> face_sites;
    std::vector<int> face_ids;  ///< face index for each entry of face_sites
};

/// Uses the graph's declared sites where they exist and default corners elsewhere.
ModelSpec make_model(const LatticeAlgebraHandle& algebra, const GraphHandle& graph);

struct Projectors {
    std::vector<LatticeOperator> vertex;
    std::vector<LatticeOperator> face;
};

Projectors projectors(const ModelSpec& model);

/// Residuals of the projector properties: idempotency, self-adjointness under the Haar
/// inner product, pairwise commutation, same-site commutation and independence of the
/// starting half-edge. Dense when the lattice fits under `dense_cap`, otherwise evaluated on
/// `samples` random states.
struct ProjectorReport {
    AxiomReport residuals;
    bool dense = true;
    bool repeated_edges = false;  ///< some face walks the same edge twice
};

ProjectorReport check_projectors(const ModelSpec& model, std::int64_t dense_cap = kDenseCap, int samples = 8,
                                 std::uint64_t seed = 1);

/// Throws ProjectorCheckFailed naming the worst property if any residual exceeds `tolerance`.
void require_projectors(const ProjectorReport& report, double tolerance = kOperatorTol);

/// Sum over vertices and faces of (id - projector).
class Hamiltonian {
public:
    explicit Hamiltonian(const ModelSpec& model);

    const Projectors& terms() const noexcept { return projectors_; }
    std::int64_t space_dim() const;
    Mat apply(const Mat& block) const;
    Mat dense(std::int64_t cap = kDenseCap) const;

private:
    ModelSpec model_;
    Projectors projectors_;
};

/// Product of all vertex projectors followed by all face projectors, or the reverse order.
Mat apply_ground_projector(const Projectors& p, const Mat& block, bool faces_first = false);

struct Spectrum {
    std::vector<double> eigenvalues;  ///< ascending
    double hermitian_residual = 0.0;  ///< of the Hamiltonian in a Gram-orthonormal basis
    double max_imag = 0.0;            ///< largest imaginary part if the general solver was needed
    double integrality_residual = 0.0;
    int zero_multiplicity = 0;
};

/// Full eigensolve of the Hamiltonian in the basis orthonormal for the Haar inner product.
Spectrum spectrum(const ModelSpec& model, std::int64_t dense_cap = kDenseCap);

struct GroundSpace {
    int dim = 0;
    Mat basis;              ///< orthonormal under the Haar inner product; empty when probed
    bool probed = false;    ///< rank found with random probes above the dense cap
    double order_residual = 0.0;  ///< projector product, vertex-first versus face-first
    double fixed_residual = 0.0;  ///< max over basis vectors and projectors of |P psi - psi|
};

GroundSpace ground_space(const ModelSpec& model, std::int64_t dense_cap = kDenseCap,
                         std::int64_t probe_cap = kProbeCap, std::uint64_t seed = 1);

/// Numerical rank: singular values above kRankTol times the largest.
int numerical_rank(const Mat& m);

/// Square root of the tensored edge Gram matrix (or its inverse) applied to every column.
Mat apply_metric_sqrt(const LatticeAlgebra& algebra, int num_edges, const Mat& block, bool inverse = false);

}  // namespace hopflat
