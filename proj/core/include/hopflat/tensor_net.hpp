#pragma once

#include <cstdint>
#include <vector>

#include "hopflat/hamiltonian.hpp"

namespace hopflat {

/// Dense tensor with integer index labels, row-major over `labels` in order.
struct LabeledTensor {
    std::vector<int> labels;
    std::vector<int> dims;
    Vec data;

    std::int64_t size() const;
};

/// Sums over every label shared by the two tensors; the result keeps a's free labels
/// followed by b's.
LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b);
/// Reorders the data to the given label order.
LabeledTensor permute(const LabeledTensor& t, const std::vector<int>& labels);
/// Contracts a network pairwise, always picking the pair with the smallest result, and
/// returns the remaining tensor with labels in `output` order.
LabeledTensor contract_network(std::vector<LabeledTensor> tensors, const std::vector<int>& output);

/// Labels for the Hopf tensor trace: one element of H* per edge, one element of H^cop per
/// face with the half-edge where its product starts, and on surfaces with boundary one
/// element of H^cop per boundary component.
struct TensorNetworkSpec {
    GraphHandle graph;
    std::vector<Vec> edge_labels;
    std::vector<Vec> face_labels;
    std::vector<int> face_starts;
    std::vector<Vec> boundary_labels;
};

/// Spec with every edge labelled `edge`, every face `face` starting at its default corner
/// and every boundary component `boundary`.
TensorNetworkSpec uniform_spec(const GraphHandle& graph, const Vec& edge, const Vec& face,
                               const Vec& boundary = Vec());

/// (S (x) id) coproduct of phi as a dim x dim coefficient matrix: row index goes to the face on
/// the right of the edge, column index to the face on its left.
Mat split_edge(const Algebra& dual_algebra, const Vec& phi);

/// Face tensor: <x_m ... x_2 x_1, a> over all basis choices of the m factors, row-major. This
/// pairs x_1 (x) ... (x) x_m with the (m-1)-fold coproduct of a in H^cop, leg by leg, which is
/// how the face operator at the same start pairs its legs.
Vec face_tensor(const Algebra& dual_algebra, const Vec& a, int length);

/// Hopf tensor trace of a closed surface. Throws BoundaryPresent.
Complex tensor_trace(const Algebra& dual_algebra, const TensorNetworkSpec& spec);
/// Trace with boundary components paired against their own labels; equals tensor_trace when
/// the graph has no boundary. Throws MissingBoundaryLabels.
Complex tensor_trace_boundary(const Algebra& dual_algebra, const TensorNetworkSpec& spec);

/// State whose edge-e factor is the first coproduct leg of its label, the second legs being
/// traced through the faces. Throws BoundaryPresent.
LatticeState tn_state(const AlgebraHandle& dual_algebra, const TensorNetworkSpec& spec);
/// Experimental: the same construction with boundary components traced against their labels.
LatticeState tn_state_boundary(const AlgebraHandle& dual_algebra, const TensorNetworkSpec& spec);

struct GroundState {
    LatticeState state;
    double norm = 0.0;  ///< Haar-metric norm before normalisation
};

/// Tensor-network state with Haar labels on every edge and face at the model's face sites,
/// normalised under the Haar inner product. Throws ZeroState if the norm is at most 1e-10.
GroundState ground_state(const ModelSpec& model);

/// Squared norm under the tensored Haar inner product.
double metric_norm_squared(const LatticeAlgebra& algebra, int num_edges, const Vec& state);

}  // namespace hopflat
