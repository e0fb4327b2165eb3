#include "hopflat/tensor_net.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "hopflat/duality.hpp"
#include "hopflat/error.hpp"

namespace hopflat {

std::int64_t LabeledTensor::size() const {
    std::int64_t s = 1;
    for (int d : dims) s *= d;
    return s;
}

namespace {

int dim_of(const LabeledTensor& t, int label) {
    auto it = std::find(t.labels.begin(), t.labels.end(), label);
    if (it == t.labels.end()) throw Error(ErrorKind::DimensionMismatch, "label missing from tensor");
    return t.dims[it - t.labels.begin()];
}

bool has_label(const LabeledTensor& t, int label) {
    return std::find(t.labels.begin(), t.labels.end(), label) != t.labels.end();
}

std::int64_t product_size(const LabeledTensor& a, const LabeledTensor& b) {
    std::int64_t s = 1;
    for (std::size_t i = 0; i < a.labels.size(); ++i)
        if (!has_label(b, a.labels[i])) s *= a.dims[i];
    for (std::size_t i = 0; i < b.labels.size(); ++i)
        if (!has_label(a, b.labels[i])) s *= b.dims[i];
    return s;
}

bool shares_label(const LabeledTensor& a, const LabeledTensor& b) {
    return std::any_of(a.labels.begin(), a.labels.end(), [&](int l) { return has_label(b, l); });
}

}  // namespace

LabeledTensor permute(const LabeledTensor& t, const std::vector<int>& labels) {
    if (labels.size() != t.labels.size()) throw Error(ErrorKind::DimensionMismatch, "permutation drops labels");
    if (labels == t.labels) return t;
    const std::size_t rank = labels.size();
    std::vector<std::int64_t> old_stride(rank);
    std::int64_t s = 1;
    for (std::size_t k = rank; k-- > 0;) {
        old_stride[k] = s;
        s *= t.dims[k];
    }
    LabeledTensor out;
    out.labels = labels;
    std::vector<std::int64_t> src_stride(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        auto it = std::find(t.labels.begin(), t.labels.end(), labels[k]);
        if (it == t.labels.end()) throw Error(ErrorKind::DimensionMismatch, "permutation names an unknown label");
        const auto pos = it - t.labels.begin();
        out.dims.push_back(t.dims[pos]);
        src_stride[k] = old_stride[pos];
    }
    out.data.resize(t.data.size());
    std::vector<int> counter(rank, 0);
    std::int64_t src = 0;
    for (std::int64_t dst = 0; dst < out.data.size(); ++dst) {
        out.data(dst) = t.data(src);
        for (std::size_t k = rank; k-- > 0;) {
            if (++counter[k] < out.dims[k]) {
                src += src_stride[k];
                break;
            }
            src -= src_stride[k] * (out.dims[k] - 1);
            counter[k] = 0;
        }
    }
    return out;
}

LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b) {
    std::vector<int> free_a, shared, free_b;
    std::int64_t rows = 1, inner = 1, cols = 1;
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
        if (has_label(b, a.labels[i])) {
            if (b.dims[std::find(b.labels.begin(), b.labels.end(), a.labels[i]) - b.labels.begin()] != a.dims[i])
                throw Error(ErrorKind::DimensionMismatch, "shared label with different extents");
            shared.push_back(a.labels[i]);
            inner *= a.dims[i];
        } else {
            free_a.push_back(a.labels[i]);
            rows *= a.dims[i];
        }
    }
    for (std::size_t i = 0; i < b.labels.size(); ++i) {
        if (!has_label(a, b.labels[i])) {
            free_b.push_back(b.labels[i]);
            cols *= b.dims[i];
        }
    }
    std::vector<int> order_a = free_a;
    order_a.insert(order_a.end(), shared.begin(), shared.end());
    std::vector<int> order_b = shared;
    order_b.insert(order_b.end(), free_b.begin(), free_b.end());
    const LabeledTensor pa = permute(a, order_a);
    const LabeledTensor pb = permute(b, order_b);

    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> ma(pa.data.data(), rows, inner);
    Eigen::Map<const RowMat> mb(pb.data.data(), inner, cols);
    LabeledTensor out;
    out.labels = free_a;
    out.labels.insert(out.labels.end(), free_b.begin(), free_b.end());
    for (int l : free_a) out.dims.push_back(dim_of(a, l));
    for (int l : free_b) out.dims.push_back(dim_of(b, l));
    out.data.resize(rows * cols);
    Eigen::Map<RowMat>(out.data.data(), rows, cols).noalias() = ma * mb;
    return out;
}

LabeledTensor contract_network(std::vector<LabeledTensor> tensors, const std::vector<int>& output) {
    if (tensors.empty()) throw Error(ErrorKind::DimensionMismatch, "empty tensor network");
    while (tensors.size() > 1) {
        std::size_t best_i = 0, best_j = 1;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        bool best_shared = false;
        for (std::size_t i = 0; i < tensors.size(); ++i)
            for (std::size_t j = i + 1; j < tensors.size(); ++j) {
                const bool shared = shares_label(tensors[i], tensors[j]);
                const std::int64_t size = product_size(tensors[i], tensors[j]);
                if ((shared && !best_shared) || (shared == best_shared && size < best)) {
                    best = size;
                    best_shared = shared;
                    best_i = i;
                    best_j = j;
                }
            }
        LabeledTensor merged = contract(tensors[best_i], tensors[best_j]);
        tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_j));
        tensors[best_i] = std::move(merged);
    }
    return permute(tensors.front(), output);
}

Mat split_edge(const Algebra& dual_algebra, const Vec& phi) {
    return dual_algebra.data().antipode * dual_algebra.comultiply(phi);
}

Vec face_tensor(const Algebra& dual_algebra, const Vec& a, int length) {
    const int n = dual_algebra.dim();
    Vec out(ipow(n, length));
    if (length == 0) {
        out(0) = dual_algebra.unit().cwiseProduct(a).sum();
        return out;
    }
    std::vector<Vec> prefix(length + 1);
    std::function<void(int, std::int64_t)> walk = [&](int depth, std::int64_t offset) {
        for (int x = 0; x < n; ++x) {
            prefix[depth + 1] =
                depth == 0 ? basis_vector(n, x) : dual_algebra.multiply(basis_vector(n, x), prefix[depth]);
            const std::int64_t index = offset * n + x;
            if (depth + 1 == length)
                out(index) = prefix[depth + 1].cwiseProduct(a).sum();
            else
                walk(depth + 1, index);
        }
    };
    walk(0, 0);
    return out;
}

TensorNetworkSpec uniform_spec(const GraphHandle& graph, const Vec& edge, const Vec& face, const Vec& boundary) {
    TensorNetworkSpec spec;
    spec.graph = graph;
    spec.edge_labels.assign(graph->num_edges(), edge);
    spec.face_labels.assign(graph->num_faces(), face);
    for (int f = 0; f < graph->num_faces(); ++f) {
        const auto site = graph->default_face_site(f);
        spec.face_starts.push_back(site ? site->face_half : graph->faces()[f].front());
    }
    if (graph->has_boundary())
        spec.boundary_labels.assign(graph->boundary_components().size(), boundary.size() ? boundary : face);
    return spec;
}

namespace {

int right_label(int edge) { return 3 * edge; }
int left_label(int edge) { return 3 * edge + 1; }
int physical_label(int edge) { return 3 * edge + 2; }

int side_label(int he) { return is_target(he) ? right_label(edge_of(he)) : left_label(edge_of(he)); }

LabeledTensor make_face(const Algebra& d, const Vec& label, const std::vector<int>& sides) {
    LabeledTensor t;
    for (int he : sides) {
        t.labels.push_back(side_label(he));
        t.dims.push_back(d.dim());
    }
    t.data = face_tensor(d, label, static_cast<int>(sides.size()));
    return t;
}

void check_spec(const Algebra& d, const TensorNetworkSpec& spec) {
    const RibbonGraph& g = *spec.graph;
    if (static_cast<int>(spec.edge_labels.size()) != g.num_edges() ||
        static_cast<int>(spec.face_labels.size()) != g.num_faces() ||
        static_cast<int>(spec.face_starts.size()) != g.num_faces())
        throw Error(ErrorKind::DimensionMismatch, "tensor network labels do not cover the graph");
    for (const Vec& v : spec.edge_labels)
        if (v.size() != d.dim()) throw Error(ErrorKind::DimensionMismatch, "edge label has the wrong dimension");
    for (const Vec& v : spec.face_labels)
        if (v.size() != d.dim()) throw Error(ErrorKind::DimensionMismatch, "face label has the wrong dimension");
    for (int f = 0; f < g.num_faces(); ++f)
        if (g.face_of(spec.face_starts[f]) != f)
            throw Error(ErrorKind::SiteInvalid, "face start is not on its face");
    if (g.has_boundary()) {
        if (spec.boundary_labels.size() != g.boundary_components().size())
            throw Error(ErrorKind::MissingBoundaryLabels, "every boundary component needs a label");
        for (const Vec& v : spec.boundary_labels)
            if (v.size() != d.dim()) throw Error(ErrorKind::DimensionMismatch, "boundary label has the wrong dimension");
    }
}

/// Face and boundary tensors of the trace, with boundary sides moved to their boundary component.
std::vector<LabeledTensor> face_tensors(const Algebra& d, const TensorNetworkSpec& spec) {
    const RibbonGraph& g = *spec.graph;
    std::vector<LabeledTensor> out;
    for (int f = 0; f < g.num_faces(); ++f) {
        std::vector<int> sides;
        for (int he : g.face_walk_from(spec.face_starts[f]))
            if (!g.is_boundary(he)) sides.push_back(he);
        if (sides.empty()) continue;
        out.push_back(make_face(d, spec.face_labels[f], sides));
    }
    for (std::size_t b = 0; b < g.boundary_components().size(); ++b)
        out.push_back(make_face(d, spec.boundary_labels[b], g.boundary_components()[b]));
    return out;
}

Complex scalar_network(std::vector<LabeledTensor> tensors) { return contract_network(std::move(tensors), {}).data(0); }

}  // namespace

Complex tensor_trace(const Algebra& dual_algebra, const TensorNetworkSpec& spec) {
    if (spec.graph->has_boundary())
        throw Error(ErrorKind::BoundaryPresent, "graph '" + spec.graph->name() + "' has a boundary");
    return tensor_trace_boundary(dual_algebra, spec);
}

Complex tensor_trace_boundary(const Algebra& dual_algebra, const TensorNetworkSpec& spec) {
    check_spec(dual_algebra, spec);
    const int n = dual_algebra.dim();
    std::vector<LabeledTensor> tensors = face_tensors(dual_algebra, spec);
    for (int e = 0; e < spec.graph->num_edges(); ++e) {
        const Mat split = split_edge(dual_algebra, spec.edge_labels[e]);
        LabeledTensor t{{right_label(e), left_label(e)}, {n, n}, Vec(n * n)};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.data(i * n + j) = split(i, j);
        tensors.push_back(std::move(t));
    }
    return scalar_network(std::move(tensors));
}

namespace {

LatticeState contract_state(const AlgebraHandle& dual_algebra, const TensorNetworkSpec& spec) {
    const Algebra& d = *dual_algebra;
    check_spec(d, spec);
    const int n = d.dim();
    const int ne = spec.graph->num_edges();
    std::vector<LabeledTensor> tensors = face_tensors(d, spec);
    const Mat& s = d.data().antipode;
    for (int e = 0; e < ne; ++e) {
        // Physical leg phi1; the traced leg phi2 is split as S(phi2_1) (x) phi2_2.
        const Vec d2 = iterated_coproduct(d, spec.edge_labels[e], 2);
        LabeledTensor t{{physical_label(e), right_label(e), left_label(e)}, {n, n, n}, Vec::Zero(n * n * n)};
        for (int c = 0; c < n; ++c)
            for (int p = 0; p < n; ++p)
                for (int j = 0; j < n; ++j) {
                    const Complex v = d2((c * n + p) * n + j);
                    if (v == Complex(0.0)) continue;
                    for (int i = 0; i < n; ++i) t.data((c * n + i) * n + j) += s(i, p) * v;
                }
        tensors.push_back(std::move(t));
    }
    std::vector<int> output;
    for (int e = 0; e < ne; ++e) output.push_back(physical_label(e));
    LatticeState out;
    out.graph = spec.graph;
    out.algebra = dual_algebra;
    out.coeffs = contract_network(std::move(tensors), output).data;
    return out;
}

}  // namespace

LatticeState tn_state(const AlgebraHandle& dual_algebra, const TensorNetworkSpec& spec) {
    if (spec.graph->has_boundary())
        throw Error(ErrorKind::BoundaryPresent, "graph '" + spec.graph->name() + "' has a boundary");
    return contract_state(dual_algebra, spec);
}

LatticeState tn_state_boundary(const AlgebraHandle& dual_algebra, const TensorNetworkSpec& spec) {
    return contract_state(dual_algebra, spec);
}

double metric_norm_squared(const LatticeAlgebra& algebra, int num_edges, const Vec& state) {
    const Mat g = apply_metric(algebra, num_edges, Mat(state));
    return std::real(state.dot(g.col(0)));
}

GroundState ground_state(const ModelSpec& model) {
    const LatticeAlgebra& alg = *model.algebra;
    const RibbonGraph& g = *model.graph;
    TensorNetworkSpec spec = uniform_spec(model.graph, alg.dual()->haar(), model.haar_cop);
    for (std::size_t i = 0; i < model.face_ids.size(); ++i) spec.face_starts[model.face_ids[i]] = model.face_sites[i].face_half;
    GroundState out;
    out.state = tn_state(alg.dual(), spec);
    out.norm = std::sqrt(std::max(0.0, metric_norm_squared(alg, g.num_edges(), out.state.coeffs)));
    if (!(out.norm > 1e-10))
        throw Error(ErrorKind::ZeroState, "tensor-network state vanishes on '" + g.name() + "'", "ground-state-norm",
                    out.norm);
    out.state.coeffs /= out.norm;
    return out;
}

}  // namespace hopflat
