#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "hopflat/duality.hpp"
#include "hopflat/groups.hpp"
#include "hopflat/tensor_net.hpp"
#include "oracles.hpp"

using namespace hopflat;

namespace {

/// Random labels with a random start on every face.
TensorNetworkSpec random_spec(const GraphHandle& graph, int n, std::mt19937_64& rng) {
    TensorNetworkSpec spec;
    spec.graph = graph;
    for (int e = 0; e < graph->num_edges(); ++e) spec.edge_labels.push_back(oracle::random_vec(n, rng));
    for (int f = 0; f < graph->num_faces(); ++f) {
        spec.face_labels.push_back(oracle::random_vec(n, rng));
        const auto& walk = graph->faces()[f];
        spec.face_starts.push_back(walk[std::uniform_int_distribution<std::size_t>(0, walk.size() - 1)(rng)]);
    }
    for (std::size_t b = 0; b < graph->boundary_components().size(); ++b)
        spec.boundary_labels.push_back(oracle::random_vec(n, rng));
    return spec;
}

Complex brute_force(const Algebra& dual_algebra, const TensorNetworkSpec& spec) {
    return oracle::brute_force_trace(dual_algebra.data(), {spec.graph.get(), spec.edge_labels, spec.face_labels,
                                                           spec.face_starts, spec.boundary_labels});
}

/// Triangle with its outer face declared as a boundary.
GraphHandle boundary_strip() {
    const GraphHandle closed = builtin_graph("triangle");
    GraphSpec spec = closed->spec();
    spec.name = "strip";
    spec.genus.reset();
    const int outer = closed->face_of(closed->find_half_edge("e0.t"));
    std::vector<std::string> component;
    for (int he : closed->faces()[outer]) component.push_back(closed->half_edge_name(he));
    spec.boundary = {component};
    return make_graph(std::move(spec));
}

std::vector<GraphHandle> small_fixtures() {
    std::vector<GraphHandle> out;
    for (const auto& name : builtin_graph_names()) {
        const GraphHandle g = builtin_graph(name);
        if (g->num_edges() <= 4) out.push_back(g);
    }
    out.push_back(boundary_strip());
    return out;
}

Vec dual_unit(const LatticeAlgebra& la) { return la.dual()->unit(); }

}  // namespace

TEST_SUITE("tensor-net") {

TEST_CASE("edge split is the antipode on the first coproduct leg") {
    std::mt19937_64 rng(89);
    for (const auto& name : builtin_algebra_names()) {
        CAPTURE(name);
        const AlgebraHandle d = dual(builtin_algebra(name)).algebra;
        const HopfData& hd = d->data();
        const int n = d->dim();
        const Vec phi = oracle::random_vec(n, rng);
        Mat expected = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r) expected(r, q) += phi(i) * hd.comult(i, p, q) * hd.antipode(r, p);
        CHECK(oracle::max_abs(split_edge(*d, phi) - expected) <= 1e-12);
    }
}

TEST_CASE("face tensor pairs the reversed product with the label") {
    std::mt19937_64 rng(97);
    const AlgebraHandle d = dual(builtin_algebra("s3-group")).algebra;
    const Vec a = oracle::random_vec(6, rng);
    const Vec t = face_tensor(*d, a, 3);
    CHECK(t.size() == 216);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            for (int z = 0; z < 6; ++z) {
                const Vec prod = d->multiply(d->multiply(basis_vector(6, z), basis_vector(6, y)), basis_vector(6, x));
                CHECK(std::abs(t((x * 6 + y) * 6 + z) - prod.cwiseProduct(a).sum()) <= 1e-12);
            }
    CHECK(std::abs(face_tensor(*d, a, 0)(0) - d->unit().cwiseProduct(a).sum()) <= 1e-12);
}

TEST_CASE("tensor trace equals the exhaustive Sweedler sum") {
    std::mt19937_64 rng(101);
    for (const std::string alg : {"z2-group", "z3-group", "z2-fun"}) {
        const AlgebraHandle d = dual(builtin_algebra(alg)).algebra;
        for (const GraphHandle& g : small_fixtures()) {
            CAPTURE(alg);
            CAPTURE(g->name());
            for (int k = 0; k < 3; ++k) {
                const TensorNetworkSpec spec = random_spec(g, d->dim(), rng);
                const Complex expected = brute_force(*d, spec);
                const Complex got = tensor_trace_boundary(*d, spec);
                CHECK(std::abs(got - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
                if (g->has_boundary())
                    require_error(ErrorKind::BoundaryPresent, [&] { tensor_trace(*d, spec); });
                else
                    CHECK(std::abs(tensor_trace(*d, spec) - got) == 0.0);
            }
        }
    }
}

TEST_CASE("tensor trace of a nonabelian algebra against the Sweedler sum") {
    std::mt19937_64 rng(103);
    for (const std::string alg : {"s3-group", "s3-fun"}) {
        CAPTURE(alg);
        const AlgebraHandle d = dual(builtin_algebra(alg)).algebra;
        for (const std::string gname : {"two_loop", "triangle", "torus-1x1"}) {
            CAPTURE(gname);
            const TensorNetworkSpec spec = random_spec(builtin_graph(gname), 6, rng);
            const Complex expected = brute_force(*d, spec);
            CHECK(std::abs(tensor_trace(*d, spec) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("tensor trace is covariant under edge reversal") {
    std::mt19937_64 rng(107);
    for (const std::string alg : {"z3-group", "s3-group", "s3-fun"}) {
        CAPTURE(alg);
        const AlgebraHandle d = dual(builtin_algebra(alg)).algebra;
        const GraphHandle graph = builtin_graph("triangle");
        const TensorNetworkSpec spec = random_spec(graph, d->dim(), rng);
        for (int e = 0; e < graph->num_edges(); ++e) {
            const LatticeState dummy{graph, d, Vec::Zero(ipow(d->dim(), 3))};
            TensorNetworkSpec flipped = spec;
            flipped.graph = reverse_edge(*graph, e, dummy).first;
            flipped.edge_labels[e] = d->antipode(spec.edge_labels[e]);
            for (int f = 0; f < graph->num_faces(); ++f) {
                const int start = flipped.graph->find_half_edge(graph->half_edge_name(spec.face_starts[f]));
                const int moved = flipped.graph->face_of(start);
                flipped.face_starts[moved] = start;
                flipped.face_labels[moved] = spec.face_labels[f];
            }
            CHECK(std::abs(tensor_trace(*d, flipped) - tensor_trace(*d, spec)) <= 1e-10);
        }
    }
}

TEST_CASE("label validation") {
    const AlgebraHandle d = dual(builtin_algebra("z2-group")).algebra;
    const GraphHandle graph = builtin_graph("triangle");
    TensorNetworkSpec spec = uniform_spec(graph, d->haar(), d->haar());
    spec.edge_labels.pop_back();
    require_error(ErrorKind::DimensionMismatch, [&] { tensor_trace(*d, spec); });
    spec = uniform_spec(graph, d->haar(), d->haar());
    spec.face_labels[0] = Vec::Zero(3);
    require_error(ErrorKind::DimensionMismatch, [&] { tensor_trace(*d, spec); });
    spec = uniform_spec(graph, d->haar(), d->haar());
    spec.face_starts[0] = graph->faces()[1].front();
    require_error(ErrorKind::SiteInvalid, [&] { tensor_trace(*d, spec); });
    TensorNetworkSpec strip = uniform_spec(boundary_strip(), d->haar(), d->haar());
    strip.boundary_labels.clear();
    require_error(ErrorKind::MissingBoundaryLabels, [&] { tensor_trace_boundary(*d, strip); });
}

TEST_CASE("tensor network state with unit edge labels") {
    std::mt19937_64 rng(109);
    for (const auto& name : builtin_algebra_names()) {
        CAPTURE(name);
        const AlgebraHandle h = builtin_algebra(name);
        const LatticeAlgebraHandle la = LatticeAlgebra::create(h);
        const GraphHandle graph = builtin_graph("two_loop");
        const Vec a = oracle::random_vec(h->dim(), rng);
        const Vec b = oracle::random_vec(h->dim(), rng);
        TensorNetworkSpec spec = uniform_spec(graph, dual_unit(*la), a);
        spec.face_labels[1] = b;
        const Vec u = dual_unit(*la);
        const Vec expected = h->counit(a) * h->counit(b) * oracle::kron(u, u);
        CHECK(oracle::max_abs(tn_state(la->dual(), spec).coeffs - expected) <= 1e-12);
    }
}

TEST_CASE("tensor network state is linear in its labels") {
    std::mt19937_64 rng(113);
    const AlgebraHandle h = builtin_algebra("s3-fun");
    const LatticeAlgebraHandle la = LatticeAlgebra::create(h);
    const GraphHandle graph = builtin_graph("triangle");
    const TensorNetworkSpec base = random_spec(graph, 6, rng);
    const Vec extra = oracle::random_vec(6, rng);
    const Complex w(0.5, -1.5);
    const Vec s0 = tn_state(la->dual(), base).coeffs;

    TensorNetworkSpec face_extra = base;
    face_extra.face_labels[0] = extra;
    TensorNetworkSpec face_sum = base;
    face_sum.face_labels[0] = base.face_labels[0] + w * extra;
    CHECK(oracle::max_abs(tn_state(la->dual(), face_sum).coeffs -
                          (s0 + w * tn_state(la->dual(), face_extra).coeffs)) <= 1e-10);

    TensorNetworkSpec edge_extra = base;
    edge_extra.edge_labels[1] = extra;
    TensorNetworkSpec edge_sum = base;
    edge_sum.edge_labels[1] = base.edge_labels[1] + w * extra;
    CHECK(oracle::max_abs(tn_state(la->dual(), edge_sum).coeffs -
                          (s0 + w * tn_state(la->dual(), edge_extra).coeffs)) <= 1e-10);
}

TEST_CASE("state amplitudes are traces with the counit on the physical leg") {
    std::mt19937_64 rng(127);
    const AlgebraHandle h = builtin_algebra("z3-group");
    const LatticeAlgebraHandle la = LatticeAlgebra::create(h);
    const TensorNetworkSpec spec = random_spec(builtin_graph("triangle"), 3, rng);
    const Vec state = tn_state(la->dual(), spec).coeffs;
    // Contracting every physical leg with the counit of H* recovers the trace.
    const Vec eps = la->dual()->data().counit;
    const Complex collapsed = (oracle::kron(eps, oracle::kron(eps, eps)).transpose() * state)(0);
    CHECK(std::abs(collapsed - tensor_trace(*la->dual(), spec)) <= 1e-10);
}

TEST_CASE("boundary fixtures need the boundary-aware state") {
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra("z2-group"));
    const GraphHandle minimal = builtin_graph("minimal");
    const TensorNetworkSpec spec = uniform_spec(minimal, la->dual()->haar(), la->base()->haar());
    require_error(ErrorKind::BoundaryPresent, [&] { tn_state(la->dual(), spec); });
    const LatticeState state = tn_state_boundary(la->dual(), spec);
    CHECK(state.coeffs.size() == 2);
    CHECK(state.coeffs.norm() > 1e-10);
}

TEST_CASE("ground state is invariant and has zero energy") {
    for (const std::string alg : {"z2-group", "z3-group", "z2-fun", "s3-fun", "s3-group"}) {
        for (const std::string gname : {"loop", "two_loop", "path3", "triangle", "torus-1x1", "torus-2x1"}) {
            CAPTURE(alg);
            CAPTURE(gname);
            const ModelSpec model = make_model(LatticeAlgebra::create(builtin_algebra(alg)), builtin_graph(gname));
            const GroundState g = ground_state(model);
            CHECK(g.norm > 1e-10);
            const Mat psi = g.state.coeffs;
            const Projectors p = projectors(model);
            double worst = 0.0;
            for (const auto& a : p.vertex) worst = std::max(worst, oracle::max_abs(a.apply(psi) - psi));
            for (const auto& b : p.face) worst = std::max(worst, oracle::max_abs(b.apply(psi) - psi));
            CHECK(worst <= 1e-10);
            const Hamiltonian h(model);
            const int ne = model.graph->num_edges();
            const Complex energy = (apply_metric(*model.algebra, ne, psi).adjoint() * h.apply(psi))(0, 0);
            CHECK(std::abs(energy) <= 1e-9);
            CHECK(std::abs(metric_norm_squared(*model.algebra, ne, g.state.coeffs) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("Haar labels make the state independent of the face starts") {
    std::mt19937_64 rng(131);
    for (const std::string alg : {"z3-group", "s3-fun", "s3-group"}) {
        CAPTURE(alg);
        const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra(alg));
        const GraphHandle graph = builtin_graph("triangle");
        TensorNetworkSpec spec = uniform_spec(graph, la->dual()->haar(), la->base()->haar());
        const Vec reference = tn_state(la->dual(), spec).coeffs;
        for (int f = 0; f < graph->num_faces(); ++f)
            for (int he : graph->faces()[f]) {
                TensorNetworkSpec moved = spec;
                moved.face_starts[f] = he;
                CHECK(oracle::max_abs(tn_state(la->dual(), moved).coeffs - reference) <= 1e-12);
            }
    }
}

TEST_CASE("generic face labels depend on the face start") {
    std::mt19937_64 rng(137);
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra("s3-fun"));
    const GraphHandle graph = builtin_graph("triangle");
    TensorNetworkSpec spec = uniform_spec(graph, la->dual()->haar(), oracle::random_vec(6, rng));
    const Vec reference = tn_state(la->dual(), spec).coeffs;
    double spread = 0.0;
    for (int he : graph->faces()[0]) {
        TensorNetworkSpec moved = spec;
        moved.face_starts[0] = he;
        spread = std::max(spread, oracle::max_abs(tn_state(la->dual(), moved).coeffs - reference));
    }
    CHECK(spread > 1e-6);
}

TEST_CASE("contract and permute") {
    std::mt19937_64 rng(139);
    LabeledTensor a{{1, 2}, {2, 3}, oracle::random_vec(6, rng)};
    LabeledTensor b{{2, 4}, {3, 4}, oracle::random_vec(12, rng)};
    const LabeledTensor c = contract(a, b);
    CHECK(c.labels == std::vector<int>{1, 4});
    Mat am(2, 3), bm(3, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) am(i, j) = a.data(i * 3 + j);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 4; ++k) bm(j, k) = b.data(j * 4 + k);
    const Mat cm = am * bm;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) CHECK(std::abs(c.data(i * 4 + k) - cm(i, k)) <= 1e-12);
    const LabeledTensor t = permute(c, {4, 1});
    CHECK(t.dims == std::vector<int>{4, 2});
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) CHECK(t.data(k * 2 + i) == c.data(i * 4 + k));
    require_error(ErrorKind::DimensionMismatch, [&] { permute(c, {4, 9}); });
    const LabeledTensor whole = contract_network({a, b, LabeledTensor{{1, 4}, {2, 4}, Vec::Ones(8)}}, {});
    CHECK(std::abs(whole.data(0) - cm.sum()) <= 1e-12);
}

}  // TEST_SUITE
