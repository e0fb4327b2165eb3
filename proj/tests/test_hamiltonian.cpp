#include <doctest.h>

#include <cmath>
#include <random>

#include "checks.hpp"
#include "hopflat/groups.hpp"
#include "hopflat/hamiltonian.hpp"
#include "oracles.hpp"

using namespace hopflat;

namespace {

ModelSpec model_of(const std::string& algebra, const std::string& graph) {
    return make_model(LatticeAlgebra::create(builtin_algebra(algebra)), builtin_graph(graph));
}

Mat hand_assembled(const ModelSpec& model) {
    const Projectors p = projectors(model);
    const std::int64_t dim = ipow(model.algebra->edge_dim(), model.graph->num_edges());
    const Mat id = Mat::Identity(dim, dim);
    Mat h = Mat::Zero(dim, dim);
    for (const auto& a : p.vertex) h += id - a.dense();
    for (const auto& b : p.face) h += id - b.dense();
    return h;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("projectors on the minimal Z2 fixture") {
    const ModelSpec model = model_of("z2-group", "minimal");
    CHECK(model.vertex_sites.size() == 1);
    CHECK(model.face_sites.size() == 1);
    const Vec half = Vec::Constant(2, 0.5);
    CHECK(oracle::max_abs(model.haar_h - half) <= 1e-14);
    CHECK(oracle::max_abs(model.haar_cop - half) <= 1e-14);
    const Projectors p = projectors(model);
    CHECK(oracle::max_abs(p.vertex[0].dense() - model.algebra->triangle(TriangleKind::LPlus, half)) <= 1e-14);
    CHECK(oracle::max_abs(p.face[0].dense() - model.algebra->triangle(TriangleKind::TMinus, half)) <= 1e-14);
    Mat swap_average(2, 2);
    swap_average << 0.5, 0.5, 0.5, 0.5;
    CHECK(oracle::max_abs(p.face[0].dense() - swap_average) <= 1e-14);
    CHECK(oracle::max_abs(p.vertex[0].dense() - Mat::Identity(2, 2)) <= 1e-14);
}

TEST_CASE("projector properties on the fixtures") {
    for (const auto& alg : builtin_algebra_names()) {
        for (const auto& gname : builtin_graph_names()) {
            if (gname == "seven_edge" && builtin_algebra(alg)->dim() > 3) continue;
            CAPTURE(alg);
            CAPTURE(gname);
            const ProjectorReport report = check_projectors(model_of(alg, gname), 1024);
            for (const auto& r : report.residuals) {
                CAPTURE(r.name);
                CHECK(r.residual <= 1e-10);
            }
        }
    }
}

TEST_CASE("projector report flags faces that repeat an edge") {
    CHECK(check_projectors(model_of("z2-group", "torus-1x1")).repeated_edges);
    CHECK_FALSE(check_projectors(model_of("z2-group", "triangle")).repeated_edges);
}

TEST_CASE("require_projectors names the failing property") {
    ProjectorReport report;
    report.residuals = {{"vertex-idempotent", 0.0}, {"face-hermitian", 0.25}};
    try {
        require_projectors(report);
        FAIL("expected ProjectorCheckFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ProjectorCheckFailed);
        CHECK(e.check() == "face-hermitian");
        CHECK(e.residual().value_or(0.0) == doctest::Approx(0.25));
    }
    report.residuals[1].residual = 1e-13;
    CHECK_NOTHROW(require_projectors(report));
}

TEST_CASE("Hamiltonian is the sum of its defects") {
    for (const auto& [alg, gname] : std::vector<std::pair<std::string, std::string>>{
             {"z2-group", "triangle"}, {"z4-group", "two_loop"}, {"s3-fun", "triangle"}, {"z2-fun", "torus-2x1"}}) {
        CAPTURE(alg);
        CAPTURE(gname);
        const ModelSpec model = model_of(alg, gname);
        const Hamiltonian h(model);
        const Mat dense = h.dense();
        CHECK(oracle::max_abs(dense - hand_assembled(model)) <= 1e-12);
        const Mat states = probe_states(h.space_dim(), 3, 11, 0);
        CHECK(oracle::max_abs(h.apply(states) - dense * states) <= 1e-12);
        for (const auto& a : h.terms().vertex) CHECK(oracle::max_abs(dense * a.dense() - a.dense() * dense) <= 1e-10);
        for (const auto& b : h.terms().face) CHECK(oracle::max_abs(dense * b.dense() - b.dense() * dense) <= 1e-10);
    }
    require_error(ErrorKind::DimensionCap, [] { Hamiltonian(model_of("s3-fun", "path3")).dense(100); });
}

TEST_CASE("Hamiltonian is positive under the Haar inner product") {
    for (const std::string alg : {"z3-group", "s3-fun", "s3-group"}) {
        CAPTURE(alg);
        const ModelSpec model = model_of(alg, "triangle");
        const Hamiltonian h(model);
        double lowest = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Mat psi = probe_states(h.space_dim(), 1, 1000 + k, 0);
            const Complex value = (apply_metric(*model.algebra, 3, psi).adjoint() * h.apply(psi))(0, 0);
            lowest = std::min(lowest, value.real());
        }
        CHECK(lowest >= -1e-10);
    }
}

TEST_CASE("spectrum is integral and its kernel is the ground space") {
    for (const std::string alg : {"z2-group", "z3-group", "z2-fun", "s3-fun", "s3-group"}) {
        for (const std::string gname : {"minimal", "two_loop", "torus-1x1", "triangle"}) {
            CAPTURE(alg);
            CAPTURE(gname);
            const ModelSpec model = model_of(alg, gname);
            const Spectrum s = spectrum(model);
            const GroundSpace g = ground_space(model);
            CHECK(s.integrality_residual <= 1e-9);
            CHECK(s.hermitian_residual <= 1e-9);
            CHECK(s.eigenvalues.front() >= -1e-9);
            CHECK(s.eigenvalues.back() <=
                  static_cast<double>(model.vertex_sites.size() + model.face_sites.size()) + 1e-9);
            CHECK(s.zero_multiplicity == g.dim);
        }
    }
}

TEST_CASE("ground space matches the range of the projector product") {
    for (const std::string alg : {"z2-group", "z4-group", "s3-fun"}) {
        for (const std::string gname : {"loop", "two_loop", "path3"}) {
            CAPTURE(alg);
            CAPTURE(gname);
            const ModelSpec model = model_of(alg, gname);
            const GroundSpace g = ground_space(model);
            const std::int64_t dim = ipow(model.algebra->edge_dim(), model.graph->num_edges());
            const Mat product = apply_ground_projector(projectors(model), Mat::Identity(dim, dim));
            CHECK(g.dim == numerical_rank(product));
            CHECK_FALSE(g.probed);
            CHECK(g.basis.cols() == g.dim);
            CHECK(g.fixed_residual <= 1e-10);
            CHECK(g.order_residual <= 1e-10);
            const Mat gram = g.basis.adjoint() * apply_metric(*model.algebra, model.graph->num_edges(), g.basis);
            CHECK(oracle::max_abs(gram - Mat::Identity(g.dim, g.dim)) <= 1e-9);
        }
    }
}

TEST_CASE("ground space of the single loop") {
    CHECK(ground_space(model_of("z2-group", "loop")).dim == 1);
    CHECK(ground_space(model_of("z3-group", "loop")).dim == 1);
    CHECK(ground_space(model_of("z2-fun", "loop")).dim == 1);
}

TEST_CASE("probed ground space agrees with the dense one") {
    const ModelSpec model = model_of("z3-group", "torus-2x1");
    const GroundSpace dense = ground_space(model);
    const GroundSpace probed = ground_space(model, 10);
    CHECK(probed.probed);
    CHECK(probed.dim == dense.dim);
}

TEST_CASE("ground-space dimension does not depend on the cellulation") {
    for (const std::string alg : {"z2-group", "z3-group"}) {
        CAPTURE(alg);
        CHECK(ground_space(model_of(alg, "torus-1x1")).dim == ground_space(model_of(alg, "torus-2x1")).dim);
    }
}

TEST_CASE("metric square root squares to the metric") {
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra("s3-group"));
    const Mat block = probe_states(36, 4, 3, 0);
    const Mat twice = apply_metric_sqrt(*la, 2, apply_metric_sqrt(*la, 2, block));
    CHECK(oracle::max_abs(twice - apply_metric(*la, 2, block)) <= 1e-12);
    const Mat back = apply_metric_sqrt(*la, 2, apply_metric_sqrt(*la, 2, block), true);
    CHECK(oracle::max_abs(back - block) <= 1e-12);
}

}  // TEST_SUITE
