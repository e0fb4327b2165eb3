#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hopflat/duality.hpp"
#include "hopflat/groups.hpp"
#include "hopflat/tensor_net.hpp"
#include "oracles.hpp"
#include "pipelines.hpp"

using namespace hopflat;

namespace {

/// Pass flag plus the first few failure messages.
struct Outcome {
    bool passed = true;
    int failures = 0;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        passed = false;
        if (++failures <= 6) {
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    std::string summary() const {
        if (failures <= 6) return detail;
        return detail + "; and " + std::to_string(failures - 6) + " more";
    }
};

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

double max_residual_of(const cli::RunResult& r) { return r.report.value("max_residual", 0.0); }

cli::RunResult run_cli(const std::string& command, const std::string& algebra, const std::string& graph,
                       int samples = 20) {
    cli::RunConfig c;
    c.command = command;
    c.algebra = algebra;
    c.graph = graph;
    c.samples = samples;
    return cli::run(c);
}

/// Runs a pipeline across cases and records the worst residual against `tol`.
void check_cases(Outcome& out, const std::string& command, const std::vector<std::string>& algebras,
                 const std::vector<std::string>& graphs, double tol,
                 const std::function<bool(const std::string&, const std::string&)>& skip = {}) {
    for (const auto& alg : algebras)
        for (const auto& graph : graphs) {
            if (skip && skip(alg, graph)) continue;
            try {
                const auto r = run_cli(command, alg, graph);
                const double worst = max_residual_of(r);
                out.require(worst <= tol, alg + "/" + graph + " residual " + fmt(worst));
            } catch (const std::exception& e) {
                out.require(false, alg + "/" + graph + " threw: " + e.what());
            }
        }
}

Outcome criterion_axioms() {
    Outcome out;
    check_cases(out, "axioms", builtin_algebra_names(), {"minimal"}, 1e-12);
    return out;
}

Outcome criterion_bicross() {
    Outcome out;
    check_cases(out, "bicross", builtin_algebra_names(), {"minimal"}, 1e-12);
    return out;
}

Outcome criterion_triangles() {
    Outcome out;
    for (const auto& alg : builtin_algebra_names()) {
        const AxiomReport report = triangle_relations(*LatticeAlgebra::create(builtin_algebra(alg)), 50, 2024);
        for (const auto& r : report) out.require(r.residual <= 1e-12, alg + " " + r.name + " " + fmt(r.residual));
    }
    return out;
}

Outcome criterion_exchange() {
    Outcome out;
    check_cases(out, "theorem32", {"z2-group", "z3-group", "s3-group"},
                {"minimal", "two_loop", "torus-1x1", "seven_edge"}, 1e-10);
    return out;
}

Outcome criterion_disjoint() {
    Outcome out;
    check_cases(out, "lemma33", builtin_algebra_names(), {"two_loop", "path3", "triangle"}, 1e-10);
    return out;
}

Outcome criterion_projectors() {
    Outcome out;
    check_cases(out, "projectors", builtin_algebra_names(), builtin_graph_names(), 1e-10,
                [](const std::string& alg, const std::string& graph) {
                    return ipow(builtin_algebra(alg)->dim(), builtin_graph(graph)->num_edges()) > kDenseCap;
                });
    return out;
}

Outcome criterion_spectrum() {
    Outcome out;
    check_cases(out, "spectrum", {"z2-group", "s3-group", "s3-fun"}, {"torus-1x1", "minimal", "two_loop"}, 1e-9);
    return out;
}

Outcome criterion_cellulation() {
    Outcome out;
    for (const std::string alg : {"z2-group", "z3-group", "s3-group"}) {
        const auto coarse = run_cli("groundspace", alg, "torus-1x1");
        const auto fine = run_cli("groundspace", alg, "torus-2x1");
        const int a = coarse.report.at("ground_dim").get<int>();
        const int b = fine.report.at("ground_dim").get<int>();
        out.require(a == b, alg + " torus(1,1) " + std::to_string(a) + " vs torus(2,1) " + std::to_string(b));
    }
    return out;
}

/// Triangle with its outer face declared as a boundary.
GraphHandle boundary_strip() {
    const GraphHandle closed = builtin_graph("triangle");
    GraphSpec spec = closed->spec();
    spec.name = "strip";
    spec.genus.reset();
    std::vector<std::string> component;
    for (int he : closed->faces()[closed->face_of(closed->find_half_edge("e0.t"))])
        component.push_back(closed->half_edge_name(he));
    spec.boundary = {component};
    return make_graph(std::move(spec));
}

Outcome criterion_trace() {
    Outcome out;
    std::mt19937_64 rng(4242);
    std::vector<GraphHandle> graphs;
    for (const auto& name : builtin_graph_names())
        if (builtin_graph(name)->num_edges() <= 4) graphs.push_back(builtin_graph(name));
    graphs.push_back(boundary_strip());
    for (const auto& alg : builtin_algebra_names()) {
        const AlgebraHandle d = dual(builtin_algebra(alg)).algebra;
        if (d->dim() > 3) continue;
        const int n = d->dim();
        for (const auto& g : graphs) {
            for (int k = 0; k < 3; ++k) {
                TensorNetworkSpec spec;
                spec.graph = g;
                for (int e = 0; e < g->num_edges(); ++e) spec.edge_labels.push_back(oracle::random_vec(n, rng));
                for (int f = 0; f < g->num_faces(); ++f) {
                    spec.face_labels.push_back(oracle::random_vec(n, rng));
                    const auto& walk = g->faces()[f];
                    spec.face_starts.push_back(walk[rng() % walk.size()]);
                }
                for (std::size_t b = 0; b < g->boundary_components().size(); ++b)
                    spec.boundary_labels.push_back(oracle::random_vec(n, rng));
                const Complex expected = oracle::brute_force_trace(
                    d->data(), {g.get(), spec.edge_labels, spec.face_labels, spec.face_starts, spec.boundary_labels});
                const double gap = std::abs(tensor_trace_boundary(*d, spec) - expected) / std::max(1.0, std::abs(expected));
                out.require(gap <= 1e-12, alg + "/" + g->name() + " gap " + fmt(gap));
            }
        }
    }
    return out;
}

Outcome criterion_ground_state() {
    Outcome out;
    for (const std::string alg : {"z2-group", "z3-group", "s3-group"})
        for (const auto& graph : builtin_graph_names()) {
            if (builtin_graph(graph)->has_boundary() || builtin_graph(graph)->has_dangling()) continue;
            try {
                const auto r = run_cli("tnstate", alg, graph);
                const auto& res = r.report.at("residuals");
                const double invariance = std::max(res.at("vertex-invariance").get<double>(),
                                                   res.at("face-invariance").get<double>());
                const double energy = res.at("energy").get<double>();
                const double norm = r.report.at("norm_before_normalisation").get<double>();
                out.require(invariance <= 1e-10, alg + "/" + graph + " invariance " + fmt(invariance));
                out.require(energy <= 1e-9, alg + "/" + graph + " energy " + fmt(energy));
                out.require(norm > 1e-10, alg + "/" + graph + " norm " + fmt(norm));
            } catch (const std::exception& e) {
                out.require(false, alg + "/" + graph + " threw: " + e.what());
            }
        }
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Outcome criterion_determinism() {
    Outcome out;
    const auto dir = std::filesystem::temp_directory_path() / "hopflat_determinism";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> runs{"theorem32 --algebra s3-fun --graph two_loop --samples 5 --seed 99",
                                        "lemma33 --algebra z3-group --graph triangle --samples 5 --seed 3",
                                        "tnstate --algebra s3-group --graph triangle"};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string reports[2];
        for (int k = 0; k < 2; ++k) {
            const auto path = dir / ("run" + std::to_string(i) + "_" + std::to_string(k) + ".json");
            const std::string cmd = std::string("\"") + HOPFLAT_CLI_PATH + "\" " + runs[i] + " --out \"" +
                                    path.string() + "\" > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            out.require(status != -1 && std::filesystem::exists(path), "no report from: " + runs[i]);
            reports[k] = slurp(path);
        }
        out.require(!reports[0].empty() && reports[0] == reports[1], "reports differ for: " + runs[i]);
    }
    std::filesystem::remove_all(dir);
    return out;
}

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Hopf axiom suite on all builtin algebras", 5.0, criterion_axioms},
        {2, "mirror bicrossproduct axioms and cross relation", 30.0, criterion_bicross},
        {3, "triangle operator algebra on one edge", 10.0, criterion_triangles},
        {4, "vertex/face exchange relation", 300.0, criterion_exchange},
        {5, "commutation at disjoint sites", 0.0, criterion_disjoint},
        {6, "projector properties within the dense cap", 0.0, criterion_projectors},
        {7, "integral spectrum and ground-space multiplicity", 0.0, criterion_spectrum},
        {8, "ground-space dimension across torus cellulations", 0.0, criterion_cellulation},
        {9, "tensor trace against the exhaustive Sweedler sum", 0.0, criterion_trace},
        {10, "tensor-network ground state", 600.0, criterion_ground_state},
        {11, "byte-identical CLI reports for a fixed seed", 0.0, criterion_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("threw: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0.0)
            outcome.require(seconds < c.limit_seconds, "took longer than " + fmt(c.limit_seconds) + " s");
        if (!outcome.passed) ++failures;
        std::cout << "criterion " << c.id << ": " << (outcome.passed ? "PASS" : "FAIL") << "  " << c.title << "  ("
                  << fmt(seconds) << " s)";
        if (!outcome.detail.empty()) std::cout << "  " << outcome.summary();
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
