#include "pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "hopflat/bicross.hpp"
#include "hopflat/duality.hpp"
#include "hopflat/graph.hpp"
#include "hopflat/groups.hpp"
#include "hopflat/haar.hpp"
#include "hopflat/hamiltonian.hpp"
#include "hopflat/json_io.hpp"
#include "hopflat/site_ops.hpp"
#include "hopflat/tensor_net.hpp"

namespace hopflat::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    explicit Stopwatch(json& sink) : sink_(sink) {}

    template <class F>
    auto time(const std::string& stage, F&& f) {
        const auto start = Clock::now();
        if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
            f();
            record(stage, start);
        } else {
            auto result = f();
            record(stage, start);
            return result;
        }
    }

private:
    void record(const std::string& stage, Clock::time_point start) {
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        sink_[stage] = sink_.value(stage, 0.0) + seconds;
    }
    json& sink_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GraphHandle load_graph(const std::string& source) {
    if (std::filesystem::is_regular_file(source)) return parse_graph(read_file(source));
    return builtin_graph(source);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json residuals_json(const AxiomReport& report, const std::string& prefix = {}) {
    json out = json::object();
    for (const auto& r : report) {
        const std::string key = prefix + r.name;
        out[key] = std::max(out.value(key, 0.0), r.residual);
    }
    return out;
}

void merge_max(json& into, const json& from) {
    for (const auto& [key, value] : from.items()) into[key] = std::max(into.value(key, 0.0), value.get<double>());
}

double max_of(const json& residuals) {
    double worst = 0.0;
    for (const auto& [key, value] : residuals.items()) {
        const double r = value.get<double>();
        worst = std::isnan(r) ? r : std::max(worst, r);
        if (std::isnan(worst)) break;
    }
    return worst;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return seed * 0x100000001b3ULL + stream * 0x9e3779b97f4a7c15ULL + index;
}

/// Sites exercised by the site-level checks: the graph's own sites, or else one per vertex.
std::vector<Site> check_sites(const RibbonGraph& graph) {
    if (!graph.sites().empty()) return graph.sites();
    std::vector<Site> sites;
    for (int v = 0; v < graph.num_vertices(); ++v) sites.push_back(graph.default_vertex_site(v));
    return sites;
}

json site_json(const RibbonGraph& graph, const Site& site) {
    return json{{"vertex", graph.vertex_name(site.vertex)},
                {"face_half", graph.half_edge_name(site.face_half)},
                {"start_half", graph.half_edge_name(site.start_half)}};
}

struct Context {
    const RunConfig& config;
    double tolerance;
    json report = json::object();
    json timings = json::object();
    Stopwatch watch{timings};
    AlgebraHandle algebra;

    Context(const RunConfig& cfg, double tol) : config(cfg), tolerance(tol) {}

    void load_algebra_input() {
        algebra = watch.time("load_algebra", [&] { return load_algebra(config.algebra); });
        report["algebra"] = algebra->label();
        report["algebra_hash"] = algebra->structure_hash();
        report["algebra_dim"] = algebra->dim();
    }

    GraphHandle load_graph_input() {
        GraphHandle graph = watch.time("load_graph", [&] { return load_graph(config.graph); });
        report["graph"] = graph->name();
        report["graph_counts"] = json{{"vertices", graph->num_vertices()},
                                      {"edges", graph->num_edges()},
                                      {"faces", graph->num_faces()}};
        return graph;
    }
};

AxiomReport iterated_coproduct_report(const Algebra& algebra, int samples, std::uint64_t seed) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Vec x = random_unit(algebra.dim(), derive_seed(seed, 1, k));
        for (int n = 1; n <= 3; ++n) {
            const Vec last = iterated_coproduct(algebra, x, n);
            const Vec first = iterated_coproduct_first_leg(algebra, x, n);
            worst = std::max(worst, (last - first).cwiseAbs().maxCoeff());
        }
    }
    return {{"iterated-coproduct-association", worst}};
}

double tensor_distance(const Tensor3& a, const Tensor3& b) {
    double worst = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
    return worst;
}

bool run_axioms(Context& ctx) {
    ctx.load_algebra_input();
    const auto& cfg = ctx.config;
    json residuals = json::object();
    json algebras = json::object();

    auto record = [&](const std::string& name, const AxiomReport& report) {
        algebras[name] = residuals_json(report);
        merge_max(residuals, residuals_json(report, name + ":"));
    };

    const DualResult d = ctx.watch.time("dual", [&] { return dual(ctx.algebra); });
    ctx.watch.time("hopf", [&] {
        record("H", verify_hopf(*ctx.algebra));
        record("H*", verify_hopf(*d.algebra));
        record("H^cop", verify_hopf(*op_cop(ctx.algebra, Opposite::Cop)));
        record("H^op", verify_hopf(*op_cop(ctx.algebra, Opposite::Op)));
    });
    ctx.watch.time("pairing", [&] { record("pairing", verify_pairing(d.pairing)); });
    ctx.watch.time("haar", [&] {
        record("haar-H", verify_haar(*ctx.algebra, *d.algebra));
        const DualResult dd = dual(d.algebra);
        record("haar-H*", verify_haar(*d.algebra, *dd.algebra));
    });
    ctx.watch.time("coproduct", [&] {
        record("coproduct", iterated_coproduct_report(*ctx.algebra, cfg.samples, cfg.seed));
    });
    ctx.watch.time("involution", [&] {
        const HopfData back = dual_data(*dual(ctx.algebra).algebra);
        const HopfData& orig = ctx.algebra->data();
        const double r = std::max({tensor_distance(back.mult, orig.mult), tensor_distance(back.comult, orig.comult),
                                   (back.antipode - orig.antipode).cwiseAbs().maxCoeff(),
                                   (back.unit - orig.unit).cwiseAbs().maxCoeff(),
                                   (back.counit - orig.counit).cwiseAbs().maxCoeff()});
        record("dual", {{"double-dual", r}});
    });

    ctx.report["haar"] = vector_json(ctx.algebra->haar());
    ctx.report["haar_dual"] = vector_json(d.algebra->haar());
    bool positive = true;
    if (d.algebra->has_star()) {
        const Mat g = gram_matrix(*ctx.algebra, *d.algebra);
        const double min_eig = Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues().minCoeff();
        ctx.report["gram_min_eigenvalue"] = min_eig;
        positive = min_eig > 1e-10;
    }
    ctx.report["by_algebra"] = algebras;
    ctx.report["residuals"] = residuals;
    return positive && max_of(residuals) <= ctx.tolerance;
}

bool run_bicross(Context& ctx) {
    ctx.load_algebra_input();
    const auto& cfg = ctx.config;
    json residuals = json::object();
    Bicrossproduct bc;
    try {
        bc = ctx.watch.time("construct", [&] { return mirror_bicrossproduct(ctx.algebra); });
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::AxiomViolation) throw;
        residuals["construction:" + e.check()] = e.residual().value_or(std::nan(""));
        ctx.report["residuals"] = residuals;
        return false;
    }
    ctx.report["mh_dim"] = bc.mh->dim();
    ctx.report["mh_hash"] = bc.mh->structure_hash();
    ctx.watch.time("hopf", [&] { merge_max(residuals, residuals_json(verify_hopf(*bc.mh), "M(H):")); });
    ctx.watch.time("cross", [&] { merge_max(residuals, residuals_json(verify_bicross(bc), "cross:")); });

    ctx.watch.time("actions", [&] {
        const DualResult d = dual(ctx.algebra);
        const Algebra& mh = *bc.mh;
        const int n2 = mh.dim();
        const int n = ctx.algebra->dim();
        auto scale = [](const Mat& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); };
        double left_law = 0.0, right_law = 0.0, consistency = 0.0;
        const Mat identity = Mat::Identity(n, n);
        const double left_unit =
            (dual_left_action(*ctx.algebra, *d.algebra, mh.unit()) - identity).cwiseAbs().maxCoeff();
        const double right_unit =
            (dual_right_action(*ctx.algebra, *d.algebra, mh.unit()) - identity).cwiseAbs().maxCoeff();
        for (int k = 0; k < cfg.samples; ++k) {
            const Vec x = random_unit(n2, derive_seed(cfg.seed, 2, k));
            const Vec y = random_unit(n2, derive_seed(cfg.seed, 3, k));
            const Vec xy = mh.multiply(x, y);
            const Mat lx = dual_left_action(*ctx.algebra, *d.algebra, x);
            const Mat ly = dual_left_action(*ctx.algebra, *d.algebra, y);
            const Mat lxy = dual_left_action(*ctx.algebra, *d.algebra, xy);
            left_law = std::max(left_law, (lxy - lx * ly).cwiseAbs().maxCoeff() / scale(lxy));
            const Mat rx = dual_right_action(*ctx.algebra, *d.algebra, x);
            const Mat ry = dual_right_action(*ctx.algebra, *d.algebra, y);
            const Mat rxy = dual_right_action(*ctx.algebra, *d.algebra, xy);
            right_law = std::max(right_law, (rxy - ry * rx).cwiseAbs().maxCoeff() / scale(rxy));
            const Mat via_right = dual_right_action(*ctx.algebra, *d.algebra, mh.antipode_inverse() * x);
            consistency = std::max(consistency, (lx - via_right).cwiseAbs().maxCoeff() / scale(lx));
        }
        residuals["action:left-law"] = left_law;
        residuals["action:left-unit"] = left_unit;
        residuals["action:right-law"] = right_law;
        residuals["action:right-unit"] = right_unit;
        residuals["action:left-right-consistency"] = consistency;
    });
    ctx.report["residuals"] = residuals;
    return max_of(residuals) <= ctx.tolerance;
}

bool run_exchange(Context& ctx) {
    ctx.load_algebra_input();
    GraphHandle graph = ctx.load_graph_input();
    const auto& cfg = ctx.config;
    const auto lattice = ctx.watch.time("lattice_algebra", [&] { return LatticeAlgebra::create(ctx.algebra); });
    const std::int64_t dim = ipow(lattice->edge_dim(), graph->num_edges());
    const bool dense = dim <= cfg.dense_cap;
    const int n = ctx.algebra->dim();

    json sites = json::array();
    double worst = 0.0;
    ctx.watch.time("residuals", [&] {
        for (const Site& site : check_sites(*graph)) {
            double site_worst = 0.0;
            for (int k = 0; k < cfg.samples; ++k) {
                const Vec h = random_unit(n, derive_seed(cfg.seed, 4, k));
                const Vec a = random_unit(n, derive_seed(cfg.seed, 5, k));
                const Mat states =
                    dense ? Mat(Mat::Identity(dim, dim)) : Mat(random_unit(static_cast<int>(dim), derive_seed(cfg.seed, 6, k)));
                site_worst = std::max(site_worst, exchange_residual(lattice, graph, site, h, a, states));
            }
            json entry = site_json(*graph, site);
            entry["residual"] = site_worst;
            sites.push_back(entry);
            worst = std::max(worst, site_worst);
        }
    });
    ctx.report["space_dim"] = dim;
    ctx.report["protocol"] = dense ? "dense" : "random";
    ctx.report["sites"] = sites;
    ctx.report["residuals"] = json{{"exchange", worst}};
    return worst <= ctx.tolerance;
}

bool run_disjoint(Context& ctx) {
    ctx.load_algebra_input();
    GraphHandle graph = ctx.load_graph_input();
    const auto& cfg = ctx.config;
    const RibbonGraph& g = *graph;
    const auto lattice = ctx.watch.time("lattice_algebra", [&] { return LatticeAlgebra::create(ctx.algebra); });
    const std::int64_t dim = ipow(lattice->edge_dim(), g.num_edges());
    const int n = ctx.algebra->dim();

    std::vector<Site> vertex_sites;
    for (int v = 0; v < g.num_vertices(); ++v) vertex_sites.push_back(g.default_vertex_site(v));
    std::vector<Site> face_sites;
    std::vector<int> face_ids;
    for (int f = 0; f < g.num_faces(); ++f) {
        if (auto s = g.default_face_site(f)) {
            face_sites.push_back(*s);
            face_ids.push_back(f);
        }
    }

    double vv = 0.0, ff = 0.0, vf = 0.0, control = 0.0;
    int vv_pairs = 0, ff_pairs = 0, vf_pairs = 0;
    ctx.watch.time("commutators", [&] {
        for (int k = 0; k < cfg.samples; ++k) {
            const Vec h = random_unit(n, derive_seed(cfg.seed, 7, k));
            const Vec x = random_unit(n, derive_seed(cfg.seed, 8, k));
            const Vec a = random_unit(n, derive_seed(cfg.seed, 9, k));
            const Vec b = random_unit(n, derive_seed(cfg.seed, 10, k));
            const Mat states = probe_states(dim, 1, derive_seed(cfg.seed, 11, k), cfg.dense_cap);
            std::vector<LatticeOperator> av, ax, ba, bb;
            for (const Site& s : vertex_sites) {
                av.push_back(vertex_operator(lattice, graph, s, h));
                ax.push_back(vertex_operator(lattice, graph, s, x));
            }
            for (const Site& s : face_sites) {
                ba.push_back(face_operator(lattice, graph, s, a));
                bb.push_back(face_operator(lattice, graph, s, b));
            }
            for (std::size_t i = 0; i < av.size(); ++i) {
                for (std::size_t j = 0; j < av.size(); ++j) {
                    if (i == j) continue;
                    vv = std::max(vv, commutator_residual(av[i], ax[j], states));
                    if (k == 0) ++vv_pairs;
                }
            }
            for (std::size_t i = 0; i < ba.size(); ++i) {
                for (std::size_t j = 0; j < ba.size(); ++j) {
                    if (i == j) continue;
                    ff = std::max(ff, commutator_residual(ba[i], bb[j], states));
                    if (k == 0) ++ff_pairs;
                }
            }
            for (std::size_t i = 0; i < vertex_sites.size(); ++i) {
                const int vface = g.face_of(vertex_sites[i].face_half);
                for (std::size_t j = 0; j < face_sites.size(); ++j) {
                    if (face_sites[j].vertex == vertex_sites[i].vertex || face_ids[j] == vface) continue;
                    vf = std::max(vf, commutator_residual(av[i], bb[j], states));
                    if (k == 0) ++vf_pairs;
                }
            }
            if (!vertex_sites.empty()) {
                const Site& s = vertex_sites.front();
                control = std::max(control,
                                   commutator_residual(av.front(), face_operator(lattice, graph, s, a), states));
            }
        }
    });
    ctx.report["space_dim"] = dim;
    ctx.report["pair_counts"] = json{{"vertex-vertex", vv_pairs}, {"face-face", ff_pairs}, {"vertex-face", vf_pairs}};
    ctx.report["identical_site_commutator"] = control;
    ctx.report["residuals"] =
        json{{"vertex-vertex", vv}, {"face-face", ff}, {"vertex-face-disjoint", vf}};
    return std::max({vv, ff, vf}) <= ctx.tolerance;
}

ModelSpec load_model(Context& ctx, GraphHandle graph) {
    const auto lattice = ctx.watch.time("lattice_algebra", [&] { return LatticeAlgebra::create(ctx.algebra); });
    return ctx.watch.time("model", [&] { return make_model(lattice, std::move(graph)); });
}

bool run_projectors(Context& ctx) {
    ctx.load_algebra_input();
    const ModelSpec model = load_model(ctx, ctx.load_graph_input());
    const auto& cfg = ctx.config;
    const ProjectorReport pr =
        ctx.watch.time("checks", [&] { return check_projectors(model, cfg.dense_cap, cfg.samples, cfg.seed); });
    ctx.report["protocol"] = pr.dense ? "dense" : "random";
    ctx.report["repeated_edges"] = pr.repeated_edges;
    ctx.report["residuals"] = residuals_json(pr.residuals);
    return max_of(ctx.report["residuals"]) <= ctx.tolerance;
}

bool run_spectrum(Context& ctx) {
    ctx.load_algebra_input();
    const ModelSpec model = load_model(ctx, ctx.load_graph_input());
    const auto& cfg = ctx.config;
    const Spectrum sp = ctx.watch.time("eigensolve", [&] { return spectrum(model, cfg.dense_cap); });
    const GroundSpace gs = ctx.watch.time("ground_space", [&] { return ground_space(model, cfg.dense_cap); });
    const double min_eig = sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.front();
    const double max_eig = sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.back();
    const int terms = static_cast<int>(model.vertex_sites.size() + model.face_sites.size());
    ctx.report["spectrum"] = sp.eigenvalues;
    ctx.report["zero_multiplicity"] = sp.zero_multiplicity;
    ctx.report["ground_dim"] = gs.dim;
    ctx.report["term_count"] = terms;
    ctx.report["residuals"] = json{{"integrality", sp.integrality_residual},
                                   {"hermitian", sp.hermitian_residual},
                                   {"imaginary", sp.max_imag},
                                   {"below-zero", std::max(0.0, -min_eig)},
                                   {"above-term-count", std::max(0.0, max_eig - terms)}};
    return max_of(ctx.report["residuals"]) <= ctx.tolerance && sp.zero_multiplicity == gs.dim;
}

bool run_groundspace(Context& ctx) {
    ctx.load_algebra_input();
    const ModelSpec model = load_model(ctx, ctx.load_graph_input());
    const auto& cfg = ctx.config;
    const GroundSpace gs =
        ctx.watch.time("ground_space", [&] { return ground_space(model, cfg.dense_cap, kProbeCap, cfg.seed); });
    ctx.report["ground_dim"] = gs.dim;
    ctx.report["protocol"] = gs.probed ? "random" : "dense";
    ctx.report["residuals"] = json{{"order", gs.order_residual}, {"fixed", gs.fixed_residual}};
    return max_of(ctx.report["residuals"]) <= ctx.tolerance;
}

bool run_tnstate(Context& ctx) {
    ctx.load_algebra_input();
    const ModelSpec model = load_model(ctx, ctx.load_graph_input());
    const auto& cfg = ctx.config;
    const LatticeAlgebra& lattice = *model.algebra;
    const int edges = model.graph->num_edges();

    const GroundState gs = ctx.watch.time("contract", [&] { return ground_state(model); });
    const Mat psi = gs.state.coeffs;
    json residuals = json::object();
    ctx.watch.time("invariance", [&] {
        const Projectors p = projectors(model);
        double vertex = 0.0, face = 0.0;
        for (const auto& a : p.vertex) vertex = std::max(vertex, relative_residual(a.apply(psi) - psi, psi));
        for (const auto& b : p.face) face = std::max(face, relative_residual(b.apply(psi) - psi, psi));
        residuals["vertex-invariance"] = vertex;
        residuals["face-invariance"] = face;
        residuals["ground-projector"] = relative_residual(apply_ground_projector(p, psi) - psi, psi);
    });
    ctx.watch.time("energy", [&] {
        const Hamiltonian ham(model);
        const Mat g_psi = apply_metric(lattice, edges, psi);
        const Complex num = (g_psi.adjoint() * ham.apply(psi))(0, 0);
        const Complex den = (g_psi.adjoint() * psi)(0, 0);
        residuals["energy"] = std::abs(num / den);
    });
    ctx.report["norm_before_normalisation"] = gs.norm;
    ctx.report["space_dim"] = gs.state.coeffs.size();
    if (gs.state.coeffs.size() <= cfg.dense_cap) {
        ctx.watch.time("expansion", [&] {
            const GroundSpace space = ground_space(model, cfg.dense_cap);
            const Mat coeffs = space.basis.adjoint() * apply_metric(lattice, edges, psi);
            ctx.report["ground_dim"] = space.dim;
            ctx.report["ground_coefficients"] = vector_json(coeffs.col(0));
            residuals["ground-span"] = relative_residual(space.basis * coeffs - psi, psi);
        });
    }
    ctx.report["residuals"] = residuals;
    return max_of(residuals) <= ctx.tolerance;
}

/// Element given either as "haar" or as a coefficient array of numbers or [re, im] pairs.
Vec label_from_json(const json& j, const Vec& haar, int dim, const std::string& what) {
    if (j.is_string()) {
        if (j.get<std::string>() != "haar") throw Error(ErrorKind::ParseError, what + ": unknown label name");
        return haar;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw Error(ErrorKind::ParseError, what + ": expected 'haar' or " + std::to_string(dim) + " coefficients");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) {
        const json& c = j[i];
        if (c.is_number()) {
            v(i) = c.get<double>();
        } else if (c.is_array() && c.size() == 2) {
            v(i) = Complex(c[0].get<double>(), c[1].get<double>());
        } else {
            throw Error(ErrorKind::ParseError, what + ": malformed coefficient");
        }
    }
    return v;
}

TensorNetworkSpec tn_spec_from_json(const json& j, const LatticeAlgebra& lattice, const Vec& haar_cop,
                                    const GraphHandle& fallback) {
    GraphHandle graph = fallback;
    if (j.contains("graph")) {
        const json& gj = j["graph"];
        graph = gj.is_string() ? load_graph(gj.get<std::string>()) : parse_graph(gj.dump());
    }
    const int n = lattice.edge_dim();
    const Vec& eta = lattice.dual()->haar();
    TensorNetworkSpec spec = uniform_spec(graph, eta, haar_cop, haar_cop);
    if (j.contains("edge_labels")) {
        for (const auto& [id, value] : j["edge_labels"].items()) {
            int edge = -1;
            for (int e = 0; e < graph->num_edges(); ++e)
                if (graph->edge_name(e) == id) edge = e;
            if (edge < 0) throw Error(ErrorKind::ParseError, "edge_labels: unknown edge '" + id + "'");
            spec.edge_labels[edge] = label_from_json(value, eta, n, "edge " + id);
        }
    }
    auto face_index = [&](const std::string& id, int count, const std::string& what) {
        int f = -1;
        try {
            f = std::stoi(id);
        } catch (const std::exception&) {
        }
        if (f < 0 || f >= count) throw Error(ErrorKind::ParseError, what + ": unknown index '" + id + "'");
        return f;
    };
    if (j.contains("face_labels")) {
        for (const auto& [id, value] : j["face_labels"].items()) {
            const int f = face_index(id, graph->num_faces(), "face_labels");
            spec.face_labels[f] = label_from_json(value, haar_cop, n, "face " + id);
        }
    }
    if (j.contains("face_starts")) {
        for (const auto& [id, value] : j["face_starts"].items()) {
            const int f = face_index(id, graph->num_faces(), "face_starts");
            const int he = graph->find_half_edge(value.get<std::string>());
            if (graph->face_of(he) != f) throw Error(ErrorKind::SiteInvalid, "face start is not on face " + id);
            spec.face_starts[f] = he;
        }
    }
    if (j.contains("boundary_labels")) {
        const json& bl = j["boundary_labels"];
        if (!bl.is_array() || bl.size() != graph->boundary_components().size())
            throw Error(ErrorKind::MissingBoundaryLabels, "one label per boundary component is required");
        for (std::size_t c = 0; c < bl.size(); ++c)
            spec.boundary_labels[c] = label_from_json(bl[c], haar_cop, n, "boundary " + std::to_string(c));
    } else if (graph->has_boundary() && j.contains("edge_labels")) {
        throw Error(ErrorKind::MissingBoundaryLabels, "graph has a boundary but no boundary_labels were given");
    }
    return spec;
}

bool run_trace(Context& ctx) {
    ctx.load_algebra_input();
    const auto& cfg = ctx.config;
    const auto lattice = ctx.watch.time("lattice_algebra", [&] { return LatticeAlgebra::create(ctx.algebra); });
    const Vec haar_cop = op_cop(ctx.algebra, Opposite::Cop)->haar();
    TensorNetworkSpec spec;
    if (!cfg.tn_spec.empty()) {
        const json j = json::parse(read_file(cfg.tn_spec));
        const bool inline_graph = j.contains("graph");
        spec = tn_spec_from_json(j, *lattice, haar_cop, inline_graph ? nullptr : ctx.load_graph_input());
        if (inline_graph) ctx.report["graph"] = spec.graph->name();
    } else {
        spec = tn_spec_from_json(json::object(), *lattice, haar_cop, ctx.load_graph_input());
    }
    const Complex value =
        ctx.watch.time("contract", [&] { return tensor_trace_boundary(*lattice->dual(), spec); });
    ctx.report["trace"] = complex_json(value);
    ctx.report["boundary_components"] = spec.graph->boundary_components().size();
    ctx.report["residuals"] = json::object();
    return std::isfinite(value.real()) && std::isfinite(value.imag());
}

const std::map<std::string, std::function<bool(Context&)>>& pipelines() {
    static const std::map<std::string, std::function<bool(Context&)>> table{
        {"axioms", run_axioms},         {"bicross", run_bicross},   {"theorem32", run_exchange},
        {"lemma33", run_disjoint},       {"projectors", run_projectors}, {"spectrum", run_spectrum},
        {"groundspace", run_groundspace}, {"tnstate", run_tnstate}, {"trace", run_trace},
    };
    return table;
}

}  // namespace

double default_tolerance(const std::string& command) {
    if (command == "axioms" || command == "bicross" || command == "trace") return kStructureTol;
    if (command == "spectrum" || command == "groundspace") return 1e-9;
    return kOperatorTol;
}

bool is_input_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ProjectorCheckFailed:
        case ErrorKind::ZeroState:
            return false;
        default:
            return true;
    }
}

RunResult run(const RunConfig& config) {
    const auto& table = pipelines();
    const auto it = table.find(config.command);
    if (it == table.end()) throw Error(ErrorKind::ParseError, "unknown command '" + config.command + "'");

    Context ctx(config, config.tolerance.value_or(default_tolerance(config.command)));
    ctx.report["command"] = config.command;
    ctx.report["seed"] = config.seed;
    ctx.report["samples"] = config.samples;
    ctx.report["dense_cap"] = config.dense_cap;
    ctx.report["tolerance"] = ctx.tolerance;

    const auto start = Clock::now();
    const bool passed = it->second(ctx);
    ctx.timings["total"] = std::chrono::duration<double>(Clock::now() - start).count();

    if (ctx.report.contains("residuals")) ctx.report["max_residual"] = max_of(ctx.report["residuals"]);
    ctx.report["passed"] = passed;
    return RunResult{std::move(ctx.report), std::move(ctx.timings), passed};
}

}  // namespace hopflat::cli
