#include "hopflat/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hopflat/duality.hpp"
#include "hopflat/error.hpp"

namespace hopflat {

ModelSpec make_model(const LatticeAlgebraHandle& algebra, const GraphHandle& graph) {
    ModelSpec m;
    m.graph = graph;
    m.algebra = algebra;
    m.haar_h = algebra->base()->haar();
    m.haar_cop = op_cop(algebra->base(), Opposite::Cop)->haar();
    const RibbonGraph& g = *graph;
    for (int v = 0; v < g.num_vertices(); ++v) {
        auto declared = std::find_if(g.sites().begin(), g.sites().end(), [v](const Site& s) { return s.vertex == v; });
        m.vertex_sites.push_back(declared != g.sites().end() ? *declared : g.default_vertex_site(v));
    }
    for (int f = 0; f < g.num_faces(); ++f) {
        auto declared = std::find_if(g.sites().begin(), g.sites().end(),
                                     [&](const Site& s) { return g.face_of(s.face_half) == f; });
        if (declared != g.sites().end()) {
            m.face_sites.push_back(*declared);
            m.face_ids.push_back(f);
        } else if (auto site = g.default_face_site(f)) {
            m.face_sites.push_back(*site);
            m.face_ids.push_back(f);
        }
    }
    return m;
}

Projectors projectors(const ModelSpec& model) {
    Projectors p;
    for (const Site& s : model.vertex_sites)
        p.vertex.push_back(vertex_operator(model.algebra, model.graph, s, model.haar_h));
    for (const Site& s : model.face_sites)
        p.face.push_back(face_operator(model.algebra, model.graph, s, model.haar_cop));
    return p;
}

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Residual of <S, G O S> against <O S, G S> with the metric rescaled to unit size. The second
/// form is the adjoint of the first; with identity probes the first is G O itself.
double self_adjoint_residual(const LatticeAlgebra& algebra, int num_edges, const Mat& states, const Mat& acted,
                             bool identity_states) {
    Mat lhs;
    if (identity_states) {
        lhs = apply_metric(algebra, num_edges, acted) / std::pow(max_abs(algebra.gram()), num_edges);
    } else {
        Mat gs = apply_metric(algebra, num_edges, states);
        gs /= max_abs(gs);
        lhs = gs.adjoint() * acted;
    }
    return max_abs(lhs - lhs.adjoint()) / residual_scale(lhs);
}

}  // namespace

ProjectorReport check_projectors(const ModelSpec& model, std::int64_t dense_cap, int samples, std::uint64_t seed) {
    ProjectorReport report;
    const Projectors p = projectors(model);
    const RibbonGraph& g = *model.graph;
    const int ne = g.num_edges();
    const std::int64_t dim = ipow(model.algebra->edge_dim(), ne);
    report.dense = dim <= dense_cap;
    const Mat states = probe_states(dim, samples, seed, dense_cap);

    double v_idem = 0, f_idem = 0, v_herm = 0, f_herm = 0, commuting = 0, same_site = 0, v_start = 0, f_start = 0;
    for (const auto& op : p.vertex) {
        const Mat once = op.apply(states);
        v_idem = std::max(v_idem, relative_residual(op.apply(once) - once, states));
        v_herm = std::max(v_herm, self_adjoint_residual(*model.algebra, ne, states, once, report.dense));
    }
    for (const auto& op : p.face) {
        const Mat once = op.apply(states);
        f_idem = std::max(f_idem, relative_residual(op.apply(once) - once, states));
        f_herm = std::max(f_herm, self_adjoint_residual(*model.algebra, ne, states, once, report.dense));
        report.repeated_edges = report.repeated_edges || op.repeats_edge();
    }
    std::vector<const LatticeOperator*> all;
    for (const auto& op : p.vertex) all.push_back(&op);
    for (const auto& op : p.face) all.push_back(&op);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            commuting = std::max(commuting, commutator_residual(*all[i], *all[j], states));

    for (std::size_t i = 0; i < p.vertex.size(); ++i) {
        const Site& site = model.vertex_sites[i];
        const Mat reference = p.vertex[i].apply(states);
        for (int he : g.rotation(site.vertex)) {
            Site moved = site;
            moved.start_half = he;
            moved.face_half = he;
            const Mat other = vertex_operator(model.algebra, model.graph, moved, model.haar_h).apply(states);
            v_start = std::max(v_start, relative_residual(reference - other, states));
            const auto face = face_operator(model.algebra, model.graph, moved, model.haar_cop);
            same_site = std::max(same_site, commutator_residual(p.vertex[i], face, states));
        }
    }
    for (std::size_t i = 0; i < p.face.size(); ++i) {
        const Mat reference = p.face[i].apply(states);
        for (int he : g.faces()[model.face_ids[i]]) {
            if (g.vertex_of(he) == -1) continue;
            const Site moved{g.vertex_of(he), he, he};
            const Mat other = face_operator(model.algebra, model.graph, moved, model.haar_cop).apply(states);
            f_start = std::max(f_start, relative_residual(reference - other, states));
        }
    }
    report.residuals = {{"vertex-idempotent", v_idem},
                        {"face-idempotent", f_idem},
                        {"vertex-hermitian", v_herm},
                        {"face-hermitian", f_herm},
                        {"pairwise-commuting", commuting},
                        {"same-site-commuting", same_site},
                        {"vertex-start-independent", v_start},
                        {"face-start-independent", f_start}};
    return report;
}

void require_projectors(const ProjectorReport& report, double tolerance) {
    const auto worst = std::max_element(report.residuals.begin(), report.residuals.end(),
                                        [](const auto& a, const auto& b) { return a.residual < b.residual; });
    if (worst != report.residuals.end() && !(worst->residual <= tolerance))
        throw Error(ErrorKind::ProjectorCheckFailed, "projector property '" + worst->name + "' fails", worst->name,
                    worst->residual);
}

Hamiltonian::Hamiltonian(const ModelSpec& model) : model_(model), projectors_(projectors(model)) {}

std::int64_t Hamiltonian::space_dim() const { return ipow(model_.algebra->edge_dim(), model_.graph->num_edges()); }

Mat Hamiltonian::apply(const Mat& block) const {
    const double count = static_cast<double>(projectors_.vertex.size() + projectors_.face.size());
    Mat out = count * block;
    for (const auto& op : projectors_.vertex) out -= op.apply(block);
    for (const auto& op : projectors_.face) out -= op.apply(block);
    return out;
}

Mat Hamiltonian::dense(std::int64_t cap) const {
    const std::int64_t d = space_dim();
    if (d > cap) throw Error(ErrorKind::DimensionCap, "lattice dimension " + std::to_string(d) + " exceeds dense cap");
    return apply(Mat(Mat::Identity(d, d)));
}

Mat apply_ground_projector(const Projectors& p, const Mat& block, bool faces_first) {
    Mat out = block;
    auto run = [&out](const std::vector<LatticeOperator>& ops) {
        for (const auto& op : ops) out = op.apply(out);
    };
    if (faces_first) {
        run(p.face);
        run(p.vertex);
    } else {
        run(p.vertex);
        run(p.face);
    }
    return out;
}

Mat apply_metric_sqrt(const LatticeAlgebra& algebra, int num_edges, const Mat& block, bool inverse) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(algebra.gram());
    Eigen::VectorXd values = eig.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i)
        values(i) = inverse ? 1.0 / std::sqrt(values(i)) : std::sqrt(values(i));
    const Mat root = eig.eigenvectors() * values.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
    Mat out = block;
    for (int e = 0; e < num_edges; ++e) out = apply_on_edge(root, e, num_edges, algebra.edge_dim(), out);
    return out;
}

Spectrum spectrum(const ModelSpec& model, std::int64_t dense_cap) {
    const Hamiltonian h(model);
    const Mat dense = h.dense(dense_cap);
    const LatticeAlgebra& alg = *model.algebra;
    const int ne = model.graph->num_edges();
    // Similarity into the Gram-orthonormal basis: G^(1/2) H G^(-1/2).
    const Mat left = apply_metric_sqrt(alg, ne, dense);
    const Mat hat = apply_metric_sqrt(alg, ne, Mat(left.adjoint()), true).adjoint();

    Spectrum out;
    out.hermitian_residual = max_abs(hat - hat.adjoint()) / residual_scale(hat);
    if (out.hermitian_residual <= kOperatorTol) {
        const Mat sym = 0.5 * (hat + hat.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> eig(sym, Eigen::EigenvaluesOnly);
        out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    } else {
        Eigen::ComplexEigenSolver<Mat> eig(hat, false);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
            out.eigenvalues.push_back(eig.eigenvalues()(i).real());
            out.max_imag = std::max(out.max_imag, std::abs(eig.eigenvalues()(i).imag()));
        }
        std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    }
    for (double lambda : out.eigenvalues) {
        const double nearest = std::max(0.0, std::round(lambda));
        out.integrality_residual = std::max(out.integrality_residual, std::abs(lambda - nearest));
        if (nearest == 0.0) ++out.zero_multiplicity;
    }
    return out;
}

int numerical_rank(const Mat& m) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > kRankTol * s(0)) ++rank;
    return rank;
}

GroundSpace ground_space(const ModelSpec& model, std::int64_t dense_cap, std::int64_t probe_cap, std::uint64_t seed) {
    const Projectors p = projectors(model);
    const LatticeAlgebra& alg = *model.algebra;
    const int ne = model.graph->num_edges();
    const std::int64_t dim = ipow(alg.edge_dim(), ne);
    GroundSpace out;
    auto fixed_residual = [&p](const Mat& vectors) {
        double r = 0.0;
        for (const auto* ops : {&p.vertex, &p.face})
            for (const auto& op : *ops) r = std::max(r, relative_residual(op.apply(vectors) - vectors, vectors));
        return r;
    };

    if (dim <= dense_cap) {
        const Mat id = Mat::Identity(dim, dim);
        const Mat proj = apply_ground_projector(p, id);
        out.order_residual = relative_residual(proj - apply_ground_projector(p, id, true), id);
        // Hermitian form G^(1/2) P G^(-1/2) shares P's rank; its left singular vectors give
        // an orthonormal image that maps back through G^(-1/2).
        const Mat left = apply_metric_sqrt(alg, ne, proj);
        const Mat hat = apply_metric_sqrt(alg, ne, Mat(left.adjoint()), true).adjoint();
        Eigen::BDCSVD<Mat> svd(hat, Eigen::ComputeThinU);
        const auto& s = svd.singularValues();
        int rank = 0;
        if (s.size() && s(0) > 0.0)
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s(i) > kRankTol * s(0)) ++rank;
        out.dim = rank;
        out.basis = apply_metric_sqrt(alg, ne, Mat(svd.matrixU().leftCols(rank)), true);
        out.fixed_residual = rank ? fixed_residual(out.basis) : 0.0;
        return out;
    }
    if (dim > probe_cap)
        throw Error(ErrorKind::DimensionCap, "lattice dimension " + std::to_string(dim) + " exceeds probe cap");

    out.probed = true;
    constexpr int kMaxProbes = 512;
    for (int k = 16; k <= kMaxProbes; k *= 2) {
        const Mat probes = probe_states(dim, k, seed, 0);
        const Mat image = apply_ground_projector(p, probes);
        const int rank = numerical_rank(image);
        if (rank < k) {
            out.dim = rank;
            out.order_residual = relative_residual(image - apply_ground_projector(p, probes, true), probes);
            out.fixed_residual = fixed_residual(image);
            return out;
        }
    }
    throw Error(ErrorKind::DimensionCap, "ground space larger than the probe budget");
}

}  // namespace hopflat
