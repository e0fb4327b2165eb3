#include "hopflat/site_ops.hpp"

#include <algorithm>
#include <random>

#include "hopflat/error.hpp"

namespace hopflat {

SparseMatrix SparseMatrix::from_dense(const Mat& m, double drop) {
    SparseMatrix s;
    s.rows = static_cast<int>(m.rows());
    s.cols = static_cast<int>(m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > drop) s.entries.push_back({i, j, m(i, j)});
    return s;
}

Mat SparseMatrix::dense() const {
    Mat m = Mat::Zero(rows, cols);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
}

LatticeAlgebraHandle LatticeAlgebra::create(const AlgebraHandle& base) {
    std::shared_ptr<LatticeAlgebra> out(new LatticeAlgebra());
    out->base_ = base;
    out->dual_ = hopflat::dual(base);
    out->bicross_ = mirror_bicrossproduct(base);
    const Algebra& d = *out->dual_.algebra;
    const Mat& s = d.data().antipode;
    const int labels = out->bicross_.mh->dim();
    out->plus_.reserve(labels);
    out->minus_.reserve(labels);
    for (int b = 0; b < labels; ++b) {
        const Mat plus = dual_left_action_basis(*base, d, b);
        out->plus_.push_back(SparseMatrix::from_dense(plus, kStructureTol * 1e-3));
        out->minus_.push_back(SparseMatrix::from_dense(s * plus * s, kStructureTol * 1e-3));
    }
    if (base->has_star()) {
        out->gram_ = gram_matrix(*base, d);
        out->gram_inverse_ = out->gram_->inverse();
    }
    return out;
}

Mat LatticeAlgebra::triangle(TriangleKind kind, const Vec& label) const {
    const Algebra& h = *base_;
    const Algebra& d = *dual_.algebra;
    const int n = h.dim();
    if (label.size() != n) throw Error(ErrorKind::ShapeMismatch, "triangle label has the wrong dimension");
    Mat out = Mat::Zero(n, n);
    const Mat& sd = d.data().antipode;
    switch (kind) {
        case TriangleKind::LPlus:
        case TriangleKind::LMinus:
            for (int c = 0; c < n; ++c) {
                for (const PairTerm& outer : d.coproduct_terms(c)) {
                    for (const PairTerm& inner : d.coproduct_terms(outer.right)) {
                        // phi1 = outer.left, phi2 = inner.left, phi3 = inner.right
                        const Vec s1 = sd.col(outer.left);
                        const Vec e3 = basis_vector(n, inner.right);
                        const Vec prod = kind == TriangleKind::LPlus ? d.multiply(s1, e3) : d.multiply(e3, s1);
                        out(inner.left, c) += outer.coeff * inner.coeff * prod.cwiseProduct(label).sum();
                    }
                }
            }
            break;
        case TriangleKind::TPlus: {
            const Vec sa = h.antipode(label);
            for (int c = 0; c < n; ++c)
                for (const PairTerm& t : d.coproduct_terms(c)) out(t.right, c) += t.coeff * sa(t.left);
            break;
        }
        case TriangleKind::TMinus:
            for (int c = 0; c < n; ++c)
                for (const PairTerm& t : d.coproduct_terms(c)) out(t.left, c) += t.coeff * label(t.right);
            break;
    }
    return out;
}

Mat LatticeAlgebra::mixed(const Vec& x, LegSign sign) const {
    const Mat plus = dual_left_action(*base_, *dual_.algebra, x);
    if (sign == LegSign::Plus) return plus;
    const Mat& s = dual_.algebra->data().antipode;
    return s * plus * s;
}

const Mat& LatticeAlgebra::gram() const {
    if (!gram_) throw Error(ErrorKind::StarUndefined, "algebra '" + base_->label() + "' has no star");
    return *gram_;
}

const Mat& LatticeAlgebra::gram_inverse() const {
    if (!gram_inverse_) throw Error(ErrorKind::StarUndefined, "algebra '" + base_->label() + "' has no star");
    return *gram_inverse_;
}

LatticeOperator::LatticeOperator(LatticeAlgebraHandle algebra, GraphHandle graph, std::vector<Leg> legs, Vec label,
                                 SiteKind kind, std::optional<Site> site)
    : algebra_(std::move(algebra)),
      graph_(std::move(graph)),
      legs_(std::move(legs)),
      label_(std::move(label)),
      kind_(kind),
      site_(site) {
    if (label_.size() != algebra_->label_dim())
        throw Error(ErrorKind::ShapeMismatch, "operator label must live in the bicrossproduct");
    for (const Leg& leg : legs_)
        if (leg.edge < 0 || leg.edge >= graph_->num_edges())
            throw Error(ErrorKind::DimensionMismatch, "leg edge out of range");
}

std::int64_t LatticeOperator::space_dim() const { return ipow(algebra_->edge_dim(), graph_->num_edges()); }

std::vector<int> LatticeOperator::support() const {
    std::vector<int> edges;
    for (const Leg& leg : legs_) edges.push_back(leg.edge);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

bool LatticeOperator::repeats_edge() const { return support().size() != legs_.size(); }

namespace {

using RowBlock = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// out += scale * (m acting on factor `edge`) in, for row-major blocks whose rows index lattice states.
void accumulate_edge(const SparseMatrix& m, int edge, int num_edges, int dim, const RowBlock& in, RowBlock& out,
                     Complex scale) {
    const std::int64_t left = ipow(dim, edge);
    const std::int64_t right = ipow(dim, num_edges - edge - 1);
    for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t base = l * dim * right;
        for (const auto& e : m.entries)
            out.middleRows(base + e.row * right, right) += (scale * e.value) * in.middleRows(base + e.col * right, right);
    }
}

/// Partial sweep state: a block of lattice states tensored with a bond vector in the bicrossproduct.
struct Bond {
    RowBlock state;
    Vec weights;
};

constexpr std::int64_t kChunkElements = std::int64_t{1} << 20;

}  // namespace

Mat LatticeOperator::apply(const Mat& block) const {
    const std::int64_t dim_total = space_dim();
    if (block.rows() != dim_total)
        throw Error(ErrorKind::DimensionMismatch, "state length does not match the lattice");
    const Algebra& m = *algebra_->bicross().mh;
    const int labels = m.dim();
    const int n = algebra_->edge_dim();
    const int ne = graph_->num_edges();
    if (legs_.empty()) return m.counit(label_) * block;

    const std::int64_t chunk = std::max<std::int64_t>(1, kChunkElements / std::max<std::int64_t>(1, dim_total));
    Mat result(block.rows(), block.cols());
    for (std::int64_t c0 = 0; c0 < block.cols(); c0 += chunk) {
        const std::int64_t cols = std::min(chunk, block.cols() - c0);
        std::vector<Bond> bonds;
        bonds.push_back({RowBlock(block.middleCols(c0, cols)), label_});
        for (std::size_t li = 0; li + 1 < legs_.size(); ++li) {
            const Leg& leg = legs_[li];
            std::vector<std::optional<RowBlock>> next(labels);
            for (const Bond& bond : bonds) {
                // coef(p, q): weight of leg action p feeding bond q, summed over the incoming bond.
                Mat coef = Mat::Zero(labels, labels);
                for (int b = 0; b < labels; ++b) {
                    const Complex w = bond.weights(b);
                    if (w == Complex(0.0)) continue;
                    for (const PairTerm& t : m.coproduct_terms(b)) coef(t.left, t.right) += w * t.coeff;
                }
                for (int p = 0; p < labels; ++p)
                    for (int q = 0; q < labels; ++q) {
                        if (coef(p, q) == Complex(0.0)) continue;
                        if (!next[q]) next[q] = RowBlock::Zero(bond.state.rows(), bond.state.cols());
                        accumulate_edge(algebra_->leg_action(p, leg.sign), leg.edge, ne, n, bond.state, *next[q],
                                        coef(p, q));
                    }
            }
            bonds.clear();
            for (int q = 0; q < labels; ++q)
                if (next[q]) bonds.push_back({std::move(*next[q]), basis_vector(labels, q)});
        }
        RowBlock out = RowBlock::Zero(block.rows(), cols);
        const Leg& last = legs_.back();
        for (const Bond& bond : bonds)
            for (int b = 0; b < labels; ++b)
                if (bond.weights(b) != Complex(0.0))
                    accumulate_edge(algebra_->leg_action(b, last.sign), last.edge, ne, n, bond.state, out,
                                    bond.weights(b));
        result.middleCols(c0, cols) = out;
    }
    return result;
}

Vec LatticeOperator::apply(const Vec& state) const { return apply(Mat(state)).col(0); }

LatticeState LatticeOperator::apply(const LatticeState& state) const {
    if (state.algebra.get() != algebra_->dual().get() && state.algebra->structure_hash() != algebra_->dual()->structure_hash())
        throw Error(ErrorKind::AlgebraMismatch, "state does not live on this lattice algebra");
    return LatticeState{state.graph, state.algebra, apply(state.coeffs)};
}

Mat LatticeOperator::dense(std::int64_t cap) const {
    const std::int64_t d = space_dim();
    if (d > cap)
        throw Error(ErrorKind::DimensionCap, "lattice dimension " + std::to_string(d) + " exceeds dense cap " +
                                                 std::to_string(cap));
    return apply(Mat(Mat::Identity(d, d)));
}

std::vector<Leg> vertex_legs(const RibbonGraph& graph, const Site& site) {
    graph.validate_site(site);
    const auto& rot = graph.rotation(site.vertex);
    const auto start = std::find(rot.begin(), rot.end(), site.start_half) - rot.begin();
    std::vector<Leg> legs;
    for (std::size_t k = 0; k < rot.size(); ++k) {
        const int he = rot[(start + k) % rot.size()];
        legs.push_back({edge_of(he), is_target(he) ? LegSign::Plus : LegSign::Minus});
    }
    return legs;
}

std::vector<Leg> face_legs(const RibbonGraph& graph, const Site& site) {
    graph.validate_site(site);
    std::vector<Leg> legs;
    for (int he : graph.face_walk_from(site.face_half)) {
        if (graph.is_boundary(he)) continue;
        legs.push_back({edge_of(he), is_target(he) ? LegSign::Plus : LegSign::Minus});
    }
    return legs;
}

namespace {

void check_label(const LatticeAlgebra& algebra, const Vec& x) {
    if (x.size() != algebra.edge_dim())
        throw Error(ErrorKind::AlgebraMismatch, "site operator label must live in the base algebra");
}

}  // namespace

LatticeOperator vertex_operator(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                                const Vec& h) {
    check_label(*algebra, h);
    return LatticeOperator(algebra, graph, vertex_legs(*graph, site), algebra->bicross().embed_h * h, SiteKind::Vertex,
                           site);
}

LatticeOperator face_operator(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                              const Vec& a) {
    check_label(*algebra, a);
    return LatticeOperator(algebra, graph, face_legs(*graph, site), algebra->bicross().embed_cop * a, SiteKind::Face,
                           site);
}

double residual_scale(const Mat& x) { return std::max(1.0, x.size() ? x.cwiseAbs().maxCoeff() : 0.0); }

double relative_residual(const Mat& diff, const Mat& states) {
    double r = 0.0;
    for (Eigen::Index k = 0; k < diff.cols(); ++k) {
        const double scale = states.col(k).norm();
        r = std::max(r, scale > 0.0 ? diff.col(k).norm() / scale : diff.col(k).norm());
    }
    return r;
}

double exchange_residual(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                          const Vec& h, const Vec& a, const Mat& states) {
    const Algebra& base = *algebra->base();
    const int n = base.dim();
    const Mat lhs = vertex_operator(algebra, graph, site, h).apply(face_operator(algebra, graph, site, a).apply(states));

    // Group the second coproduct of h by its last leg: sum_s (sum_{p,q} c e_p a S e_q) on A^{e_s}.
    const Vec d2 = iterated_coproduct(base, h, 2);
    std::vector<Vec> labels(n, Vec::Zero(n));
    std::vector<bool> used(n, false);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int s = 0; s < n; ++s) {
                const Complex c = d2((p * n + q) * n + s);
                if (c == Complex(0.0)) continue;
                labels[s] += c * base.multiply(base.multiply(basis_vector(n, p), a), base.antipode(basis_vector(n, q)));
                used[s] = true;
            }
    Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
    for (int s = 0; s < n; ++s) {
        if (!used[s]) continue;
        rhs += face_operator(algebra, graph, site, labels[s])
                   .apply(vertex_operator(algebra, graph, site, basis_vector(n, s)).apply(states));
    }
    return relative_residual(lhs - rhs, states);
}

double commutator_residual(const LatticeOperator& x, const LatticeOperator& y, const Mat& states) {
    const Mat xy = x.apply(y.apply(states));
    const Mat yx = y.apply(x.apply(states));
    return relative_residual(xy - yx, states);
}

Mat apply_metric(const LatticeAlgebra& algebra, int num_edges, const Mat& block, bool inverse) {
    const Mat& g = inverse ? algebra.gram_inverse() : algebra.gram();
    const int n = algebra.edge_dim();
    if (g.isApprox(g(0, 0) * Mat::Identity(n, n), 0.0)) return std::pow(g(0, 0), num_edges) * block;
    Mat out = block;
    for (int e = 0; e < num_edges; ++e) out = apply_on_edge(g, e, num_edges, n, out);
    return out;
}

Mat adjoint(const LatticeAlgebra& algebra, int num_edges, const Mat& op) {
    const Mat gop = apply_metric(algebra, num_edges, op);
    return apply_metric(algebra, num_edges, Mat(gop.adjoint()), true);
}

Mat edge_adjoint(const LatticeAlgebra& algebra, const Mat& op) {
    return algebra.gram_inverse() * (algebra.gram() * op).adjoint();
}

double hermiticity_residual(const LatticeAlgebra& algebra, int num_edges, const Mat& op) {
    return (op - adjoint(algebra, num_edges, op)).cwiseAbs().maxCoeff() / residual_scale(op);
}

AxiomReport triangle_relations(const LatticeAlgebra& algebra, int samples, std::uint64_t seed) {
    const Algebra& h = *algebra.base();
    const int n = h.dim();
    auto worst = [](const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; };
    auto exchange = [&](TriangleKind l, TriangleKind t, const Vec& x, const Vec& a) {
        const Vec legs = iterated_coproduct(h, x, 2);
        Mat rhs = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const Complex c = legs((i * n + j) * n + k);
                    if (c == Complex(0.0)) continue;
                    const Vec twisted = h.multiply(h.multiply(basis_vector(n, i), a), h.antipode(basis_vector(n, j)));
                    rhs += c * algebra.triangle(t, twisted) * algebra.triangle(l, basis_vector(n, k));
                }
        return worst(algebra.triangle(l, x) * algebra.triangle(t, a) - rhs);
    };
    double l_commute = 0.0, t_commute = 0.0, plus = 0.0, minus = 0.0, mixed = 0.0;
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t base = seed + 4ULL * static_cast<std::uint64_t>(s);
        const Vec x = random_unit(n, base);
        const Vec a = random_unit(n, base + 1);
        const Vec y = random_unit(n, base + 2);
        const Vec b = random_unit(n, base + 3);
        const Mat lp = algebra.triangle(TriangleKind::LPlus, x);
        const Mat lm = algebra.triangle(TriangleKind::LMinus, y);
        l_commute = std::max(l_commute, worst(lp * lm - lm * lp));
        const Mat tp = algebra.triangle(TriangleKind::TPlus, a);
        const Mat tm = algebra.triangle(TriangleKind::TMinus, b);
        t_commute = std::max(t_commute, worst(tp * tm - tm * tp));
        plus = std::max(plus, exchange(TriangleKind::LPlus, TriangleKind::TPlus, x, a));
        minus = std::max(minus, exchange(TriangleKind::LMinus, TriangleKind::TMinus, x, a));
        mixed = std::max(mixed, exchange(TriangleKind::LPlus, TriangleKind::TMinus, x, a));
    }
    return {{"L+L-:commute", l_commute},
            {"T+T-:commute", t_commute},
            {"L+T+:exchange", plus},
            {"L-T-:exchange", minus},
            {"L+T-:exchange", mixed}};
}

Vec random_unit(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
    return v / v.norm();
}

Mat probe_states(std::int64_t dim, int count, std::uint64_t seed, std::int64_t cap) {
    if (dim <= cap) return Mat::Identity(dim, dim);
    Mat out(dim, count);
    for (int k = 0; k < count; ++k) out.col(k) = random_unit(static_cast<int>(dim), seed + 0x9e3779b97f4a7c15ULL * (k + 1));
    return out;
}

}  // namespace hopflat
