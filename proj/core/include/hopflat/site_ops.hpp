#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hopflat/bicross.hpp"
#include "hopflat/duality.hpp"
#include "hopflat/graph.hpp"

namespace hopflat {

/// Largest lattice dimension for which operators are assembled densely.
inline constexpr std::int64_t kDenseCap = 4096;

/// Coordinate-list sparse matrix for the single-edge actions.
struct SparseMatrix {
    struct Entry {
        int row;
        int col;
        Complex value;
    };
    int rows = 0;
    int cols = 0;
    std::vector<Entry> entries;

    static SparseMatrix from_dense(const Mat& m, double drop = 0.0);
    Mat dense() const;
};

enum class TriangleKind { LPlus, LMinus, TPlus, TMinus };
enum class LegSign { Plus, Minus };

/// Everything the lattice needs from a base algebra H: its dual (the edge space), the
/// mirror bicrossproduct and the action of each M(H) basis element on one edge.
class LatticeAlgebra {
public:
    static std::shared_ptr<const LatticeAlgebra> create(const AlgebraHandle& base);

    const AlgebraHandle& base() const noexcept { return base_; }
    const AlgebraHandle& dual() const noexcept { return dual_.algebra; }
    const DualPairing& pairing() const noexcept { return dual_.pairing; }
    const Bicrossproduct& bicross() const noexcept { return bicross_; }
    int edge_dim() const noexcept { return base_->dim(); }
    int label_dim() const noexcept { return bicross_.mh->dim(); }

    /// Action of basis element b of M(H) on one edge, for a leg of the given sign.
    const SparseMatrix& leg_action(int b, LegSign sign) const {
        return sign == LegSign::Plus ? plus_[b] : minus_[b];
    }
    /// Single-edge triangle operator. L labels live in H, T labels in H^cop (same coefficients).
    Mat triangle(TriangleKind kind, const Vec& label) const;
    /// Single-edge action of a general M(H) element; Minus conjugates by the edge antipode.
    Mat mixed(const Vec& x, LegSign sign) const;

    /// Edge Gram matrix of the Haar inner product. Throws StarUndefined when H has no star.
    const Mat& gram() const;
    const Mat& gram_inverse() const;

private:
    LatticeAlgebra() = default;

    AlgebraHandle base_;
    DualResult dual_;
    Bicrossproduct bicross_;
    std::vector<SparseMatrix> plus_;
    std::vector<SparseMatrix> minus_;
    std::optional<Mat> gram_;
    std::optional<Mat> gram_inverse_;
};

using LatticeAlgebraHandle = std::shared_ptr<const LatticeAlgebra>;

struct Leg {
    int edge;
    LegSign sign;
    bool operator==(const Leg&) const = default;
};

enum class SiteKind { Vertex, Face, Custom };

/// Operator given by an M(H) label whose iterated coproduct is distributed over a list of
/// legs: leg i acts on its edge with the i-th coproduct factor. Legs on a shared edge
/// compose in list order, the first leg acting first.
class LatticeOperator {
public:
    LatticeOperator(LatticeAlgebraHandle algebra, GraphHandle graph, std::vector<Leg> legs, Vec label,
                    SiteKind kind = SiteKind::Custom, std::optional<Site> site = std::nullopt);

    const LatticeAlgebraHandle& algebra() const noexcept { return algebra_; }
    const GraphHandle& graph() const noexcept { return graph_; }
    const std::vector<Leg>& legs() const noexcept { return legs_; }
    const Vec& label() const noexcept { return label_; }
    SiteKind kind() const noexcept { return kind_; }
    const std::optional<Site>& site() const noexcept { return site_; }

    std::int64_t space_dim() const;
    /// Sorted edges touched by some leg.
    std::vector<int> support() const;
    /// True when some edge carries more than one leg.
    bool repeats_edge() const;

    /// Applies the operator to every column of a block of lattice states, leg by leg.
    Mat apply(const Mat& block) const;
    Vec apply(const Vec& state) const;
    LatticeState apply(const LatticeState& state) const;
    /// Assembled matrix; throws DimensionCap above `cap`.
    Mat dense(std::int64_t cap = kDenseCap) const;

private:
    LatticeAlgebraHandle algebra_;
    GraphHandle graph_;
    std::vector<Leg> legs_;
    Vec label_;
    SiteKind kind_;
    std::optional<Site> site_;
};

/// Legs of a vertex operator: clockwise from the start half-edge, Plus for incoming ends.
std::vector<Leg> vertex_legs(const RibbonGraph& graph, const Site& site);
/// Legs of a face operator: clockwise around the face from the site's departure, Plus when
/// the face lies to the right of the edge. Boundary sides carry no leg.
std::vector<Leg> face_legs(const RibbonGraph& graph, const Site& site);

/// Vertex operator for h in H at a site.
LatticeOperator vertex_operator(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                                const Vec& h);
/// Face operator for a in H^cop at a site.
LatticeOperator face_operator(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                              const Vec& a);

/// Residuals of the single-edge triangle relations on `samples` random unit labels:
/// [L+^h, L-^g] = 0, [T+^a, T-^b] = 0, and L^h T^a = sum T^{h1 a S h2} L^{h3} for the sign
/// pairs (+,+), (-,-) and (+,-).
AxiomReport triangle_relations(const LatticeAlgebra& algebra, int samples, std::uint64_t seed);

/// Max-abs entry of x, or 1 if that is smaller.
double residual_scale(const Mat& x);
/// Largest column 2-norm of `diff` relative to the matching column of `states`.
double relative_residual(const Mat& diff, const Mat& states);

/// Residual of A^h B^a = sum B^{h1 a S h2} A^{h3} on the columns of `states`.
double exchange_residual(const LatticeAlgebraHandle& algebra, const GraphHandle& graph, const Site& site,
                          const Vec& h, const Vec& a, const Mat& states);

/// Relative residual of [x, y] on the columns of `states`.
double commutator_residual(const LatticeOperator& x, const LatticeOperator& y, const Mat& states);

/// Applies the tensored edge Gram matrix (or its inverse) to every column of a block.
Mat apply_metric(const LatticeAlgebra& algebra, int num_edges, const Mat& block, bool inverse = false);
/// Adjoint of a dense lattice matrix under the tensored Haar inner product.
Mat adjoint(const LatticeAlgebra& algebra, int num_edges, const Mat& op);
/// Adjoint of a single-edge matrix under the Haar inner product.
Mat edge_adjoint(const LatticeAlgebra& algebra, const Mat& op);
/// Relative max-abs entry of op minus its adjoint.
double hermiticity_residual(const LatticeAlgebra& algebra, int num_edges, const Mat& op);

/// Identity columns when the lattice fits under the cap, otherwise `count` random unit states.
Mat probe_states(std::int64_t dim, int count, std::uint64_t seed, std::int64_t cap = kDenseCap);
/// Gaussian complex vector of unit 2-norm, from a seeded generator.
Vec random_unit(int dim, std::uint64_t seed);

}  // namespace hopflat
