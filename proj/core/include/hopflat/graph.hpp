#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Half-edges are indexed 2*edge + end, where end 0 is the source and 1 the target.
inline constexpr int half_edge(int edge, bool target) noexcept { return 2 * edge + (target ? 1 : 0); }
inline constexpr int edge_of(int he) noexcept { return he >> 1; }
inline constexpr bool is_target(int he) noexcept { return (he & 1) != 0; }
inline constexpr int partner(int he) noexcept { return he ^ 1; }

/// A vertex, the face departing from it along face_half, and the half-edge where
/// clockwise leg assignment at the vertex starts.
struct Site {
    int vertex = -1;
    int face_half = -1;
    int start_half = -1;
    bool operator==(const Site&) const = default;
};

/// Input description of a ribbon graph, using string identifiers as in the JSON format.
struct GraphSpec {
    struct Vertex {
        std::string id;
        std::vector<std::string> rotation;  ///< half-edge ids, clockwise
    };
    struct Edge {
        std::string id;
        std::string source_half;
        std::string target_half;
    };
    struct SiteRef {
        std::string vertex;
        std::string face_hint;
        std::string start_half;
    };
    std::string name;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<SiteRef> sites;
    std::optional<int> genus;
    std::vector<std::vector<std::string>> boundary;
};

/// Graph with a clockwise rotation of half-edges at each vertex. Half-edges listed by an
/// edge but absent from every rotation are dangling; face tracing turns back there.
class RibbonGraph {
public:
    /// Validates and derives faces. Throws ParseError, NonManifold, EulerMismatch or SiteInvalid.
    explicit RibbonGraph(GraphSpec spec);

    const std::string& name() const noexcept { return spec_.name; }
    const GraphSpec& spec() const noexcept { return spec_; }

    int num_vertices() const noexcept { return static_cast<int>(rotations_.size()); }
    int num_edges() const noexcept { return static_cast<int>(spec_.edges.size()); }
    int num_half_edges() const noexcept { return 2 * num_edges(); }
    int num_faces() const noexcept { return static_cast<int>(faces_.size()); }

    /// Owning vertex, or -1 for a dangling end.
    int vertex_of(int he) const { return vertex_of_[he]; }
    const std::vector<int>& rotation(int v) const { return rotations_[v]; }
    /// Next half-edge clockwise around the owning vertex.
    int cw_next(int he) const;
    /// Departure following he in its face walk.
    int next_in_face(int he) const;

    /// Face walks as sequences of departure half-edges.
    const std::vector<std::vector<int>>& faces() const noexcept { return faces_; }
    int face_of(int he) const { return face_of_[he]; }
    /// The face walk of he rotated to begin at he.
    std::vector<int> face_walk_from(int he) const;

    bool is_boundary(int he) const { return boundary_[he]; }
    bool has_boundary() const noexcept { return !spec_.boundary.empty(); }
    bool has_dangling() const;
    const std::vector<std::vector<int>>& boundary_components() const noexcept { return boundary_components_; }

    int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }
    std::optional<int> genus() const noexcept { return spec_.genus; }

    const std::vector<Site>& sites() const noexcept { return sites_; }
    void validate_site(const Site& site) const;
    /// Site whose clockwise legs start at rotation[0] and whose face departs there.
    Site default_vertex_site(int v) const;
    /// Site at the first departure of the face walk that leaves a vertex along a non-boundary side.
    std::optional<Site> default_face_site(int face) const;

    const std::string& half_edge_name(int he) const { return half_names_[he]; }
    int find_half_edge(const std::string& id) const;
    int find_vertex(const std::string& id) const;
    const std::string& vertex_name(int v) const { return spec_.vertices[v].id; }
    const std::string& edge_name(int e) const { return spec_.edges[e].id; }

    bool operator==(const RibbonGraph& other) const;

private:
    GraphSpec spec_;
    std::vector<std::string> half_names_;
    std::vector<std::vector<int>> rotations_;
    std::vector<int> vertex_of_;
    std::vector<int> position_;
    std::vector<std::vector<int>> faces_;
    std::vector<int> face_of_;
    std::vector<bool> boundary_;
    std::vector<std::vector<int>> boundary_components_;
    std::vector<Site> sites_;
};

using GraphHandle = std::shared_ptr<const RibbonGraph>;

GraphHandle make_graph(GraphSpec spec);
GraphHandle parse_graph(const std::string& json_text);
std::string serialize_graph(const RibbonGraph& graph);

/// minimal, loop, two_loop, seven_edge, path3, triangle, torus-MxN (also torus(M,N)).
GraphHandle builtin_graph(const std::string& name);
const std::vector<std::string>& builtin_graph_names();

/// Coefficients over (dim H*)^|E| basis states, row-major with edge 0 most significant.
struct LatticeState {
    GraphHandle graph;
    AlgebraHandle algebra;
    Vec coeffs;
};

/// Flips the orientation of edge e and applies the antipode of the edge algebra on that factor.
std::pair<GraphHandle, LatticeState> reverse_edge(const RibbonGraph& graph, int edge, const LatticeState& state);

/// Applies a single-edge matrix to factor `edge` of every column of `block`, a set of states on
/// `num_edges` factors of dimension `dim`.
Mat apply_on_edge(const Mat& m, int edge, int num_edges, int dim, const Mat& block);

}  // namespace hopflat
