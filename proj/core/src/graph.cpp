#include "hopflat/graph.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include <nlohmann/json.hpp>

#include "hopflat/error.hpp"

namespace hopflat {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

}  // namespace

RibbonGraph::RibbonGraph(GraphSpec spec) : spec_(std::move(spec)) {
    const int ne = num_edges();
    std::map<std::string, int> half_index;
    half_names_.resize(2 * ne);
    std::map<std::string, int> edge_ids;
    for (int e = 0; e < ne; ++e) {
        const auto& edge = spec_.edges[e];
        if (!edge_ids.emplace(edge.id, e).second) parse_fail("duplicate edge id '" + edge.id + "'");
        for (int end = 0; end < 2; ++end) {
            const std::string& hid = end == 0 ? edge.source_half : edge.target_half;
            if (hid.empty()) parse_fail("edge '" + edge.id + "' has an empty half-edge id");
            if (!half_index.emplace(hid, half_edge(e, end == 1)).second)
                parse_fail("duplicate half-edge id '" + hid + "'");
            half_names_[half_edge(e, end == 1)] = hid;
        }
    }

    const int nv = static_cast<int>(spec_.vertices.size());
    vertex_of_.assign(2 * ne, -1);
    position_.assign(2 * ne, -1);
    rotations_.resize(nv);
    std::map<std::string, int> vertex_ids;
    for (int v = 0; v < nv; ++v) {
        const auto& vertex = spec_.vertices[v];
        if (!vertex_ids.emplace(vertex.id, v).second) parse_fail("duplicate vertex id '" + vertex.id + "'");
        if (vertex.rotation.empty())
            throw Error(ErrorKind::NonManifold, "vertex '" + vertex.id + "' has no incident half-edges");
        for (const auto& hid : vertex.rotation) {
            auto it = half_index.find(hid);
            if (it == half_index.end()) parse_fail("vertex '" + vertex.id + "' references unknown half-edge '" + hid + "'");
            if (vertex_of_[it->second] != -1)
                throw Error(ErrorKind::NonManifold, "half-edge '" + hid + "' appears in more than one rotation slot");
            vertex_of_[it->second] = v;
            position_[it->second] = static_cast<int>(rotations_[v].size());
            rotations_[v].push_back(it->second);
        }
    }

    for (int he = 0; he < 2 * ne; ++he) {
        if (vertex_of_[he] == -1 && vertex_of_[partner(he)] == -1)
            throw Error(ErrorKind::NonManifold, "edge '" + spec_.edges[edge_of(he)].id + "' touches no vertex");
    }

    face_of_.assign(2 * ne, -1);
    for (int start = 0; start < 2 * ne; ++start) {
        if (face_of_[start] != -1) continue;
        std::vector<int> walk;
        int he = start;
        const int fid = static_cast<int>(faces_.size());
        while (face_of_[he] == -1) {
            face_of_[he] = fid;
            walk.push_back(he);
            he = next_in_face(he);
        }
        if (he != start)
            throw Error(ErrorKind::NonManifold, "face tracing from '" + half_names_[start] + "' does not close");
        faces_.push_back(std::move(walk));
    }

    boundary_.assign(2 * ne, false);
    for (const auto& component : spec_.boundary) {
        std::vector<int> ids;
        for (const auto& hid : component) {
            auto it = half_index.find(hid);
            if (it == half_index.end()) parse_fail("boundary references unknown half-edge '" + hid + "'");
            boundary_[it->second] = true;
            ids.push_back(it->second);
        }
        boundary_components_.push_back(std::move(ids));
    }

    if (spec_.genus && !has_dangling() && !has_boundary()) {
        const int expected = 2 - 2 * *spec_.genus;
        if (euler_characteristic() != expected)
            throw Error(ErrorKind::EulerMismatch,
                        "Euler characteristic " + std::to_string(euler_characteristic()) + " but genus " +
                            std::to_string(*spec_.genus) + " requires " + std::to_string(expected));
    }

    for (const auto& ref : spec_.sites) {
        auto vit = vertex_ids.find(ref.vertex);
        if (vit == vertex_ids.end()) parse_fail("site references unknown vertex '" + ref.vertex + "'");
        auto fit = half_index.find(ref.face_hint);
        auto sit = half_index.find(ref.start_half.empty() ? ref.face_hint : ref.start_half);
        if (fit == half_index.end() || sit == half_index.end())
            parse_fail("site at '" + ref.vertex + "' references an unknown half-edge");
        Site site{vit->second, fit->second, sit->second};
        validate_site(site);
        sites_.push_back(site);
    }
}

int RibbonGraph::cw_next(int he) const {
    const auto& rot = rotations_[vertex_of_[he]];
    return rot[(position_[he] + 1) % rot.size()];
}

int RibbonGraph::next_in_face(int he) const {
    const int arrival = partner(he);
    if (vertex_of_[arrival] == -1) return arrival;
    return cw_next(arrival);
}

std::vector<int> RibbonGraph::face_walk_from(int he) const {
    const auto& walk = faces_[face_of_[he]];
    auto it = std::find(walk.begin(), walk.end(), he);
    std::vector<int> out(it, walk.end());
    out.insert(out.end(), walk.begin(), it);
    return out;
}

bool RibbonGraph::has_dangling() const {
    return std::any_of(vertex_of_.begin(), vertex_of_.end(), [](int v) { return v == -1; });
}

void RibbonGraph::validate_site(const Site& site) const {
    const int nh = num_half_edges();
    if (site.vertex < 0 || site.vertex >= num_vertices() || site.face_half < 0 || site.face_half >= nh ||
        site.start_half < 0 || site.start_half >= nh)
        throw Error(ErrorKind::SiteInvalid, "site indices out of range");
    if (vertex_of_[site.face_half] != site.vertex)
        throw Error(ErrorKind::SiteInvalid,
                    "face half-edge '" + half_names_[site.face_half] + "' does not leave vertex '" +
                        spec_.vertices[site.vertex].id + "'");
    if (vertex_of_[site.start_half] != site.vertex)
        throw Error(ErrorKind::SiteInvalid,
                    "start half-edge '" + half_names_[site.start_half] + "' is not at vertex '" +
                        spec_.vertices[site.vertex].id + "'");
}

Site RibbonGraph::default_vertex_site(int v) const {
    const int he = rotations_.at(v).front();
    return Site{v, he, he};
}

std::optional<Site> RibbonGraph::default_face_site(int face) const {
    for (int he : faces_.at(face)) {
        if (vertex_of_[he] != -1 && !boundary_[he]) return Site{vertex_of_[he], he, he};
    }
    for (int he : faces_.at(face)) {
        if (vertex_of_[he] != -1) return Site{vertex_of_[he], he, he};
    }
    return std::nullopt;
}

int RibbonGraph::find_half_edge(const std::string& id) const {
    auto it = std::find(half_names_.begin(), half_names_.end(), id);
    if (it == half_names_.end()) throw Error(ErrorKind::ParseError, "unknown half-edge '" + id + "'");
    return static_cast<int>(it - half_names_.begin());
}

int RibbonGraph::find_vertex(const std::string& id) const {
    for (int v = 0; v < num_vertices(); ++v)
        if (spec_.vertices[v].id == id) return v;
    throw Error(ErrorKind::ParseError, "unknown vertex '" + id + "'");
}

bool RibbonGraph::operator==(const RibbonGraph& other) const {
    return serialize_graph(*this) == serialize_graph(other);
}

GraphHandle make_graph(GraphSpec spec) { return std::make_shared<const RibbonGraph>(std::move(spec)); }

GraphHandle parse_graph(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed graph JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("graph file must be a JSON object");
    GraphSpec spec;
    try {
        spec.name = doc.value("name", std::string("graph"));
        if (!doc.contains("vertices") || !doc.contains("edges")) parse_fail("graph file needs 'vertices' and 'edges'");
        for (const auto& v : doc.at("vertices")) {
            spec.vertices.push_back({v.at("id").get<std::string>(), v.at("rotation").get<std::vector<std::string>>()});
        }
        for (const auto& e : doc.at("edges")) {
            spec.edges.push_back({e.at("id").get<std::string>(), e.at("source_half").get<std::string>(),
                                  e.at("target_half").get<std::string>()});
        }
        if (doc.contains("sites")) {
            for (const auto& s : doc.at("sites")) {
                spec.sites.push_back({s.at("vertex").get<std::string>(), s.at("face_hint").get<std::string>(),
                                      s.value("start_half", s.at("face_hint").get<std::string>())});
            }
        }
        if (doc.contains("genus") && !doc.at("genus").is_null()) spec.genus = doc.at("genus").get<int>();
        if (doc.contains("boundary"))
            spec.boundary = doc.at("boundary").get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception& e) {
        parse_fail(std::string("invalid graph field: ") + e.what());
    }
    return make_graph(std::move(spec));
}

std::string serialize_graph(const RibbonGraph& graph) {
    const GraphSpec& spec = graph.spec();
    json doc;
    doc["name"] = spec.name;
    doc["vertices"] = json::array();
    for (const auto& v : spec.vertices) doc["vertices"].push_back({{"id", v.id}, {"rotation", v.rotation}});
    doc["edges"] = json::array();
    for (const auto& e : spec.edges)
        doc["edges"].push_back({{"id", e.id}, {"source_half", e.source_half}, {"target_half", e.target_half}});
    doc["sites"] = json::array();
    for (const auto& s : spec.sites)
        doc["sites"].push_back({{"vertex", s.vertex}, {"face_hint", s.face_hint}, {"start_half", s.start_half}});
    if (spec.genus) doc["genus"] = *spec.genus;
    if (!spec.boundary.empty()) doc["boundary"] = spec.boundary;
    return doc.dump(2);
}

namespace {

/// Small helper for the builtin fixtures: edges are named, and their halves are "<id>.s" / "<id>.t".
struct Builder {
    GraphSpec spec;

    explicit Builder(std::string name) { spec.name = std::move(name); }
    void edge(const std::string& id) { spec.edges.push_back({id, id + ".s", id + ".t"}); }
    void vertex(const std::string& id, std::vector<std::string> rotation) {
        spec.vertices.push_back({id, std::move(rotation)});
    }
    void site(const std::string& v, const std::string& face_hint, const std::string& start) {
        spec.sites.push_back({v, face_hint, start});
    }
};

GraphHandle torus(int m, int n) {
    if (m < 1 || n < 1) throw Error(ErrorKind::UnknownFixture, "torus dimensions must be positive");
    Builder b("torus-" + std::to_string(m) + "x" + std::to_string(n));
    auto vid = [&](int i, int j) { return "v" + std::to_string(i) + "_" + std::to_string(j); };
    auto hid = [&](int i, int j) { return "x" + std::to_string(i) + "_" + std::to_string(j); };
    auto uid = [&](int i, int j) { return "y" + std::to_string(i) + "_" + std::to_string(j); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            b.edge(hid(i, j));
            b.edge(uid(i, j));
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            const int il = (i + m - 1) % m;
            const int jd = (j + n - 1) % n;
            b.vertex(vid(i, j), {uid(i, j) + ".s", hid(i, j) + ".s", uid(i, jd) + ".t", hid(il, j) + ".t"});
        }
    b.spec.genus = 1;
    return make_graph(std::move(b.spec));
}

GraphHandle build_fixture(const std::string& name) {
    if (name == "minimal") {
        Builder b("minimal");
        b.edge("e");
        b.vertex("v", {"e.t"});
        b.spec.boundary = {{"e.t"}};
        b.site("v", "e.t", "e.t");
        return make_graph(std::move(b.spec));
    }
    if (name == "loop") {
        Builder b("loop");
        b.edge("e");
        b.vertex("v", {"e.s", "e.t"});
        b.spec.genus = 0;
        return make_graph(std::move(b.spec));
    }
    if (name == "two_loop") {
        Builder b("two_loop");
        b.edge("e1");
        b.edge("e2");
        b.vertex("v", {"e1.t", "e2.s"});
        b.vertex("w", {"e2.t", "e1.s"});
        b.spec.genus = 0;
        b.site("v", "e1.t", "e1.t");
        return make_graph(std::move(b.spec));
    }
    if (name == "seven_edge") {
        Builder b("seven_edge");
        for (int e = 1; e <= 7; ++e) b.edge("e" + std::to_string(e));
        b.vertex("v", {"e7.t", "e6.s", "e5.s", "e4.t", "e2.s", "e1.t"});
        b.vertex("u1", {"e1.s", "e3.t", "e6.t", "e4.s"});
        b.vertex("u2", {"e3.s", "e2.t", "e7.s", "e5.t"});
        b.spec.genus = 1;
        b.site("v", "e1.t", "e7.t");
        return make_graph(std::move(b.spec));
    }
    if (name == "path3") {
        Builder b("path3");
        b.edge("e0");
        b.edge("e1");
        b.edge("e2");
        b.vertex("a", {"e0.s"});
        b.vertex("b", {"e0.t", "e1.s"});
        b.vertex("c", {"e1.t", "e2.s"});
        b.vertex("d", {"e2.t"});
        b.spec.genus = 0;
        return make_graph(std::move(b.spec));
    }
    if (name == "triangle") {
        Builder b("triangle");
        b.edge("e0");
        b.edge("e1");
        b.edge("e2");
        b.vertex("a", {"e0.s", "e2.t"});
        b.vertex("b", {"e1.s", "e0.t"});
        b.vertex("c", {"e2.s", "e1.t"});
        b.spec.genus = 0;
        return make_graph(std::move(b.spec));
    }
    static const std::regex dash(R"(torus-(\d+)x(\d+))");
    static const std::regex paren(R"(torus\((\d+),\s*(\d+)\))");
    std::smatch m;
    if (std::regex_match(name, m, dash) || std::regex_match(name, m, paren))
        return torus(std::stoi(m[1].str()), std::stoi(m[2].str()));
    throw Error(ErrorKind::UnknownFixture, "unknown graph fixture '" + name + "'");
}

}  // namespace

GraphHandle builtin_graph(const std::string& name) { return build_fixture(name); }

const std::vector<std::string>& builtin_graph_names() {
    static const std::vector<std::string> names{"minimal", "loop",     "two_loop",  "seven_edge",
                                                "path3",   "triangle", "torus-1x1", "torus-2x1"};
    return names;
}

Mat apply_on_edge(const Mat& m, int edge, int num_edges, int dim, const Mat& block) {
    const std::int64_t left = ipow(dim, edge);
    const std::int64_t right = ipow(dim, num_edges - edge - 1);
    if (block.rows() != left * dim * right)
        throw Error(ErrorKind::DimensionMismatch, "state length does not match the lattice");
    Mat out = Mat::Zero(block.rows(), block.cols());
    for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t base = l * dim * right;
        for (int j = 0; j < dim; ++j) {
            const auto src = block.middleRows(base + j * right, right);
            for (int i = 0; i < dim; ++i) {
                const Complex c = m(i, j);
                if (c != Complex(0.0)) out.middleRows(base + i * right, right) += c * src;
            }
        }
    }
    return out;
}

std::pair<GraphHandle, LatticeState> reverse_edge(const RibbonGraph& graph, int edge, const LatticeState& state) {
    if (edge < 0 || edge >= graph.num_edges()) throw Error(ErrorKind::ParseError, "edge index out of range");
    GraphSpec spec = graph.spec();
    std::swap(spec.edges[edge].source_half, spec.edges[edge].target_half);
    LatticeState out = state;
    out.graph = make_graph(std::move(spec));
    const Algebra& a = *state.algebra;
    out.coeffs = apply_on_edge(a.data().antipode, edge, graph.num_edges(), a.dim(), state.coeffs);
    return {out.graph, std::move(out)};
}

}  // namespace hopflat
