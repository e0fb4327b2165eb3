#include "hopflat/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hopflat/error.hpp"
#include "hopflat/groups.hpp"

namespace hopflat {

namespace {

using json = nlohmann::json;

Complex read_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "complex entry must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json write_complex(Complex c) { return json::array({c.real(), c.imag()}); }

void expect_size(const json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw Error(ErrorKind::ShapeMismatch, std::string("field '") + what + "' has the wrong extent");
}

Vec read_vector(const json& j, int n, const char* what) {
    expect_size(j, n, what);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = read_complex(j[i]);
    return v;
}

Mat read_matrix(const json& j, int n, const char* what) {
    expect_size(j, n, what);
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        expect_size(j[i], n, what);
        for (int k = 0; k < n; ++k) m(i, k) = read_complex(j[i][k]);
    }
    return m;
}

Tensor3 read_tensor(const json& j, int n, const char* what) {
    expect_size(j, n, what);
    Tensor3 t(n);
    for (int a = 0; a < n; ++a) {
        expect_size(j[a], n, what);
        for (int b = 0; b < n; ++b) {
            expect_size(j[a][b], n, what);
            for (int c = 0; c < n; ++c) t(a, b, c) = read_complex(j[a][b][c]);
        }
    }
    return t;
}

json write_vector(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(write_complex(v(i)));
    return out;
}

json write_matrix(const Mat& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(write_complex(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

json write_tensor(const Tensor3& t) {
    const int n = t.dim();
    json out = json::array();
    for (int a = 0; a < n; ++a) {
        json plane = json::array();
        for (int b = 0; b < n; ++b) {
            json row = json::array();
            for (int c = 0; c < n; ++c) row.push_back(write_complex(t(a, b, c)));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

HopfData parse_group_shortcut(const json& doc) {
    GroupTable g;
    const json& group = doc.at("group");
    g.cayley = group.at("cayley").get<std::vector<std::vector<int>>>();
    if (group.contains("labels")) g.labels = group.at("labels").get<std::vector<std::string>>();
    for (const auto& row : g.cayley)
        if (row.size() != g.cayley.size()) throw Error(ErrorKind::NotAGroup, "Cayley table is not square");
    if (g.labels.empty())
        for (std::size_t i = 0; i < g.cayley.size(); ++i) g.labels.push_back(std::to_string(i));
    g.inverse = inverse_table(g.cayley);
    validate_group(g);
    const std::string flavor = doc.value("flavor", std::string("group_algebra"));
    const std::string label = doc.value("label", std::string());
    if (flavor == "group_algebra") return group_algebra(g, label);
    if (flavor == "function_algebra") return function_algebra(g, label);
    throw Error(ErrorKind::ParseError, "unknown group flavor '" + flavor + "'");
}

}  // namespace

HopfData parse_algebra(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed algebra JSON: ") + e.what());
    }
    try {
        if (doc.contains("group")) return parse_group_shortcut(doc);
        HopfData d;
        d.dim = doc.at("dim").get<int>();
        if (d.dim <= 0) throw Error(ErrorKind::ShapeMismatch, "dimension must be positive");
        d.mult = read_tensor(doc.at("mult"), d.dim, "mult");
        d.comult = read_tensor(doc.at("comult"), d.dim, "comult");
        d.unit = read_vector(doc.at("unit"), d.dim, "unit");
        d.counit = read_vector(doc.at("counit"), d.dim, "counit");
        d.antipode = read_matrix(doc.at("antipode"), d.dim, "antipode");
        if (doc.contains("star") && !doc.at("star").is_null()) d.star = read_matrix(doc.at("star"), d.dim, "star");
        d.label = doc.value("label", std::string("algebra"));
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid algebra field: ") + e.what());
    }
}

std::string serialize_algebra(const HopfData& data) {
    json doc;
    doc["dim"] = data.dim;
    doc["mult"] = write_tensor(data.mult);
    doc["comult"] = write_tensor(data.comult);
    doc["unit"] = write_vector(data.unit);
    doc["counit"] = write_vector(data.counit);
    doc["antipode"] = write_matrix(data.antipode);
    if (data.star) doc["star"] = write_matrix(*data.star);
    doc["label"] = data.label;
    return doc.dump();
}

AlgebraHandle load_algebra(const std::string& name_or_path) {
    const auto& names = builtin_algebra_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_algebra(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw Error(ErrorKind::ParseError, "no builtin algebra or readable file named '" + name_or_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return new_algebra(parse_algebra(buffer.str()));
}

}  // namespace hopflat
