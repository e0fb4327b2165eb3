#include "hopflat/groups.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "hopflat/error.hpp"

namespace hopflat {

namespace {

[[noreturn]] void not_a_group(const std::string& what) { throw Error(ErrorKind::NotAGroup, what); }

}  // namespace

std::vector<int> inverse_table(const std::vector<std::vector<int>>& cayley) {
    const int n = static_cast<int>(cayley.size());
    std::vector<int> inv(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cayley[i][j] == 0 && cayley[j][i] == 0) {
                inv[i] = j;
                break;
            }
    for (int i = 0; i < n; ++i)
        if (inv[i] < 0) not_a_group("element " + std::to_string(i) + " has no inverse");
    return inv;
}

void validate_group(const GroupTable& g) {
    const int n = g.order();
    if (n == 0) not_a_group("empty table");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(g.cayley[i].size()) != n) not_a_group("row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j)
            if (g.cayley[i][j] < 0 || g.cayley[i][j] >= n)
                not_a_group("closure fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    for (int i = 0; i < n; ++i)
        if (g.cayley[0][i] != i || g.cayley[i][0] != i) not_a_group("index 0 is not an identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.cayley[g.cayley[a][b]][c] != g.cayley[a][g.cayley[b][c]])
                    not_a_group("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
    if (static_cast<int>(g.inverse.size()) != n) not_a_group("inverse table has wrong length");
    for (int i = 0; i < n; ++i) {
        const int j = g.inverse[i];
        if (j < 0 || j >= n || g.cayley[i][j] != 0 || g.cayley[j][i] != 0)
            not_a_group("inverse of " + std::to_string(i) + " is wrong");
    }
}

GroupTable cyclic_group(int order) {
    GroupTable g;
    g.cayley.assign(order, std::vector<int>(order));
    g.inverse.resize(order);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) g.cayley[a][b] = (a + b) % order;
        g.inverse[a] = (order - a) % order;
        g.labels.push_back(a == 0 ? "e" : "g" + (a == 1 ? std::string() : "^" + std::to_string(a)));
    }
    return g;
}

GroupTable symmetric_group_s3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::array<int, 3>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
    GroupTable g;
    const int n = static_cast<int>(perms.size());
    g.cayley.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            g.cayley[a][b] = index.at(c);
        }
    g.inverse = inverse_table(g.cayley);
    for (const auto& q : perms) g.labels.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
    return g;
}

HopfData group_algebra(const GroupTable& g, std::string label) {
    validate_group(g);
    const int n = g.order();
    HopfData d;
    d.dim = n;
    d.mult = Tensor3(n);
    d.comult = Tensor3(n);
    d.unit = basis_vector(n, 0);
    d.counit = Vec::Ones(n);
    d.antipode = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) d.mult(a, b, g.cayley[a][b]) = 1.0;
        d.comult(a, a, a) = 1.0;
        d.antipode(g.inverse[a], a) = 1.0;
    }
    d.star = d.antipode;
    d.label = label.empty() ? "group-algebra" : std::move(label);
    return d;
}

HopfData function_algebra(const GroupTable& g, std::string label) {
    validate_group(g);
    const int n = g.order();
    HopfData d;
    d.dim = n;
    d.mult = Tensor3(n);
    d.comult = Tensor3(n);
    d.unit = Vec::Ones(n);
    d.counit = basis_vector(n, 0);
    d.antipode = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        d.mult(x, x, x) = 1.0;
        for (int y = 0; y < n; ++y) d.comult(g.cayley[x][y], x, y) = 1.0;
        d.antipode(g.inverse[x], x) = 1.0;
    }
    d.star = Mat::Identity(n, n);
    d.label = label.empty() ? "function-algebra" : std::move(label);
    return d;
}

const std::vector<std::string>& builtin_algebra_names() {
    static const std::vector<std::string> names{"z2-group", "z3-group", "z4-group", "s3-group", "z2-fun", "s3-fun"};
    return names;
}

AlgebraHandle builtin_algebra(const std::string& name) {
    static std::mutex mutex;
    static std::map<std::string, AlgebraHandle> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    GroupTable group;
    if (name.starts_with("z2-")) group = cyclic_group(2);
    else if (name.starts_with("z3-")) group = cyclic_group(3);
    else if (name.starts_with("z4-")) group = cyclic_group(4);
    else if (name.starts_with("s3-")) group = symmetric_group_s3();
    else throw Error(ErrorKind::UnknownFixture, "unknown algebra '" + name + "'");
    HopfData data;
    if (name.ends_with("-group")) data = group_algebra(group, name);
    else if (name.ends_with("-fun") && (name.starts_with("z2") || name.starts_with("s3"))) data = function_algebra(group, name);
    else throw Error(ErrorKind::UnknownFixture, "unknown algebra '" + name + "'");
    auto handle = new_algebra(std::move(data));
    cache.emplace(name, handle);
    return handle;
}

}  // namespace hopflat
