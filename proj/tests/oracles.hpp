#pragma once

// Independent reference computations for the unit tests. Everything here is built from
// explicit group tables or from the raw structure tensors, never from the library's
// derived operators.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hopflat/algebra.hpp"
#include "hopflat/graph.hpp"
#include "hopflat/types.hpp"

namespace oracle {

using hopflat::Complex;
using hopflat::HopfData;
using hopflat::Mat;
using hopflat::Vec;

struct Group {
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    int order() const { return static_cast<int>(mul.size()); }
};

inline Group cyclic(int n) {
    Group g;
    g.mul.assign(n, std::vector<int>(n));
    g.inv.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
        g.inv[i] = (n - i) % n;
    }
    return g;
}

/// Permutations of three points in lexicographic order, composed right to left.
inline Group s3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index = [&](const std::array<int, 3>& q) {
        return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    Group g;
    g.mul.assign(6, std::vector<int>(6));
    g.inv.resize(6);
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            g.mul[a][b] = index(c);
        }
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[perms[a][i]] = i;
        g.inv[a] = index(r);
    }
    return g;
}

/// Matrix sending basis vector x to basis vector f(x).
inline Mat basis_map(int n, const std::function<int(int)>& f) {
    Mat m = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x) m(f(x), x) = 1.0;
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vec random_vec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
    return v / v.norm();
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Product of two elements straight from the multiplication tensor.
inline Vec mul(const HopfData& d, const Vec& x, const Vec& y) {
    Vec out = Vec::Zero(d.dim);
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            for (int k = 0; k < d.dim; ++k) out(k) += x(i) * y(j) * d.mult(i, j, k);
    return out;
}

/// Iterated coproduct with n+1 legs as a flat row-major vector, leg 0 most significant.
inline Vec coproduct_power(const HopfData& d, const Vec& x, int n) {
    Vec cur = x;
    int legs = 1;
    for (int step = 0; step < n; ++step) {
        const std::int64_t head = hopflat::ipow(d.dim, legs - 1);
        Vec next = Vec::Zero(head * d.dim * d.dim);
        for (std::int64_t h = 0; h < head; ++h)
            for (int i = 0; i < d.dim; ++i) {
                const Complex c = cur(h * d.dim + i);
                if (c == Complex(0.0)) continue;
                for (int j = 0; j < d.dim; ++j)
                    for (int k = 0; k < d.dim; ++k) next((h * d.dim + j) * d.dim + k) += c * d.comult(i, j, k);
            }
        cur = next;
        ++legs;
    }
    return cur;
}

/// Coefficient of dual basis triple (p, q, r) in the double coproduct of the dual basis
/// element k, read off the multiplication tensor of H.
inline Complex dual_coproduct2(const HopfData& h, int k, int p, int q, int r) {
    Complex s = 0.0;
    for (int m = 0; m < h.dim; ++m) s += h.mult(p, q, m) * h.mult(m, r, k);
    return s;
}

/// Single-edge operators on the dual basis of H, written out from their defining formulas.
inline Mat t_plus(const HopfData& h, const Vec& a) {
    const Vec sa = h.antipode * a;
    Mat m = Mat::Zero(h.dim, h.dim);
    for (int k = 0; k < h.dim; ++k)
        for (int p = 0; p < h.dim; ++p)
            for (int q = 0; q < h.dim; ++q) m(q, k) += h.mult(p, q, k) * sa(p);
    return m;
}

inline Mat t_minus(const HopfData& h, const Vec& a) {
    Mat m = Mat::Zero(h.dim, h.dim);
    for (int k = 0; k < h.dim; ++k)
        for (int p = 0; p < h.dim; ++p)
            for (int q = 0; q < h.dim; ++q) m(p, k) += h.mult(p, q, k) * a(q);
    return m;
}

/// Pairing of x (in H, via its coproduct) against alpha * beta in H*.
inline Mat coproduct_matrix(const HopfData& h, const Vec& x) {
    Mat c = Mat::Zero(h.dim, h.dim);
    for (int j = 0; j < h.dim; ++j)
        for (int s = 0; s < h.dim; ++s)
            for (int t = 0; t < h.dim; ++t) c(s, t) += x(j) * h.comult(j, s, t);
    return c;
}

inline Mat l_plus(const HopfData& h, const Vec& x) {
    const Mat c = coproduct_matrix(h, x);
    Mat m = Mat::Zero(h.dim, h.dim);
    for (int k = 0; k < h.dim; ++k)
        for (int p = 0; p < h.dim; ++p)
            for (int q = 0; q < h.dim; ++q)
                for (int r = 0; r < h.dim; ++r) {
                    const Complex w = dual_coproduct2(h, k, p, q, r);
                    if (w == Complex(0.0)) continue;
                    Complex pair = 0.0;
                    for (int s = 0; s < h.dim; ++s) pair += c(s, r) * h.antipode(p, s);
                    m(q, k) += w * pair;
                }
    return m;
}

inline Mat l_minus(const HopfData& h, const Vec& x) {
    const Mat c = coproduct_matrix(h, x);
    Mat m = Mat::Zero(h.dim, h.dim);
    for (int k = 0; k < h.dim; ++k)
        for (int p = 0; p < h.dim; ++p)
            for (int q = 0; q < h.dim; ++q)
                for (int r = 0; r < h.dim; ++r) {
                    const Complex w = dual_coproduct2(h, k, p, q, r);
                    if (w == Complex(0.0)) continue;
                    Complex pair = 0.0;
                    for (int t = 0; t < h.dim; ++t) pair += c(r, t) * h.antipode(p, t);
                    m(q, k) += w * pair;
                }
    return m;
}

/// Left action of a (x) h on H*: <S h1 S a, phi1> <h2, phi3> phi2, for an M(H) element
/// with coefficient index a * dim + h.
inline Mat mixed_plus(const HopfData& h, const Vec& x) {
    const int n = h.dim;
    Mat m = Mat::Zero(n, n);
    for (int ai = 0; ai < n; ++ai)
        for (int hi = 0; hi < n; ++hi) {
            const Complex coeff = x(ai * n + hi);
            if (coeff == Complex(0.0)) continue;
            const Vec sa = h.antipode.col(ai);
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    const Complex c = h.comult(hi, s, t);
                    if (c == Complex(0.0)) continue;
                    const Vec left = mul(h, h.antipode.col(s), sa);
                    for (int k = 0; k < n; ++k)
                        for (int p = 0; p < n; ++p)
                            for (int q = 0; q < n; ++q) {
                                const Complex w = dual_coproduct2(h, k, p, q, t);
                                if (w != Complex(0.0)) m(q, k) += coeff * c * w * left(p);
                            }
                }
        }
    return m;
}

/// Minus legs conjugate by the antipode of H*, which is the transpose of S.
inline Mat conjugate_by_dual_antipode(const HopfData& h, const Mat& m) {
    const Mat s = h.antipode.transpose();
    return s * m * s;
}

/// Brute-force Hopf tensor trace: every edge label is expanded over the basis of its split
/// (S (x) id) coproduct, every face multiplies its sides as x_m ... x_1 from its start and pairs
/// with its label, and boundary components are treated as extra faces.
struct TraceInput {
    const hopflat::RibbonGraph* graph;
    std::vector<Vec> edge_labels;
    std::vector<Vec> face_labels;
    std::vector<int> face_starts;
    std::vector<Vec> boundary_labels;
};

inline Complex brute_force_trace(const HopfData& dual, const TraceInput& in) {
    const auto& g = *in.graph;
    const int n = dual.dim;
    const int ne = g.num_edges();
    struct Term {
        int p, q;
        Complex c;
    };
    std::vector<std::vector<Term>> terms(ne);
    for (int e = 0; e < ne; ++e)
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    const Complex c = in.edge_labels[e](i) * dual.comult(i, p, q);
                    if (c != Complex(0.0)) terms[e].push_back({p, q, c});
                }

    std::vector<std::pair<std::vector<int>, Vec>> loops;
    for (int f = 0; f < g.num_faces(); ++f) {
        std::vector<int> sides;
        for (int he : g.face_walk_from(in.face_starts[f]))
            if (!g.is_boundary(he)) sides.push_back(he);
        if (!sides.empty()) loops.emplace_back(sides, in.face_labels[f]);
    }
    for (std::size_t b = 0; b < g.boundary_components().size(); ++b)
        loops.emplace_back(g.boundary_components()[b], in.boundary_labels[b]);

    std::vector<int> choice(ne, 0);
    Complex total = 0.0;
    std::function<void(int, Complex)> rec = [&](int e, Complex weight) {
        if (e == ne) {
            Complex value = weight;
            for (const auto& [sides, label] : loops) {
                Vec prod = dual.unit;
                for (int he : sides) {
                    const Term& t = terms[hopflat::edge_of(he)][choice[hopflat::edge_of(he)]];
                    const Vec side = hopflat::is_target(he) ? Vec(dual.antipode.col(t.p)) : hopflat::basis_vector(n, t.q);
                    prod = mul(dual, side, prod);
                }
                value *= prod.cwiseProduct(label).sum();
            }
            total += value;
            return;
        }
        for (std::size_t k = 0; k < terms[e].size(); ++k) {
            choice[e] = static_cast<int>(k);
            rec(e + 1, weight * terms[e][k].c);
        }
    };
    rec(0, 1.0);
    return total;
}

}  // namespace oracle
