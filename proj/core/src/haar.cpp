#include "hopflat/haar.hpp"

#include <algorithm>

#include "hopflat/error.hpp"

namespace hopflat {

Vec solve_haar(const Algebra& A) {
    const int n = A.dim();
    const Vec& eps = A.data().counit;
    Mat stacked(2 * n * n, n);
    const Mat id = Mat::Identity(n, n);
    for (int h = 0; h < n; ++h) {
        stacked.block(2 * h * n, 0, n, n) = A.left_regular(h) - eps(h) * id;
        stacked.block((2 * h + 1) * n, 0, n, n) = A.right_regular(h) - eps(h) * id;
    }
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    std::vector<int> null_columns;
    for (int i = 0; i < n; ++i)
        if (s(i) <= kNullSpaceTol * scale) null_columns.push_back(i);
    if (null_columns.empty())
        throw Error(ErrorKind::NoHaarIntegral, "invariance system has trivial null space for '" + A.label() + "'");
    if (null_columns.size() > 1)
        throw Error(ErrorKind::NonUniqueHaar, std::to_string(null_columns.size()) + "-dimensional solution space for '" +
                                                  A.label() + "'");
    const Vec l = svd.matrixV().col(null_columns.front());
    const Complex norm = A.counit(l);
    if (std::abs(norm) <= kNullSpaceTol)
        throw Error(ErrorKind::NoHaarIntegral, "counit vanishes on the invariant line of '" + A.label() + "'");
    Vec out = l / norm;
    for (Complex& c : out)  // snap rounding noise of exactly representable values
        if (std::abs(c) < 1e-15) c = 0.0;
    return out;
}

Element haar_integral(const AlgebraHandle& algebra) { return Element{algebra, algebra->haar()}; }

namespace {

double cyclic_residual(const Algebra& A, const Vec& l, int applications) {
    const int n = A.dim();
    const int legs = applications + 1;
    const Vec t = iterated_coproduct(A, l, applications);
    const std::int64_t stride = ipow(n, legs - 1);
    double r = 0.0;
    for (std::int64_t idx = 0; idx < t.size(); ++idx) {
        // rotate legs left by one: (i1,...,ik) -> (i2,...,ik,i1)
        const std::int64_t first = idx / stride;
        const std::int64_t rotated = (idx % stride) * n + first;
        r = std::max(r, std::abs(t(idx) - t(rotated)));
    }
    return r;
}

}  // namespace

AxiomReport verify_haar(const Algebra& A, const Algebra& D) {
    const int n = A.dim();
    const Vec& l = A.haar();
    const Vec& eps = A.data().counit;
    const Vec one = A.unit();
    AxiomReport report;

    double inv = 0.0;
    for (int h = 0; h < n; ++h) {
        const Vec eh = basis_vector(n, h);
        inv = std::max(inv, (A.multiply(eh, l) - eps(h) * l).cwiseAbs().maxCoeff());
        inv = std::max(inv, (A.multiply(l, eh) - eps(h) * l).cwiseAbs().maxCoeff());
    }
    report.push_back({"haar-invariance", inv});
    report.push_back({"haar-normalised", std::abs(A.counit(l) - 1.0)});
    report.push_back({"haar-idempotent", (A.multiply(l, l) - l).cwiseAbs().maxCoeff()});
    if (A.has_star()) report.push_back({"haar-star", (A.star(l) - l).cwiseAbs().maxCoeff()});
    report.push_back({"haar-antipode", (A.antipode(l) - l).cwiseAbs().maxCoeff()});
    double cyc = 0.0;
    for (int k = 1; k <= 3; ++k) cyc = std::max(cyc, cyclic_residual(A, l, k));
    report.push_back({"haar-cyclic", cyc});

    // separability idempotent e = l1 (x) S l2
    const Mat dl = A.comultiply(l);
    const Mat& S = A.data().antipode;
    const Mat e = dl * S.transpose();  // e(j,k) = sum_m dl(j,m) S(k,m)
    Vec mu = Vec::Zero(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (e(j, k) != Complex(0.0)) mu += e(j, k) * A.multiply(basis_vector(n, j), basis_vector(n, k));
    double sep = (mu - one).cwiseAbs().maxCoeff();
    Mat ee = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (e(a, b) == Complex(0.0)) continue;
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (e(c, d) == Complex(0.0)) continue;
                    const Complex w = e(a, b) * e(c, d);
                    for (const Term& x : A.product_terms(a, c))
                        for (const Term& y : A.product_terms(d, b))  // opposite product on the second factor
                            ee(x.index, y.index) += w * x.coeff * y.coeff;
                }
        }
    sep = std::max(sep, (ee - e).cwiseAbs().maxCoeff());
    for (int h = 0; h < n; ++h) {
        const Mat Lh = A.left_regular(h), Rh = A.right_regular(h);
        Mat LSh = Mat::Zero(n, n), RSh = Mat::Zero(n, n);
        for (int q = 0; q < n; ++q) {
            if (S(q, h) == Complex(0.0)) continue;
            LSh += S(q, h) * A.left_regular(q);
            RSh += S(q, h) * A.right_regular(q);
        }
        // (h (x) 1) dl = (1 (x) Sh) dl and dl (h (x) 1) = dl (1 (x) Sh)
        sep = std::max(sep, (Lh * dl - dl * LSh.transpose()).cwiseAbs().maxCoeff());
        sep = std::max(sep, (Rh * dl - dl * RSh.transpose()).cwiseAbs().maxCoeff());
    }
    report.push_back({"haar-separability", sep});

    // <alpha_1, l> alpha_2 = <alpha_2, l> alpha_1 = <l, alpha> 1 in the dual algebra
    double pairing = 0.0;
    const Vec dual_one = D.unit();
    for (int a = 0; a < D.dim(); ++a) {
        const Mat da = D.comultiply(basis_vector(D.dim(), a));
        const Vec left = da.transpose() * l;
        const Vec right = da * l;
        const Vec target = l(a) * dual_one;
        pairing = std::max({pairing, (left - target).cwiseAbs().maxCoeff(), (right - target).cwiseAbs().maxCoeff()});
    }
    report.push_back({"haar-pairing", pairing});
    return report;
}

}  // namespace hopflat
