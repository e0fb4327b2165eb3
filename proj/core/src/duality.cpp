#include "hopflat/duality.hpp"

#include <algorithm>

#include "hopflat/error.hpp"

namespace hopflat {

HopfData dual_data(const Algebra& A) {
    const int n = A.dim();
    const HopfData& h = A.data();
    HopfData d;
    d.dim = n;
    d.mult = Tensor3(n);
    d.comult = Tensor3(n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                d.mult(a, b, i) = h.comult(i, a, b);
                d.comult(a, i, b) = h.mult(i, b, a);
            }
    d.unit = h.counit;
    d.counit = h.unit;
    d.antipode = h.antipode.transpose();
    if (h.star) {
        // column a of the dual star holds the coefficients of (f_a)*, evaluated on each e_i
        Mat st(n, n);
        for (int i = 0; i < n; ++i) {
            const Vec image = (*h.star) * h.antipode.col(i).conjugate();  // (S e_i)*
            for (int a = 0; a < n; ++a) st(i, a) = std::conj(image(a));
        }
        d.star = st;
    }
    d.label = "dual(" + h.label + ")";
    return d;
}

DualResult dual(const AlgebraHandle& algebra) {
    auto handle = Algebra::create(dual_data(*algebra));
    DualPairing pairing{handle, algebra, Mat::Identity(algebra->dim(), algebra->dim())};
    const AxiomReport report = verify_pairing(pairing);
    for (const auto& item : report)
        if (item.residual > kStructureTol)
            throw Error(ErrorKind::AxiomViolation, "dual pairing", item.name, item.residual);
    return DualResult{std::move(handle), std::move(pairing)};
}

AlgebraHandle op_cop(const AlgebraHandle& algebra, Opposite which) {
    const int n = algebra->dim();
    const HopfData& h = algebra->data();
    Eigen::FullPivLU<Mat> lu(h.antipode);
    if (!lu.isInvertible()) throw Error(ErrorKind::AxiomViolation, "antipode is singular", "antipode");
    HopfData d = h;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (which == Opposite::Op) d.mult(i, j, k) = h.mult(j, i, k);
                else d.comult(i, j, k) = h.comult(i, k, j);
            }
    d.antipode = lu.inverse();
    d.label = h.label + (which == Opposite::Op ? "^op" : "^cop");
    return Algebra::create(std::move(d));
}

namespace {

void require_pairing_algebras(const DualPairing& p, const AlgebraHandle& left, const AlgebraHandle& right) {
    if (left != p.left || right != p.right)
        throw Error(ErrorKind::AlgebraMismatch, "elements do not belong to the paired algebras");
}

}  // namespace

Complex pair(const DualPairing& p, const Element& phi, const Element& h) {
    require_pairing_algebras(p, phi.algebra, h.algebra);
    return (phi.coeffs.transpose() * p.matrix * h.coeffs)(0, 0);
}

Complex pair(const DualPairing& p, const TensorElement& phi, const TensorElement& h) {
    if (phi.factors.size() != h.factors.size())
        throw Error(ErrorKind::ShapeMismatch, "tensor pairing needs equal numbers of factors");
    for (std::size_t f = 0; f < phi.factors.size(); ++f) require_pairing_algebras(p, phi.factors[f], h.factors[f]);
    const int n = static_cast<int>(p.matrix.rows());
    const int legs = static_cast<int>(phi.factors.size());
    // apply P to every leg of h, then take the plain dot product
    Vec cur = h.coeffs;
    for (int leg = 0; leg < legs; ++leg) {
        const std::int64_t inner = ipow(n, legs - leg - 1);
        const std::int64_t outer = cur.size() / (inner * n);
        Vec next = Vec::Zero(cur.size());
        for (std::int64_t o = 0; o < outer; ++o)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const Complex w = p.matrix(a, b);
                    if (w == Complex(0.0)) continue;
                    for (std::int64_t i = 0; i < inner; ++i)
                        next((o * n + a) * inner + i) += w * cur((o * n + b) * inner + i);
                }
        cur = std::move(next);
    }
    return (phi.coeffs.transpose() * cur)(0, 0);
}

AxiomReport verify_pairing(const DualPairing& p) {
    const Algebra& A = *p.left;
    const Algebra& H = *p.right;
    const Mat& P = p.matrix;
    const int n = H.dim();
    AxiomReport report;
    if (A.dim() != n || P.rows() != n || P.cols() != n) {
        report.push_back({"pairing-shape", 1.0});
        return report;
    }
    Eigen::JacobiSVD<Mat> svd(P);
    report.push_back({"pairing-nondegenerate", svd.singularValues()(n - 1) > 1e-10 ? 0.0 : 1.0});

    double coprod = 0.0, prod = 0.0;
    for (int a = 0; a < n; ++a)
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                // <Delta a, g (x) h> = <a, g h>
                Complex lhs = 0.0, rhs = 0.0;
                for (const PairTerm& t : A.coproduct_terms(a)) lhs += t.coeff * P(t.left, g) * P(t.right, h);
                for (const Term& t : H.product_terms(g, h)) rhs += t.coeff * P(a, t.index);
                coprod = std::max(coprod, std::abs(lhs - rhs));
                // <a_g (x) a_h, Delta e_a> = <a_g a_h, e_a> with roles: here g,h index the left algebra
                Complex l2 = 0.0, r2 = 0.0;
                for (const PairTerm& t : H.coproduct_terms(a)) l2 += t.coeff * P(g, t.left) * P(h, t.right);
                for (const Term& t : A.product_terms(g, h)) r2 += t.coeff * P(t.index, a);
                prod = std::max(prod, std::abs(l2 - r2));
            }
    report.push_back({"pairing-coproduct", coprod});
    report.push_back({"pairing-product", prod});

    const Vec left_unit_vs = P.transpose() * A.unit() - H.data().counit;
    const Vec right_unit_vs = P * H.unit() - A.data().counit;
    report.push_back({"pairing-unit", std::max(left_unit_vs.cwiseAbs().maxCoeff(), right_unit_vs.cwiseAbs().maxCoeff())});

    report.push_back({"pairing-antipode",
                      (A.data().antipode.transpose() * P - P * H.data().antipode).cwiseAbs().maxCoeff()});
    if (A.has_star() && H.has_star()) {
        double st = 0.0;
        for (int a = 0; a < n; ++a)
            for (int h = 0; h < n; ++h) {
                const Complex lhs = (A.star(basis_vector(n, a)).transpose() * P.col(h))(0, 0);
                const Vec sh_star = H.star(H.data().antipode.col(h));
                const Complex rhs = std::conj((P.row(a) * sh_star)(0, 0));
                st = std::max(st, std::abs(lhs - rhs));
            }
        report.push_back({"pairing-star", st});
    }
    return report;
}

Mat gram_matrix(const Algebra& H, const Algebra& D) {
    if (!D.has_star()) throw Error(ErrorKind::StarUndefined, "dual algebra '" + D.label() + "' has no star");
    const int n = D.dim();
    const Vec& l = H.haar();
    Mat G(n, n);
    for (int i = 0; i < n; ++i) {
        const Vec si = D.star(basis_vector(n, i));
        for (int j = 0; j < n; ++j) G(i, j) = (l.transpose() * D.multiply(si, basis_vector(n, j)))(0, 0);
    }
    const Mat herm = 0.5 * (G + G.adjoint());
    if ((G - herm).cwiseAbs().maxCoeff() > kOperatorTol)
        throw Error(ErrorKind::NonPositive, "Gram matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
    if (eig.eigenvalues().minCoeff() <= 1e-10)
        throw Error(ErrorKind::NonPositive, "Gram matrix has eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()));
    return G;
}

Complex inner_product(const Algebra& H, const Algebra& D, const Vec& phi, const Vec& psi) {
    if (!D.has_star()) throw Error(ErrorKind::StarUndefined, "dual algebra '" + D.label() + "' has no star");
    return (H.haar().transpose() * D.multiply(D.star(phi), psi))(0, 0);
}

}  // namespace hopflat
