#include "hopflat/algebra.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "hopflat/error.hpp"
#include "hopflat/haar.hpp"

namespace hopflat {

double max_residual(const AxiomReport& report) {
    double r = 0.0;
    for (const auto& item : report) r = std::max(r, item.residual);
    return r;
}

namespace {

void check_shapes(const HopfData& d) {
    const int n = d.dim;
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ShapeMismatch, what); };
    if (n <= 0) fail("dimension must be positive");
    if (d.mult.dim() != n) fail("mult tensor extent differs from dim");
    if (d.comult.dim() != n) fail("comult tensor extent differs from dim");
    if (d.unit.size() != n) fail("unit length differs from dim");
    if (d.counit.size() != n) fail("counit length differs from dim");
    if (d.antipode.rows() != n || d.antipode.cols() != n) fail("antipode is not dim x dim");
    if (d.star && (d.star->rows() != n || d.star->cols() != n)) fail("star is not dim x dim");
}

std::vector<std::pair<int, Complex>> nonzeros(const Vec& x) {
    std::vector<std::pair<int, Complex>> out;
    for (int i = 0; i < x.size(); ++i)
        if (x(i) != Complex(0.0)) out.emplace_back(i, x(i));
    return out;
}

}  // namespace

Algebra::Algebra(HopfData data) : data_(std::move(data)) {
    const int n = data_.dim;
    products_.resize(static_cast<std::size_t>(n) * n);
    coproducts_.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (const Complex c = data_.mult(i, j, k); c != Complex(0.0))
                    products_[static_cast<std::size_t>(i) * n + j].push_back({k, c});
                if (const Complex c = data_.comult(i, j, k); c != Complex(0.0))
                    coproducts_[i].push_back({j, k, c});
            }
    Eigen::FullPivLU<Mat> lu(data_.antipode);
    antipode_inverse_ = lu.isInvertible() ? Mat(lu.inverse()) : Mat::Zero(n, n);
}

AlgebraHandle Algebra::create_unverified(HopfData data) {
    check_shapes(data);
    return AlgebraHandle(new Algebra(std::move(data)));
}

AlgebraHandle Algebra::create(HopfData data) {
    auto handle = create_unverified(std::move(data));
    const AxiomReport report = verify_hopf(*handle);
    const AxiomResidual* worst = nullptr;
    for (const auto& item : report)
        if (item.residual > kStructureTol && (!worst || item.residual > worst->residual))
            worst = &item;
    if (worst)
        throw Error(ErrorKind::AxiomViolation, "algebra '" + handle->label() + "'", worst->name,
                    worst->residual);
    return handle;
}

AlgebraHandle new_algebra(HopfData data) { return Algebra::create(std::move(data)); }

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
    Vec out = Vec::Zero(dim());
    const auto xs = nonzeros(x);
    const auto ys = nonzeros(y);
    for (const auto& [i, a] : xs)
        for (const auto& [j, b] : ys)
            for (const Term& t : product_terms(i, j)) out(t.index) += a * b * t.coeff;
    return out;
}

Mat Algebra::comultiply(const Vec& x) const {
    Mat out = Mat::Zero(dim(), dim());
    for (const auto& [i, a] : nonzeros(x))
        for (const PairTerm& t : coproduct_terms(i)) out(t.left, t.right) += a * t.coeff;
    return out;
}

Vec Algebra::star(const Vec& x) const {
    if (!data_.star) throw Error(ErrorKind::StarUndefined, "algebra '" + label() + "'");
    return *data_.star * x.conjugate();
}

Mat Algebra::left_regular(int i) const {
    Mat m = Mat::Zero(dim(), dim());
    for (int j = 0; j < dim(); ++j)
        for (const Term& t : product_terms(i, j)) m(t.index, j) += t.coeff;
    return m;
}

Mat Algebra::right_regular(int i) const {
    Mat m = Mat::Zero(dim(), dim());
    for (int j = 0; j < dim(); ++j)
        for (const Term& t : product_terms(j, i)) m(t.index, j) += t.coeff;
    return m;
}

const Vec& Algebra::haar() const {
    std::call_once(haar_once_, [this] { haar_ = solve_haar(*this); });
    return haar_;
}

std::string Algebra::structure_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&h](double v) {
        v += 0.0;  // fold negative zero
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof(double));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ULL;
        }
    };
    auto feed_c = [&](Complex c) {
        feed(c.real());
        feed(c.imag());
    };
    feed(static_cast<double>(dim()));
    for (Complex c : data_.mult.values()) feed_c(c);
    for (Complex c : data_.comult.values()) feed_c(c);
    for (int i = 0; i < dim(); ++i) {
        feed_c(data_.unit(i));
        feed_c(data_.counit(i));
    }
    for (int j = 0; j < dim(); ++j)
        for (int i = 0; i < dim(); ++i) feed_c(data_.antipode(i, j));
    if (data_.star)
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < dim(); ++i) feed_c((*data_.star)(i, j));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

AxiomReport verify_hopf(const Algebra& A) {
    const int n = A.dim();
    const HopfData& d = A.data();
    AxiomReport report;
    const Vec one = A.unit();

    double assoc = 0.0, unit_law = 0.0;
    Vec lhs(n), rhs(n);
    for (int i = 0; i < n; ++i) {
        const Vec ei = basis_vector(n, i);
        unit_law = std::max(unit_law, (A.multiply(one, ei) - ei).cwiseAbs().maxCoeff());
        unit_law = std::max(unit_law, (A.multiply(ei, one) - ei).cwiseAbs().maxCoeff());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                lhs.setZero();
                rhs.setZero();
                for (const Term& t : A.product_terms(i, j))
                    for (const Term& u : A.product_terms(t.index, k)) lhs(u.index) += t.coeff * u.coeff;
                for (const Term& t : A.product_terms(j, k))
                    for (const Term& u : A.product_terms(i, t.index)) rhs(u.index) += t.coeff * u.coeff;
                assoc = std::max(assoc, (lhs - rhs).cwiseAbs().maxCoeff());
            }
    }
    report.push_back({"associativity", assoc});
    report.push_back({"unit", unit_law});

    double coassoc = 0.0, counit_law = 0.0;
    std::vector<Complex> left(static_cast<std::size_t>(n) * n * n), right(left.size());
    for (int i = 0; i < n; ++i) {
        std::fill(left.begin(), left.end(), Complex(0.0));
        std::fill(right.begin(), right.end(), Complex(0.0));
        Vec col = Vec::Zero(n), row = Vec::Zero(n);
        for (const PairTerm& t : A.coproduct_terms(i)) {
            for (const PairTerm& u : A.coproduct_terms(t.left))
                left[(static_cast<std::size_t>(u.left) * n + u.right) * n + t.right] += t.coeff * u.coeff;
            for (const PairTerm& u : A.coproduct_terms(t.right))
                right[(static_cast<std::size_t>(t.left) * n + u.left) * n + u.right] += t.coeff * u.coeff;
            col(t.right) += d.counit(t.left) * t.coeff;
            row(t.left) += d.counit(t.right) * t.coeff;
        }
        for (std::size_t q = 0; q < left.size(); ++q) coassoc = std::max(coassoc, std::abs(left[q] - right[q]));
        const Vec ei = basis_vector(n, i);
        counit_law = std::max({counit_law, (col - ei).cwiseAbs().maxCoeff(), (row - ei).cwiseAbs().maxCoeff()});
    }
    report.push_back({"coassociativity", coassoc});
    report.push_back({"counit", counit_law});

    double bialg = 0.0;
    Mat prod(n, n), coprod(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            coprod.setZero();
            for (const Term& t : A.product_terms(i, j))
                for (const PairTerm& u : A.coproduct_terms(t.index)) coprod(u.left, u.right) += t.coeff * u.coeff;
            prod.setZero();
            for (const PairTerm& a : A.coproduct_terms(i))
                for (const PairTerm& b : A.coproduct_terms(j))
                    for (const Term& x : A.product_terms(a.left, b.left))
                        for (const Term& y : A.product_terms(a.right, b.right))
                            prod(x.index, y.index) += a.coeff * b.coeff * x.coeff * y.coeff;
            bialg = std::max(bialg, (coprod - prod).cwiseAbs().maxCoeff());
            Complex eps_prod = 0.0;
            for (const Term& t : A.product_terms(i, j)) eps_prod += t.coeff * d.counit(t.index);
            bialg = std::max(bialg, std::abs(eps_prod - d.counit(i) * d.counit(j)));
        }
    bialg = std::max(bialg, (A.comultiply(one) - one * one.transpose()).cwiseAbs().maxCoeff());
    bialg = std::max(bialg, std::abs(A.counit(one) - 1.0));
    report.push_back({"bialgebra", bialg});

    double anti = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec l = Vec::Zero(n), r = Vec::Zero(n);
        for (const PairTerm& t : A.coproduct_terms(i)) {
            l += t.coeff * A.multiply(d.antipode.col(t.left), basis_vector(n, t.right));
            r += t.coeff * A.multiply(basis_vector(n, t.left), d.antipode.col(t.right));
        }
        const Vec target = d.counit(i) * one;
        anti = std::max({anti, (l - target).cwiseAbs().maxCoeff(), (r - target).cwiseAbs().maxCoeff()});
    }
    report.push_back({"antipode", anti});

    if (d.star) {
        const Mat& st = *d.star;
        const Mat id = Mat::Identity(n, n);
        report.push_back({"star-involution", (st * st.conjugate() - id).cwiseAbs().maxCoeff()});
        double anti_mult = 0.0, comult = 0.0, counit_star = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec si = st.col(i);  // star of a basis vector
            for (int j = 0; j < n; ++j) {
                Vec prodij = Vec::Zero(n);
                for (const Term& t : A.product_terms(i, j)) prodij(t.index) += t.coeff;
                anti_mult = std::max(anti_mult, (A.star(prodij) - A.multiply(st.col(j), si)).cwiseAbs().maxCoeff());
            }
            Mat expected = Mat::Zero(n, n);
            for (const PairTerm& t : A.coproduct_terms(i))
                expected += std::conj(t.coeff) * st.col(t.left) * st.col(t.right).transpose();
            comult = std::max(comult, (A.comultiply(si) - expected).cwiseAbs().maxCoeff());
            counit_star = std::max(counit_star, std::abs(A.counit(si) - std::conj(d.counit(i))));
        }
        report.push_back({"star-antimultiplicative", anti_mult});
        report.push_back({"star-comultiplicative", comult});
        report.push_back({"star-counit", counit_star});
        const Mat& S = d.antipode;
        report.push_back({"antipode-star", (S * st * S.conjugate() * st.conjugate() - id).cwiseAbs().maxCoeff()});
    }
    return report;
}

Element make_element(AlgebraHandle algebra, Vec coeffs) {
    if (!algebra) throw Error(ErrorKind::AlgebraMismatch, "null algebra handle");
    if (coeffs.size() != algebra->dim())
        throw Error(ErrorKind::ShapeMismatch, "coefficient length " + std::to_string(coeffs.size()) +
                                                   " for algebra of dim " + std::to_string(algebra->dim()));
    return Element{std::move(algebra), std::move(coeffs)};
}

Element basis_element(AlgebraHandle algebra, int i) {
    const int n = algebra->dim();
    return make_element(std::move(algebra), basis_vector(n, i));
}

namespace {

void require_same(const Element& x, const Element& y) {
    if (x.algebra != y.algebra)
        throw Error(ErrorKind::AlgebraMismatch,
                    "'" + x.algebra->label() + "' vs '" + y.algebra->label() + "'");
}

}  // namespace

Element multiply(const Element& x, const Element& y) {
    require_same(x, y);
    return Element{x.algebra, x.algebra->multiply(x.coeffs, y.coeffs)};
}

TensorElement comultiply(const Element& x) { return iterated_coproduct(x, 1); }

Complex counit(const Element& x) { return x.algebra->counit(x.coeffs); }

Element antipode(const Element& x) { return Element{x.algebra, x.algebra->antipode(x.coeffs)}; }

Element star(const Element& x) { return Element{x.algebra, x.algebra->star(x.coeffs)}; }

namespace {

constexpr std::int64_t kMaxTensorLength = std::int64_t{1} << 26;

Vec iterate(const Algebra& A, const Vec& x, int n, bool last_leg) {
    if (n < 0) throw Error(ErrorKind::ShapeMismatch, "iterated coproduct count must be >= 0");
    const int d = A.dim();
    if (ipow(d, n + 1) > kMaxTensorLength)
        throw Error(ErrorKind::DimensionCap, "iterated coproduct exceeds tensor length cap");
    Vec cur = x;
    for (int step = 0; step < n; ++step) {
        const std::int64_t rest = cur.size() / d;  // product of the other legs
        Vec next = Vec::Zero(cur.size() * d);
        for (std::int64_t idx = 0; idx < cur.size(); ++idx) {
            const Complex c = cur(idx);
            if (c == Complex(0.0)) continue;
            // last leg: idx = prefix * d + i ; first leg: idx = i * rest + suffix
            const int i = last_leg ? static_cast<int>(idx % d) : static_cast<int>(idx / rest);
            const std::int64_t other = last_leg ? idx / d : idx % rest;
            for (const PairTerm& t : A.coproduct_terms(i)) {
                const std::int64_t out = last_leg ? (other * d + t.left) * d + t.right
                                                  : (static_cast<std::int64_t>(t.left) * d + t.right) * rest + other;
                next(out) += c * t.coeff;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

TensorElement wrap(const Element& x, int n, Vec coeffs) {
    return TensorElement{std::vector<AlgebraHandle>(static_cast<std::size_t>(n) + 1, x.algebra),
                         std::move(coeffs)};
}

}  // namespace

Vec iterated_coproduct(const Algebra& A, const Vec& x, int n) { return iterate(A, x, n, true); }
Vec iterated_coproduct_first_leg(const Algebra& A, const Vec& x, int n) { return iterate(A, x, n, false); }

TensorElement iterated_coproduct(const Element& x, int n) {
    return wrap(x, n, iterated_coproduct(*x.algebra, x.coeffs, n));
}

TensorElement iterated_coproduct_first_leg(const Element& x, int n) {
    return wrap(x, n, iterated_coproduct_first_leg(*x.algebra, x.coeffs, n));
}

}  // namespace hopflat
