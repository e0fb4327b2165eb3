#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopflat/types.hpp"

namespace hopflat {

/// Cubic rank-3 tensor with all three extents equal, stored row-major.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n) {}

    int dim() const noexcept { return n_; }
    Complex& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    const Complex& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    std::span<const Complex> values() const noexcept { return data_; }
    bool operator==(const Tensor3&) const = default;

private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }
    int n_ = 0;
    std::vector<Complex> data_;
};

/// Raw structure tensors of a finite-dimensional Hopf algebra.
///
/// mult(i,j,k) is the coefficient of e_k in e_i e_j; comult(i,j,k) is the coefficient
/// of e_j (x) e_k in the coproduct of e_i. The antipode acts on column coefficient
/// vectors. When present, the star is antilinear: x* = star * conj(x).
struct HopfData {
    int dim = 0;
    Tensor3 mult;
    Vec unit;
    Tensor3 comult;
    Vec counit;
    Mat antipode;
    std::optional<Mat> star;
    std::string label;
};

struct Term {
    int index;
    Complex coeff;
};

struct PairTerm {
    int left;
    int right;
    Complex coeff;
};

struct AxiomResidual {
    std::string name;
    double residual;
};
using AxiomReport = std::vector<AxiomResidual>;

double max_residual(const AxiomReport& report);

class Algebra;
using AlgebraHandle = std::shared_ptr<const Algebra>;

/// Immutable Hopf algebra with sparse views of its structure tensors.
class Algebra {
public:
    /// Validates shapes and every axiom; throws Error(AxiomViolation) naming the worst one.
    static AlgebraHandle create(HopfData data);
    /// Validates shapes only. Used for deliberately broken inputs in diagnostics.
    static AlgebraHandle create_unverified(HopfData data);

    int dim() const noexcept { return data_.dim; }
    const std::string& label() const noexcept { return data_.label; }
    const HopfData& data() const noexcept { return data_; }
    bool has_star() const noexcept { return data_.star.has_value(); }

    std::span<const Term> product_terms(int i, int j) const {
        return products_[static_cast<std::size_t>(i) * dim() + j];
    }
    std::span<const PairTerm> coproduct_terms(int i) const { return coproducts_[i]; }

    Vec unit() const { return data_.unit; }
    Vec multiply(const Vec& x, const Vec& y) const;
    /// Coefficient matrix C with coproduct(x) = sum C(j,k) e_j (x) e_k.
    Mat comultiply(const Vec& x) const;
    Complex counit(const Vec& x) const { return data_.counit.transpose() * x; }
    Vec antipode(const Vec& x) const { return data_.antipode * x; }
    const Mat& antipode_inverse() const noexcept { return antipode_inverse_; }
    Vec star(const Vec& x) const;

    /// Matrix of x -> e_i x (left) or x -> x e_i (right) on coefficient vectors.
    Mat left_regular(int i) const;
    Mat right_regular(int i) const;

    /// Normalised Haar integral, solved on first use and cached.
    const Vec& haar() const;

    /// FNV-1a digest of the structure tensors, as 16 hex digits.
    std::string structure_hash() const;

private:
    explicit Algebra(HopfData data);

    HopfData data_;
    std::vector<std::vector<Term>> products_;
    std::vector<std::vector<PairTerm>> coproducts_;
    Mat antipode_inverse_;
    mutable std::once_flag haar_once_;
    mutable Vec haar_;
};

/// Residuals of every Hopf axiom (and star axiom when a star is present), over all basis tuples.
AxiomReport verify_hopf(const Algebra& algebra);

/// Builds a handle after running all invariant checks.
AlgebraHandle new_algebra(HopfData data);

/// Coefficient vector tagged with the algebra it lives in.
struct Element {
    AlgebraHandle algebra;
    Vec coeffs;
};

/// Element of a tensor power; coefficients are row-major over the listed factors.
struct TensorElement {
    std::vector<AlgebraHandle> factors;
    Vec coeffs;
};

Element make_element(AlgebraHandle algebra, Vec coeffs);
Element basis_element(AlgebraHandle algebra, int i);

Element multiply(const Element& x, const Element& y);
TensorElement comultiply(const Element& x);
Complex counit(const Element& x);
Element antipode(const Element& x);
Element star(const Element& x);

/// Coproduct applied n times, each time on the last leg.
TensorElement iterated_coproduct(const Element& x, int n);
/// Coproduct applied n times, each time on the first leg. Agrees with the last-leg form by coassociativity.
TensorElement iterated_coproduct_first_leg(const Element& x, int n);

/// Raw forms returning coefficient vectors of length dim^(n+1).
Vec iterated_coproduct(const Algebra& algebra, const Vec& x, int n);
Vec iterated_coproduct_first_leg(const Algebra& algebra, const Vec& x, int n);

}  // namespace hopflat
