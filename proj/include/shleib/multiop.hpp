#pragma once

#include "shleib/graded.hpp"

#include <map>
#include <span>
#include <vector>

namespace shleib {

using Tuple = std::vector<int>;

/// Multilinear map V^{⊗arity} -> V of a fixed degree, stored as structure
/// constants on basis tuples. Evaluation is the plain multilinear extension;
/// no Koszul signs are applied here.
class MultiOp {
public:
    using Constants = std::map<Tuple, Element>;

    MultiOp() = default;
    MultiOp(BasisPtr basis, int arity, int degree);

    static MultiOp identity(BasisPtr basis);
    static MultiOp zero(BasisPtr basis, int arity, int degree) { return MultiOp(std::move(basis), arity, degree); }

    [[nodiscard]] int arity() const { return arity_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const BasisPtr& basis_ptr() const { return basis_; }
    [[nodiscard]] const GradedBasis& basis() const { return *basis_; }
    [[nodiscard]] const Constants& constants() const { return constants_; }
    [[nodiscard]] bool is_zero() const { return constants_.empty(); }

    /// Replaces the image of a basis tuple. Throws MalformedInput if the tuple
    /// is out of range or the image violates degree homogeneity.
    void set(const Tuple& tuple, Element image);
    /// Adds to the image of a basis tuple (same validation as set()).
    void add(const Tuple& tuple, const Element& image, const Scalar& factor = 1);

    [[nodiscard]] const Element& at(const Tuple& tuple) const;
    [[nodiscard]] Element apply(std::span<const Element> args) const;
    [[nodiscard]] Element apply_basis(std::span<const int> tuple) const;

    MultiOp& operator+=(const MultiOp& o);
    MultiOp& operator-=(const MultiOp& o);
    MultiOp& operator*=(const Scalar& s);
    friend MultiOp operator+(MultiOp a, const MultiOp& b) { return a += b; }
    friend MultiOp operator-(MultiOp a, const MultiOp& b) { return a -= b; }
    friend MultiOp operator*(const Scalar& s, MultiOp a) { return a *= s; }
    friend bool operator==(const MultiOp& a, const MultiOp& b);

    /// Same constants reinterpreted over another basis with identical names
    /// (e.g. the shifted space sV). Degree homogeneity is revalidated.
    [[nodiscard]] MultiOp rebased(BasisPtr basis, int degree) const;

private:
    void check_compatible(const MultiOp& o) const;

    BasisPtr basis_;
    int arity_ = 0;
    int degree_ = 0;
    Constants constants_;
};

bool same_space(const GradedBasis& a, const GradedBasis& b);

/// a∘b for arity-1 maps.
MultiOp compose(const MultiOp& a, const MultiOp& b);

/// Graded commutator [a,b] = a∘b - (-1)^{|a||b|} b∘a of arity-1 maps.
MultiOp commutator(const MultiOp& a, const MultiOp& b);

/// Arity-1 map given by the images of each basis vector (missing = 0).
MultiOp linear_map(BasisPtr basis, int degree, const std::map<int, Element>& images);

}  // namespace shleib
