#pragma once

#include "shleib/scalar.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shleib {

/// Raised when an operation receives structurally invalid input
/// (size mismatch, wrong arity, unknown basis name, ...).
class MalformedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a mathematical precondition of an operation does not hold
/// (e.g. a map that should be a derivation is not).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BasisEntry {
    std::string name;
    int degree = 0;
    friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

/// Finite graded vector space given by an ordered list of named basis vectors.
/// The order is the enumeration order for every exhaustive check.
class GradedBasis {
public:
    GradedBasis() = default;
    explicit GradedBasis(std::vector<BasisEntry> entries);

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const BasisEntry& operator[](std::size_t i) const { return entries_.at(i); }
    [[nodiscard]] const std::vector<BasisEntry>& entries() const { return entries_; }
    [[nodiscard]] int degree(std::size_t i) const { return entries_.at(i).degree; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return entries_.at(i).name; }
    /// Index of a name, or -1 when absent.
    [[nodiscard]] int find(const std::string& name) const;
    [[nodiscard]] std::vector<int> degrees() const;

    friend bool operator==(const GradedBasis&, const GradedBasis&) = default;

private:
    std::vector<BasisEntry> entries_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline BasisPtr make_basis(std::vector<BasisEntry> entries) {
    return std::make_shared<const GradedBasis>(std::move(entries));
}

/// Sparse rational linear combination of basis vectors. Zero coefficients are
/// never stored.
class Element {
public:
    using Map = std::map<int, Scalar>;

    Element() = default;
    static Element basis_vector(int index, Scalar coefficient = 1);

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] const Map& coefficients() const { return coeffs_; }
    [[nodiscard]] Scalar coefficient(int index) const;
    [[nodiscard]] std::size_t support_size() const { return coeffs_.size(); }

    void add_term(int index, const Scalar& coefficient);
    void add_scaled(const Element& other, const Scalar& factor);

    /// True iff every supporting basis vector has the given degree (the zero
    /// element is homogeneous of every degree).
    [[nodiscard]] bool is_homogeneous(const GradedBasis& basis, int degree) const;
    /// Degree of a nonzero homogeneous element; throws MalformedInput for mixed
    /// or zero elements.
    [[nodiscard]] int degree(const GradedBasis& basis) const;

    Element& operator+=(const Element& o) { add_scaled(o, 1); return *this; }
    Element& operator-=(const Element& o) { add_scaled(o, -1); return *this; }
    Element& operator*=(const Scalar& s);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& s, Element a) { return a *= s; }
    friend Element operator-(Element a) { return a *= Scalar(-1); }
    friend bool operator==(const Element&, const Element&) = default;

    /// "name:coef name:coef ..." in basis order; "0" for the zero element.
    [[nodiscard]] std::string render(const GradedBasis& basis) const;

private:
    Map coeffs_;
};

/// Permutation of {1..n} in one-line notation: images[p-1] = sigma(p).
/// Acting on a sequence of symbols it produces (x_sigma(1), ..., x_sigma(n)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(std::size_t n);

    [[nodiscard]] std::size_t size() const { return images_.size(); }
    /// 1-based image.
    [[nodiscard]] int operator()(int position) const { return images_.at(static_cast<std::size_t>(position - 1)); }
    [[nodiscard]] const std::vector<int>& images() const { return images_; }
    [[nodiscard]] int sign() const;
    [[nodiscard]] Permutation inverse() const;
    /// Function composition: (a * b)(p) = a(b(p)).
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    /// Degrees of the permuted sequence: out[p] = degrees[sigma(p)].
    [[nodiscard]] std::vector<int> permute(std::span<const int> degrees) const;

private:
    std::vector<int> images_;
};

enum class Shift { raise, lower };

/// Sign picked up when the graded symbols with the given degrees are reordered
/// into (x_sigma(1), ..., x_sigma(n)); every passing pair a, b contributes
/// (-1)^{|a||b|}.
Scalar koszul_sign(const Permutation& sigma, std::span<const int> degrees);

/// sgn(sigma) * koszul_sign(sigma, degrees).
Scalar anti_koszul_sign(const Permutation& sigma, std::span<const int> degrees);

/// All (p,q)-unshuffles of S_{p+q} (increasing on 1..p and on p+1..p+q), in
/// lexicographic order of their one-line notation.
std::vector<Permutation> unshuffles(int p, int q);

/// Same names, every degree moved by +1 (raise) or -1 (lower).
GradedBasis shifted_degrees(const GradedBasis& basis, Shift direction);

std::size_t binomial(std::size_t n, std::size_t k);

/// Every tuple in {0..dim-1}^length in lexicographic order.
std::vector<std::vector<int>> all_tuples(std::size_t dim, std::size_t length);

}  // namespace shleib
