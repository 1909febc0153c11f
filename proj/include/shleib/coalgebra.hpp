#pragma once

#include "shleib/check.hpp"
#include "shleib/multiop.hpp"

#include <map>
#include <utility>
#include <vector>

namespace shleib {

/// A word (x_1, ..., x_n) of basis indices, n >= 1: an element of V^{⊗n} ⊂ T̄V.
using TensorWord = std::vector<int>;

/// Finite linear combination of words of possibly different lengths.
class TensorElement {
public:
    using Map = std::map<TensorWord, Scalar>;

    TensorElement() = default;
    static TensorElement word(const TensorWord& w, Scalar c = 1);

    void add_term(const TensorWord& w, const Scalar& c);
    void add_scaled(const TensorElement& other, const Scalar& factor);
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const Map& terms() const { return terms_; }
    /// Keeps only words of the given length.
    [[nodiscard]] TensorElement of_length(std::size_t n) const;

    TensorElement& operator+=(const TensorElement& o) { add_scaled(o, 1); return *this; }
    TensorElement& operator-=(const TensorElement& o) { add_scaled(o, -1); return *this; }
    friend bool operator==(const TensorElement&, const TensorElement&) = default;

    /// "(a,b):1 (c):-1/2" in word order; "0" if empty.
    [[nodiscard]] std::string render(const GradedBasis& basis) const;

private:
    Map terms_;
};

/// Element of T̄V ⊗ T̄V.
class TensorPairElement {
public:
    using Key = std::pair<TensorWord, TensorWord>;
    using Map = std::map<Key, Scalar>;

    void add_term(const Key& k, const Scalar& c);
    void add_scaled(const TensorPairElement& other, const Scalar& factor);
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const Map& terms() const { return terms_; }
    friend bool operator==(const TensorPairElement&, const TensorPairElement&) = default;
    [[nodiscard]] std::string render(const GradedBasis& basis) const;

private:
    Map terms_;
};

int word_degree(const GradedBasis& basis, const TensorWord& w);

/// Δ(x) = 0 and
/// Δ(x_1..x_{n+1}) = Σ_{i=1}^{n} Σ_{(i,n-i)-unshuffles σ} ε(σ) (x_σ(1)..x_σ(i)) ⊗ (x_σ(i+1)..x_σ(n), x_{n+1}).
TensorPairElement comultiply(const GradedBasis& basis, const TensorWord& word);
TensorPairElement comultiply(const GradedBasis& basis, const TensorElement& t);

/// (1⊗Δ)Δ - (Δ⊗1)Δ - ((12)⊗1)(Δ⊗1)Δ on a word, rendered; empty string if zero.
std::string dual_leibniz_residual(const GradedBasis& basis, const TensorWord& word);
/// The co-Leibniz identity on every word of length <= max_len; scope = length.
Violations check_dual_leibniz(const GradedBasis& basis, int max_len, const CheckOptions& opt = {});

/// Corestriction family of a coderivation on T̄V: one homogeneous MultiOp per
/// arity, all of the common degree.
class CoderivationSpec {
public:
    CoderivationSpec(BasisPtr basis, int degree) : basis_(std::move(basis)), degree_(degree) {}

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const BasisPtr& basis_ptr() const { return basis_; }
    [[nodiscard]] const std::map<int, MultiOp>& components() const { return components_; }
    [[nodiscard]] bool is_zero() const;
    /// Adds f to the arity-f component. Throws on degree or basis mismatch.
    void add(const MultiOp& f, const Scalar& factor = 1);
    /// Component of the given arity (zero MultiOp if absent).
    [[nodiscard]] MultiOp component(int arity) const;
    /// Drops components of arity > max_arity.
    [[nodiscard]] CoderivationSpec truncated(int max_arity) const;

    CoderivationSpec& operator*=(const Scalar& s);
    friend bool operator==(const CoderivationSpec& a, const CoderivationSpec& b);

private:
    BasisPtr basis_;
    int degree_;
    std::map<int, MultiOp> components_;
};

CoderivationSpec lift_coderivation(const MultiOp& f);

/// f^(k)(x_1..x_n): the summand of the lift formula whose innermost argument
/// ends at position k. Zero unless arity(f) <= k <= n.
TensorElement decompose_k(const MultiOp& f, int k, const TensorWord& word);

/// f^c(word) = Σ_{k >= arity} f^(k)(word); zero for words shorter than the arity.
TensorElement lift_apply(const MultiOp& f, const TensorWord& word);

TensorElement evaluate_coderivation(const CoderivationSpec& spec, const TensorWord& word);
TensorElement evaluate_coderivation(const CoderivationSpec& spec, const TensorElement& t);

/// ΔD - (D⊗1)Δ - (1⊗D)Δ on a word, with (1⊗D)(a⊗b) = (-1)^{|D||a|} a⊗Db.
TensorPairElement coderivation_axiom_residual(const CoderivationSpec& spec, const TensorWord& word);
Violations check_coderivation_axiom(const CoderivationSpec& spec, int max_len, const CheckOptions& opt = {});

/// Σ_k decompose_k(f,k,w) - lift_apply(f,w) on every word of length <= max_len.
Violations check_decomposition(const MultiOp& f, int max_len, const CheckOptions& opt = {});

/// Projection of the coderivation to V on inputs of the given length.
MultiOp corestriction(const CoderivationSpec& spec, int arity);

/// corestriction(lift(f), arity(f)) == f.
Violations check_corestriction_roundtrip(const MultiOp& f);

/// (f,g) = f∘g^c - (-1)^{|f||g|} g∘f^c restricted to inputs of length
/// arity(f) + arity(g) - 1 and projected to V.
MultiOp hom_bracket(const MultiOp& f, const MultiOp& g);

/// Componentwise (F,G) of two corestriction families, keeping arities <= max_arity.
CoderivationSpec hom_bracket(const CoderivationSpec& f, const CoderivationSpec& g, int max_arity);

/// [f^c,g^c] - (f,g)^c on every word of length <= max_len, computed by
/// composing the two lifts on T̄V.
Violations check_hom_bracket_lift(const MultiOp& f, const MultiOp& g, int max_len, const CheckOptions& opt = {});

/// Every word of length 1..max_len over the basis, shortest first, then lexicographic.
std::vector<TensorWord> words_up_to(std::size_t dim, int max_len);

}  // namespace shleib
