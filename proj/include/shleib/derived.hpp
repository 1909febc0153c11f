#pragma once

#include "shleib/check.hpp"
#include "shleib/coalgebra.hpp"
#include "shleib/multiop.hpp"

#include <span>
#include <vector>

namespace shleib {

/// Truncated deformation δ_t = δ_0 + tδ_1 + ... + t^mδ_m of a differential.
/// Every δ_i is arity 1, degree +1; δ_i := 0 for i > m.
class DeformationFamily {
public:
    DeformationFamily(BasisPtr basis, std::vector<MultiOp> deltas);

    [[nodiscard]] int order() const { return static_cast<int>(deltas_.size()) - 1; }
    [[nodiscard]] const BasisPtr& basis_ptr() const { return basis_; }
    [[nodiscard]] const std::vector<MultiOp>& deltas() const { return deltas_; }
    /// δ_i, or the zero map when i > order().
    [[nodiscard]] MultiOp delta(int i) const;

private:
    BasisPtr basis_;
    std::vector<MultiOp> deltas_;
};

/// Operations l_1..l_N on sV; l_i has arity i and degree 2 - i. Missing
/// arities are zero.
struct ShLeibnizStructure {
    BasisPtr shifted_basis;
    std::vector<MultiOp> ops;  // ops[i-1] = l_i

    [[nodiscard]] int max_arity() const { return static_cast<int>(ops.size()); }
    [[nodiscard]] const MultiOp* op(int arity) const;
};

/// (-1)^{(i-1)(i-2)/2}, the overall sign of the i-ary derived bracket.
Scalar derived_bracket_prefactor(int i);

/// (-1)^{x_1+x_3+...} for even i, (-1)^{x_2+x_4+...} for odd i, where the
/// degrees are those of x_1..x_i in V.
Scalar explicit_form_sign(std::span<const int> degrees);

/// χ(σ)(-1)^{(k+1-j)(j-1)}(-1)^{j(x_σ(1)+...+x_σ(k-j))}: the coefficient of
/// l_i(.., l_j(..), ..) in the sh Leibniz relation. `degrees` holds the
/// degrees (in the sh algebra) of x_1..x_{k-1}.
Scalar homleib_sign(const Permutation& sigma, int k, int j, std::span<const int> degrees);

BasisPtr make_shifted(const BasisPtr& basis);

/// l_i = (-1)^{(i-1)(i-2)/2} s∘N_i∘(s^{-1})^{⊗i}∘(sδs^{-1}⊗1^{⊗(i-1)}), evaluated
/// on every tuple of sV with mechanically generated Koszul signs.
MultiOp derived_bracket(const MultiOp& bracket, const MultiOp& delta, int i, const BasisPtr& shifted);

/// s^{-1}l_i(sx_1..sx_i) = ±N_i(δx_1, x_2, .., x_i) with the sign of explicit_form_sign.
MultiOp derived_bracket_explicit(const MultiOp& bracket, const MultiOp& delta, int i, const BasisPtr& shifted);

/// l_i = derived_bracket(bracket, δ_{i-1}, i) for 1 <= i <= m+1.
ShLeibnizStructure build_sh_structure(const MultiOp& bracket, const DeformationFamily& fam);

/// Tuples where the two constructions of l_i differ, for every i <= m+1.
Violations compare_derived_routes(const MultiOp& bracket, const DeformationFamily& fam, const CheckOptions& opt = {});

/// ∂_i = N_iδ_{i-1} on V.
MultiOp partial_i(const MultiOp& bracket, const MultiOp& delta, int i);

/// s^{-1}∘l∘(s⊗...⊗s) for an operation l on sV, returned over `base`.
MultiOp unshift_operation(const MultiOp& l, const BasisPtr& base);

/// Tuples where N_iδ_{i-1} and the unshifted l_i differ, for every i <= m+1.
Violations compare_partial_routes(const MultiOp& bracket, const DeformationFamily& fam, const CheckOptions& opt = {});

/// ∂ = ∂_1 + ... + ∂_{m+1} as a degree +1 coderivation on T̄V.
CoderivationSpec codifferential(const MultiOp& bracket, const DeformationFamily& fam);

/// The left-hand side of the sh Leibniz relation at Const = tuple.size() + 1.
Element sh_residual(const ShLeibnizStructure& s, const Tuple& tuple);

/// Every Const in [2, max_const] and every tuple of length Const-1 over sV;
/// scope = Const.
Violations check_sh_leibniz(const ShLeibnizStructure& s, int max_const, const CheckOptions& opt = {});

/// Const values in [2, max_const] where every term vanishes because both
/// inner and outer operations would exceed the available arities.
std::vector<int> vacuous_consts(const ShLeibnizStructure& s, int max_const);

/// ∂(∂(word)) on T̄V.
TensorElement codifferential_square(const CoderivationSpec& d, const TensorWord& word);

/// ∂∂ = 0 on every word of length <= max_len; scope = word length.
Violations check_codifferential(const MultiOp& bracket, const DeformationFamily& fam, int max_len,
                                const CheckOptions& opt = {});

/// N_{i+j-1}[D,D'] - (N_iD, N_jD') on every tuple of length i+j-1. Throws
/// PreconditionError if D or D' is not a derivation of the bracket.
Violations check_key_lemma(const MultiOp& bracket, const MultiOp& D, const MultiOp& Dp, int i, int j,
                           const CheckOptions& opt = {});

/// With b = (∂_2, -) and ∂_2 = N_2δ_1, checks for every supplied derivation D
/// and i <= i_max that b(N_iD) = N_{i+1}[δ_1,D] and b(b(N_iD)) = 0, and that
/// b maps N_i ad(V) into N_{i+1} ad(V). Requires δ_1 to be a differential.
Violations leibniz_cohomology_check(const MultiOp& bracket, const MultiOp& delta1, std::span<const MultiOp> derivations,
                                    int i_max, const CheckOptions& opt = {});

}  // namespace shleib
