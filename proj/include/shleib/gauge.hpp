#pragma once

#include "shleib/check.hpp"
#include "shleib/coalgebra.hpp"
#include "shleib/derived.hpp"

#include <optional>
#include <vector>

namespace shleib {

/// ξ_t = tξ_1 + ... + t^mξ_m, each ξ_i arity 1 and degree 0; ξ_i := 0 for i > m.
class GaugeFamily {
public:
    GaugeFamily(BasisPtr basis, std::vector<MultiOp> xis);

    [[nodiscard]] int order() const { return static_cast<int>(xis_.size()); }
    [[nodiscard]] const BasisPtr& basis_ptr() const { return basis_; }
    [[nodiscard]] const std::vector<MultiOp>& xis() const { return xis_; }
    /// ξ_i for i >= 1, zero beyond order().
    [[nodiscard]] MultiOp xi(int i) const;
    [[nodiscard]] GaugeFamily negated() const;

private:
    BasisPtr basis_;
    std::vector<MultiOp> xis_;
};

/// θ_t = tθ_1 + ... + t^mθ_m with every θ_i of degree 1.
struct McElement {
    std::vector<Element> thetas;
};

/// Rejection of a non-solution of the MC equation; order() is the first
/// failing t-order.
class McError : public PreconditionError {
public:
    McError(int order, std::string residual);
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] const std::string& residual() const { return residual_; }

private:
    int order_;
    std::string residual_;
};

/// Derivation property of every δ_i (label "derivation", scope i, tuple (x,y))
/// and Σ_{i+j=n}δ_iδ_j = 0 on basis vectors (label "keycond", scope n, tuple (b)).
/// n runs to max_order when given, else to 2m, which covers every product of
/// the truncated polynomial.
Violations check_deformation(const MultiOp& bracket, const DeformationFamily& fam,
                             std::optional<int> max_order = std::nullopt, const CheckOptions& opt = {});

/// δ_0θ_n + ½Σ_{p+q=n}[θ_p,θ_q] with θ_i := 0 beyond the given ones.
Element mc_residual(const MultiOp& bracket, const MultiOp& delta0, const McElement& theta, int n);

/// ad_x = {x,-} for an arbitrary homogeneous element.
MultiOp adjoint(const MultiOp& bracket, const Element& x);

/// (δ_0, ad θ_1, ..., ad θ_m). Throws PreconditionError unless the bracket is
/// graded skewsymmetric, and McError at the first order n <= 2m whose MC
/// residual is nonzero.
DeformationFamily mc_to_deformation(const MultiOp& bracket, const MultiOp& delta0, const McElement& theta);

/// δ'_n = Σ_k (1/k!) Σ [...[δ_i, ξ_{j_1}], ..., ξ_{j_k}] over i + j_1 + ... + j_k = n,
/// for n = 0..order.
DeformationFamily gauge_transform(const DeformationFamily& fam, const GaugeFamily& gauge, int order);

/// Ξ = Σ_i N_{i+1}ξ_i as a degree-0 coderivation.
CoderivationSpec build_xi(const MultiOp& bracket, const GaugeFamily& gauge);

/// e^{sign·Ξ}(w) = Σ_k (sign·Ξ)^k(w)/k!. Terminates because Ξ has no arity-1
/// component, so each application shortens every word.
TensorElement exp_xi(const CoderivationSpec& xi, const TensorElement& t, int sign = 1);
TensorElement exp_xi(const CoderivationSpec& xi, const TensorWord& w, int sign = 1);

/// exp(X_Ξ)(D)(w) = Σ_n (1/n!) Σ_k C(n,k)(-1)^k Ξ^k D Ξ^{n-k}(w), X_Ξ = [-, Ξ].
TensorElement exp_ad_xi_operator(const CoderivationSpec& d, const CoderivationSpec& xi, const TensorWord& w);

/// The same series computed in Hom(T̄V,V): Σ_k (1/k!)(...((D,Ξ),Ξ)...,Ξ),
/// keeping arities <= max_arity.
CoderivationSpec exp_ad_xi_components(const CoderivationSpec& d, const CoderivationSpec& xi, int max_arity);

/// Gauge-equivalence verdict on every word of length <= max_len. Labels:
/// gauge-derivation, rlas1 (∂' = e^{-Ξ}∂e^{Ξ}), rlas2 (Δe^{Ξ} = (e^{Ξ}⊗e^{Ξ})Δ),
/// eqpa-operator, eqpa-components (scope = arity), inverse (e^{Ξ}e^{-Ξ} = 1 both
/// ways) and deformation (the transformed family, valid up to t-order max_len-1).
Violations check_gauge_equivalence(const MultiOp& bracket, const DeformationFamily& fam, const GaugeFamily& gauge,
                                   int max_len, const CheckOptions& opt = {});

}  // namespace shleib
