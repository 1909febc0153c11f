#include "shleib/gauge.hpp"

#include "shleib/leibniz.hpp"

namespace shleib {

GaugeFamily::GaugeFamily(BasisPtr basis, std::vector<MultiOp> xis) : basis_(std::move(basis)), xis_(std::move(xis)) {
    if (xis_.empty()) throw MalformedInput("a gauge needs at least ξ_1");
    for (std::size_t i = 0; i < xis_.size(); ++i) {
        const auto& x = xis_[i];
        if (x.arity() != 1 || x.degree() != 0)
            throw MalformedInput("ξ_" + std::to_string(i + 1) + " must have arity 1 and degree 0");
        if (!same_space(x.basis(), *basis_)) throw MalformedInput("ξ_" + std::to_string(i + 1) + " over a different basis");
    }
}

MultiOp GaugeFamily::xi(int i) const {
    if (i < 1) throw MalformedInput("gauge orders start at 1");
    if (i > order()) return MultiOp::zero(basis_, 1, 0);
    return xis_[static_cast<std::size_t>(i - 1)];
}

GaugeFamily GaugeFamily::negated() const {
    std::vector<MultiOp> n;
    for (const auto& x : xis_) n.push_back(Scalar(-1) * x);
    return GaugeFamily(basis_, std::move(n));
}

McError::McError(int order, std::string residual)
    : PreconditionError("Maurer-Cartan equation fails at order " + std::to_string(order) + ": " + residual),
      order_(order),
      residual_(std::move(residual)) {}

Violations check_deformation(const MultiOp& bracket, const DeformationFamily& fam, std::optional<int> max_order,
                             const CheckOptions& opt) {
    if (!same_space(bracket.basis(), *fam.basis_ptr())) throw MalformedInput("family and bracket over different bases");
    Violations out;
    for (int i = 0; i <= fam.order(); ++i) {
        for (auto v : check_derivation(fam.delta(i), bracket, opt)) {
            v.label = "derivation";
            v.scope = i;
            out.push_back(std::move(v));
        }
        if (stop_now(out, opt)) return out;
    }
    const int top = max_order.value_or(2 * fam.order());
    const auto& basis = bracket.basis();
    for (int n = 0; n <= top; ++n) {
        MultiOp sum = MultiOp::zero(fam.basis_ptr(), 1, 2);
        for (int i = std::max(0, n - fam.order()); i <= std::min(n, fam.order()); ++i)
            sum += compose(fam.delta(i), fam.delta(n - i));
        for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
            const Element& r = sum.at({b});
            if (!r.is_zero()) {
                out.push_back({"keycond", n, {b}, r.render(basis)});
                if (stop_now(out, opt)) return out;
            }
        }
    }
    return out;
}

MultiOp adjoint(const MultiOp& bracket, const Element& x) {
    if (x.is_zero()) return MultiOp::zero(bracket.basis_ptr(), 1, 0);
    const int d = x.degree(bracket.basis());
    MultiOp out = MultiOp::zero(bracket.basis_ptr(), 1, d);
    for (const auto& [b, c] : x.coefficients()) out += c * left_multiplication(bracket, b);
    return out;
}

Element mc_residual(const MultiOp& bracket, const MultiOp& delta0, const McElement& theta, int n) {
    const int m = static_cast<int>(theta.thetas.size());
    auto th = [&](int p) { return (p >= 1 && p <= m) ? theta.thetas[static_cast<std::size_t>(p - 1)] : Element{}; };
    Element r = delta0.apply(std::vector<Element>{th(n)});
    const Scalar half(1, 2);
    for (int p = 1; p < n; ++p) r.add_scaled(bracket.apply(std::vector<Element>{th(p), th(n - p)}), half);
    return r;
}

DeformationFamily mc_to_deformation(const MultiOp& bracket, const MultiOp& delta0, const McElement& theta) {
    if (bracket.arity() != 2 || bracket.degree() != 0) throw MalformedInput("bracket must have arity 2 and degree 0");
    if (!check_skewsymmetry(bracket, {}, {true}).empty())
        throw PreconditionError("MC input needs a graded skewsymmetric (Lie) bracket");
    const auto& basis = bracket.basis();
    for (std::size_t i = 0; i < theta.thetas.size(); ++i)
        if (!theta.thetas[i].is_homogeneous(basis, 1))
            throw MalformedInput("θ_" + std::to_string(i + 1) + " must be homogeneous of degree 1");
    const int m = static_cast<int>(theta.thetas.size());
    for (int n = 1; n <= 2 * m; ++n) {
        Element r = mc_residual(bracket, delta0, theta, n);
        if (!r.is_zero()) throw McError(n, r.render(basis));
    }
    std::vector<MultiOp> deltas{delta0};
    for (const auto& t : theta.thetas) {
        MultiOp ad = adjoint(bracket, t);
        if (ad.degree() != 1) ad = MultiOp::zero(bracket.basis_ptr(), 1, 1);
        deltas.push_back(std::move(ad));
    }
    return DeformationFamily(bracket.basis_ptr(), std::move(deltas));
}

DeformationFamily gauge_transform(const DeformationFamily& fam, const GaugeFamily& gauge, int order) {
    if (order < 0) throw MalformedInput("gauge_transform: negative order");
    if (!same_space(*fam.basis_ptr(), *gauge.basis_ptr())) throw MalformedInput("gauge and family over different bases");
    const auto n_orders = static_cast<std::size_t>(order + 1);
    // term[n] holds the k-fold nested commutators of total t-order n.
    std::vector<MultiOp> term, result;
    for (int n = 0; n <= order; ++n) term.push_back(fam.delta(n));
    result = term;
    Scalar inv_fact(1);
    for (int k = 1; k <= order; ++k) {
        std::vector<MultiOp> next(n_orders, MultiOp::zero(fam.basis_ptr(), 1, 1));
        for (int n = 0; n <= order; ++n)
            for (int j = 1; j <= std::min(n, gauge.order()); ++j) {
                const auto& prev = term[static_cast<std::size_t>(n - j)];
                if (prev.is_zero()) continue;
                next[static_cast<std::size_t>(n)] += commutator(prev, gauge.xi(j));
            }
        term = std::move(next);
        inv_fact = inv_fact / Scalar(k);
        for (int n = 0; n <= order; ++n) result[static_cast<std::size_t>(n)] += inv_fact * term[static_cast<std::size_t>(n)];
    }
    return DeformationFamily(fam.basis_ptr(), std::move(result));
}

CoderivationSpec build_xi(const MultiOp& bracket, const GaugeFamily& gauge) {
    CoderivationSpec xi(bracket.basis_ptr(), 0);
    for (int i = 1; i <= gauge.order(); ++i) xi.add(n_i_d(bracket, gauge.xi(i), i + 1));
    return xi;
}

namespace {

void require_shortening(const CoderivationSpec& xi) {
    if (!xi.component(1).is_zero()) throw PreconditionError("Ξ must not have an arity-1 component");
}

}  // namespace

TensorElement exp_xi(const CoderivationSpec& xi, const TensorElement& t, int sign) {
    require_shortening(xi);
    TensorElement out = t, power = t;
    Scalar coef(1);
    for (int k = 1; !power.is_zero(); ++k) {
        power = evaluate_coderivation(xi, power);
        coef = coef * Scalar(sign) / Scalar(k);
        out.add_scaled(power, coef);
    }
    return out;
}

TensorElement exp_xi(const CoderivationSpec& xi, const TensorWord& w, int sign) {
    return exp_xi(xi, TensorElement::word(w), sign);
}

TensorElement exp_ad_xi_operator(const CoderivationSpec& d, const CoderivationSpec& xi, const TensorWord& w) {
    require_shortening(xi);
    // pow[a] = Ξ^a(w), nonzero ones only.
    std::vector<TensorElement> pow{TensorElement::word(w)};
    while (!pow.back().is_zero()) pow.push_back(evaluate_coderivation(xi, pow.back()));
    pow.pop_back();
    // Ξ^{n-k} needs n-k < |pow|; D never lengthens words, so Ξ^k after it needs k < |w| as well.
    const int top = static_cast<int>(pow.size()) + static_cast<int>(w.size());
    TensorElement out;
    Scalar inv_fact(1);
    for (int n = 0; n <= top; ++n) {
        if (n > 0) inv_fact = inv_fact / Scalar(n);
        for (int k = 0; k <= n; ++k) {
            if (n - k >= static_cast<int>(pow.size())) continue;
            TensorElement x = evaluate_coderivation(d, pow[static_cast<std::size_t>(n - k)]);
            for (int a = 0; a < k && !x.is_zero(); ++a) x = evaluate_coderivation(xi, x);
            const Scalar c = inv_fact * Scalar(static_cast<long>(binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k)))) *
                             sign_power(k);
            out.add_scaled(x, c);
        }
    }
    return out;
}

CoderivationSpec exp_ad_xi_components(const CoderivationSpec& d, const CoderivationSpec& xi, int max_arity) {
    require_shortening(xi);
    CoderivationSpec out = d.truncated(max_arity);
    CoderivationSpec y = out;
    Scalar inv_fact(1);
    for (int k = 1; k < max_arity; ++k) {
        y = hom_bracket(y, xi, max_arity);
        if (y.is_zero()) break;
        inv_fact = inv_fact / Scalar(k);
        for (const auto& [a, f] : y.components()) out.add(f, inv_fact);
    }
    return out;
}

namespace {

struct WordCheck {
    const GradedBasis& basis;
    const CheckOptions& opt;
    Violations& out;

    bool report(const std::string& label, const TensorWord& w, const TensorElement& r) {
        if (r.is_zero()) return false;
        out.push_back({label, static_cast<int>(w.size()), w, r.render(basis)});
        return stop_now(out, opt);
    }
    bool report(const std::string& label, const TensorWord& w, const TensorPairElement& r) {
        if (r.is_zero()) return false;
        out.push_back({label, static_cast<int>(w.size()), w, r.render(basis)});
        return stop_now(out, opt);
    }
};

}  // namespace

Violations check_gauge_equivalence(const MultiOp& bracket, const DeformationFamily& fam, const GaugeFamily& gauge,
                                   int max_len, const CheckOptions& opt) {
    if (max_len < 1) throw MalformedInput("max word length must be >= 1");
    const auto& basis = bracket.basis();
    Violations out;
    for (int i = 1; i <= gauge.order(); ++i) {
        for (auto v : check_derivation(gauge.xi(i), bracket, opt)) {
            v.label = "gauge-derivation";
            v.scope = i;
            out.push_back(std::move(v));
        }
        if (stop_now(out, opt)) return out;
    }

    // Arity a of ∂' only involves δ'_{a-1}, so this order is exact on words <= max_len.
    const int order = std::max(fam.order(), max_len - 1);
    const DeformationFamily fam2 = gauge_transform(fam, gauge, order);
    const CoderivationSpec d = codifferential(bracket, fam);
    const CoderivationSpec d2 = codifferential(bracket, fam2).truncated(max_len);
    const CoderivationSpec xi = build_xi(bracket, gauge);

    WordCheck wc{basis, opt, out};
    for (const auto& w : words_up_to(basis.size(), max_len)) {
        const TensorElement e = exp_xi(xi, w, 1);
        const TensorElement lhs = exp_xi(xi, evaluate_coderivation(d, e), -1);
        const TensorElement d2w = evaluate_coderivation(d2, w);

        TensorElement r1 = lhs;
        r1 -= d2w;
        if (wc.report("rlas1", w, r1)) return out;

        TensorPairElement r2 = comultiply(basis, e);
        for (const auto tmp = comultiply(basis, w); const auto& [key, c] : tmp.terms()) {
            const TensorElement ea = exp_xi(xi, key.first, 1);
            const TensorElement eb = exp_xi(xi, key.second, 1);
            for (const auto& [a, ca] : ea.terms())
                for (const auto& [b, cb] : eb.terms()) r2.add_term({a, b}, -(c * ca * cb));
        }
        if (wc.report("rlas2", w, r2)) return out;

        TensorElement r3 = exp_ad_xi_operator(d, xi, w);
        r3 -= lhs;
        if (wc.report("eqpa-operator", w, r3)) return out;

        TensorElement r4 = exp_xi(xi, e, -1);
        r4 -= TensorElement::word(w);
        if (wc.report("inverse", w, r4)) return out;
        TensorElement r5 = exp_xi(xi, exp_xi(xi, w, -1), 1);
        r5 -= TensorElement::word(w);
        if (wc.report("inverse", w, r5)) return out;
    }

    const CoderivationSpec series = exp_ad_xi_components(d, xi, max_len);
    for (int a = 1; a <= max_len; ++a) {
        const MultiOp lhs = series.component(a);
        const MultiOp rhs = d2.component(a);
        for (const auto& t : all_tuples(basis.size(), static_cast<std::size_t>(a))) {
            Element r = lhs.at(t) - rhs.at(t);
            if (!r.is_zero()) {
                out.push_back({"eqpa-components", a, t, r.render(basis)});
                if (stop_now(out, opt)) return out;
            }
        }
    }

    for (auto v : check_deformation(bracket, fam2, order, opt)) {
        v.label = "deformation/" + v.label;
        out.push_back(std::move(v));
        if (stop_now(out, opt)) return out;
    }
    return out;
}

}  // namespace shleib
