#include "shleib/derived.hpp"

#include "shleib/leibniz.hpp"
#include "shleib/shift_calculus.hpp"

namespace shleib {

DeformationFamily::DeformationFamily(BasisPtr basis, std::vector<MultiOp> deltas)
    : basis_(std::move(basis)), deltas_(std::move(deltas)) {
    if (deltas_.empty()) throw MalformedInput("a deformation family needs at least δ_0");
    for (std::size_t i = 0; i < deltas_.size(); ++i) {
        const auto& d = deltas_[i];
        if (d.arity() != 1 || d.degree() != 1)
            throw MalformedInput("δ_" + std::to_string(i) + " must have arity 1 and degree +1");
        if (!same_space(d.basis(), *basis_)) throw MalformedInput("δ_" + std::to_string(i) + " over a different basis");
    }
}

MultiOp DeformationFamily::delta(int i) const {
    if (i < 0) throw MalformedInput("negative deformation order");
    if (i > order()) return MultiOp::zero(basis_, 1, 1);
    return deltas_[static_cast<std::size_t>(i)];
}

const MultiOp* ShLeibnizStructure::op(int arity) const {
    if (arity < 1 || arity > max_arity()) return nullptr;
    return &ops[static_cast<std::size_t>(arity - 1)];
}

Scalar derived_bracket_prefactor(int i) { return sign_power(static_cast<long>(i - 1) * (i - 2) / 2); }

Scalar explicit_form_sign(std::span<const int> degrees) {
    const std::size_t i = degrees.size();
    // Even arity: odd positions x_1, x_3, ...; odd arity: even positions x_2, x_4, ...
    const std::size_t start = (i % 2 == 0) ? 0 : 1;
    long e = 0;
    for (std::size_t p = start; p < i; p += 2) e += degrees[p];
    return sign_power(e);
}

Scalar homleib_sign(const Permutation& sigma, int k, int j, std::span<const int> degrees) {
    if (static_cast<int>(sigma.size()) != k - 1 || static_cast<int>(degrees.size()) != k - 1)
        throw MalformedInput("homleib_sign: sizes must equal k-1");
    long prefix = 0;
    for (int p = 1; p <= k - j; ++p) prefix += degrees[static_cast<std::size_t>(sigma(p) - 1)];
    return anti_koszul_sign(sigma, degrees) * sign_power(static_cast<long>(k + 1 - j) * (j - 1)) *
           sign_power(static_cast<long>(j) * prefix);
}

BasisPtr make_shifted(const BasisPtr& basis) {
    return std::make_shared<const GradedBasis>(shifted_degrees(*basis, Shift::raise));
}

namespace {

void check_shifted_pair(const GradedBasis& base, const GradedBasis& shifted) {
    if (!(shifted == shifted_degrees(base, Shift::raise))) throw MalformedInput("basis is not the shift of the algebra's basis");
}

void require_delta(const MultiOp& bracket, const MultiOp& delta, int i) {
    if (i < 1) throw MalformedInput("derived bracket arity must be positive");
    if (delta.arity() != 1 || delta.degree() != 1) throw MalformedInput("δ must have arity 1 and degree +1");
    if (!same_space(delta.basis(), bracket.basis())) throw MalformedInput("δ and bracket over different bases");
}

}  // namespace

MultiOp derived_bracket(const MultiOp& bracket, const MultiOp& delta, int i, const BasisPtr& shifted) {
    require_delta(bracket, delta, i);
    const auto& base = bracket.basis();
    check_shifted_pair(base, *shifted);
    const MultiOp Ni = nary_bracket(bracket, i);
    const auto n = static_cast<std::size_t>(i);

    auto slots_first = [n](SlotMap first) {
        std::vector<SlotMap> v(n, SlotMap::identity());
        v[0] = first;
        return v;
    };
    const auto lower_first = slots_first(SlotMap::lower());
    const auto delta_first = slots_first(SlotMap::linear(delta));
    const auto raise_first = slots_first(SlotMap::raise());
    const std::vector<SlotMap> lower_all(n, SlotMap::lower());
    const Scalar pre = derived_bracket_prefactor(i);

    MultiOp out(shifted, i, 2 - i);
    for (const auto& t : all_tuples(base.size(), n)) {
        SymbolWord w;
        for (int b : t) w.push_back({b, 1});
        // (sδs^{-1} ⊗ 1): rightmost factor acts first.
        SymbolTensor x = SymbolTensor::word(w);
        x = apply_slots(lower_first, x, base);
        x = apply_slots(delta_first, x, base);
        x = apply_slots(raise_first, x, base);
        x = apply_slots(lower_all, x, base);
        // N_i then s; s acts on a single output symbol, so no further sign.
        Element img = contract(Ni, x, 0);
        out.set(t, pre * img);
    }
    return out;
}

MultiOp derived_bracket_explicit(const MultiOp& bracket, const MultiOp& delta, int i, const BasisPtr& shifted) {
    require_delta(bracket, delta, i);
    check_shifted_pair(bracket.basis(), *shifted);
    const MultiOp nd = n_i_d(bracket, delta, i);
    MultiOp out(shifted, i, 2 - i);
    for (const auto& [t, img] : nd.constants()) {
        std::vector<int> degs;
        for (int b : t) degs.push_back(bracket.basis().degree(static_cast<std::size_t>(b)));
        out.set(t, explicit_form_sign(degs) * img);
    }
    return out;
}

ShLeibnizStructure build_sh_structure(const MultiOp& bracket, const DeformationFamily& fam) {
    if (!same_space(bracket.basis(), *fam.basis_ptr())) throw MalformedInput("family and bracket over different bases");
    ShLeibnizStructure s{make_shifted(bracket.basis_ptr()), {}};
    for (int i = 1; i <= fam.order() + 1; ++i) s.ops.push_back(derived_bracket(bracket, fam.delta(i - 1), i, s.shifted_basis));
    return s;
}

namespace {

void diff_ops(const MultiOp& a, const MultiOp& b, const std::string& label, int scope, const CheckOptions& opt,
              Violations& out) {
    for (const auto& t : all_tuples(a.basis().size(), static_cast<std::size_t>(a.arity()))) {
        Element r = a.at(t) - b.at(t);
        if (!r.is_zero()) {
            out.push_back({label, scope, t, r.render(a.basis())});
            if (stop_now(out, opt)) return;
        }
    }
}

}  // namespace

Violations compare_derived_routes(const MultiOp& bracket, const DeformationFamily& fam, const CheckOptions& opt) {
    Violations out;
    const auto shifted = make_shifted(bracket.basis_ptr());
    for (int i = 1; i <= fam.order() + 1 && !stop_now(out, opt); ++i) {
        const auto a = derived_bracket(bracket, fam.delta(i - 1), i, shifted);
        const auto b = derived_bracket_explicit(bracket, fam.delta(i - 1), i, shifted);
        diff_ops(a, b, "derived-routes", i, opt, out);
    }
    return out;
}

MultiOp partial_i(const MultiOp& bracket, const MultiOp& delta, int i) {
    require_delta(bracket, delta, i);
    return n_i_d(bracket, delta, i);
}

MultiOp unshift_operation(const MultiOp& l, const BasisPtr& base) {
    check_shifted_pair(*base, l.basis());
    const auto n = static_cast<std::size_t>(l.arity());
    const std::vector<SlotMap> raise_all(n, SlotMap::raise());
    MultiOp out(base, l.arity(), l.degree() + l.arity() - 1);
    for (const auto& t : all_tuples(base->size(), n)) {
        SymbolWord w;
        for (int b : t) w.push_back({b, 0});
        const SymbolTensor x = apply_slots(raise_all, SymbolTensor::word(w), *base);
        out.set(t, contract(l, x, 1));
    }
    return out;
}

Violations compare_partial_routes(const MultiOp& bracket, const DeformationFamily& fam, const CheckOptions& opt) {
    Violations out;
    const auto s = build_sh_structure(bracket, fam);
    for (int i = 1; i <= fam.order() + 1 && !stop_now(out, opt); ++i) {
        const auto a = partial_i(bracket, fam.delta(i - 1), i);
        const auto b = unshift_operation(*s.op(i), bracket.basis_ptr());
        diff_ops(a, b, "partial-routes", i, opt, out);
    }
    return out;
}

CoderivationSpec codifferential(const MultiOp& bracket, const DeformationFamily& fam) {
    CoderivationSpec d(bracket.basis_ptr(), 1);
    for (int i = 1; i <= fam.order() + 1; ++i) d.add(partial_i(bracket, fam.delta(i - 1), i));
    return d;
}

Element sh_residual(const ShLeibnizStructure& s, const Tuple& x) {
    const auto& basis = *s.shifted_basis;
    const int c = static_cast<int>(x.size()) + 1;
    std::vector<int> degs;
    for (int b : x) degs.push_back(basis.degree(static_cast<std::size_t>(b)));
    Element total;
    for (int j = 1; j < c; ++j) {
        const int i = c - j;
        const MultiOp* outer = s.op(i);
        const MultiOp* inner = s.op(j);
        if (!outer || !inner || outer->is_zero() || inner->is_zero()) continue;
        for (int k = j; k <= i + j - 1; ++k) {
            const std::span<const int> prefix_degs(degs.data(), static_cast<std::size_t>(k - 1));
            for (const auto& sigma : unshuffles(k - j, j - 1)) {
                Tuple inner_args;
                for (int p = k - j + 1; p <= k - 1; ++p) inner_args.push_back(x[static_cast<std::size_t>(sigma(p) - 1)]);
                inner_args.push_back(x[static_cast<std::size_t>(k - 1)]);
                const Element& inner_val = inner->at(inner_args);
                if (inner_val.is_zero()) continue;
                std::vector<Element> args;
                for (int p = 1; p <= k - j; ++p) args.push_back(Element::basis_vector(x[static_cast<std::size_t>(sigma(p) - 1)]));
                args.push_back(inner_val);
                for (int p = k + 1; p <= c - 1; ++p) args.push_back(Element::basis_vector(x[static_cast<std::size_t>(p - 1)]));
                total.add_scaled(outer->apply(args), homleib_sign(sigma, k, j, prefix_degs));
            }
        }
    }
    return total;
}

Violations check_sh_leibniz(const ShLeibnizStructure& s, int max_const, const CheckOptions& opt) {
    if (max_const < 2) throw MalformedInput("max Const must be >= 2");
    Violations out;
    for (int c = 2; c <= max_const; ++c)
        for (const auto& t : all_tuples(s.shifted_basis->size(), static_cast<std::size_t>(c - 1))) {
            Element r = sh_residual(s, t);
            if (!r.is_zero()) {
                out.push_back({"sh-leibniz", c, t, r.render(*s.shifted_basis)});
                if (stop_now(out, opt)) return out;
            }
        }
    return out;
}

std::vector<int> vacuous_consts(const ShLeibnizStructure& s, int max_const) {
    std::vector<int> out;
    for (int c = 2; c <= max_const; ++c) {
        bool any = false;
        for (int j = 1; j < c && !any; ++j) {
            const MultiOp* outer = s.op(c - j);
            const MultiOp* inner = s.op(j);
            any = outer && inner && !outer->is_zero() && !inner->is_zero();
        }
        if (!any) out.push_back(c);
    }
    return out;
}

TensorElement codifferential_square(const CoderivationSpec& d, const TensorWord& word) {
    return evaluate_coderivation(d, evaluate_coderivation(d, word));
}

Violations check_codifferential(const MultiOp& bracket, const DeformationFamily& fam, int max_len, const CheckOptions& opt) {
    if (max_len < 1) throw MalformedInput("max word length must be >= 1");
    const auto d = codifferential(bracket, fam);
    Violations out;
    for (const auto& w : words_up_to(bracket.basis().size(), max_len)) {
        TensorElement r = codifferential_square(d, w);
        if (!r.is_zero()) {
            out.push_back({"codifferential", static_cast<int>(w.size()), w, r.render(bracket.basis())});
            if (stop_now(out, opt)) break;
        }
    }
    return out;
}

Violations check_key_lemma(const MultiOp& bracket, const MultiOp& D, const MultiOp& Dp, int i, int j, const CheckOptions& opt) {
    if (i < 1 || j < 1) throw MalformedInput("key lemma arities must be positive");
    if (!check_derivation(D, bracket, {true}).empty() || !check_derivation(Dp, bracket, {true}).empty())
        throw PreconditionError("key lemma inputs must be derivations of the bracket");
    const MultiOp lhs = n_i_d(bracket, commutator(D, Dp), i + j - 1);
    const MultiOp rhs = hom_bracket(n_i_d(bracket, D, i), n_i_d(bracket, Dp, j));
    Violations out;
    diff_ops(lhs, rhs, "key-lemma(" + std::to_string(i) + "," + std::to_string(j) + ")", i + j - 1, opt, out);
    return out;
}

Violations leibniz_cohomology_check(const MultiOp& bracket, const MultiOp& delta1, std::span<const MultiOp> derivations,
                                    int i_max, const CheckOptions& opt) {
    if (!check_differential(delta1, bracket, {true}).ok())
        throw PreconditionError("δ_1 must be a square-zero degree +1 derivation");
    const MultiOp d2 = n_i_d(bracket, delta1, 2);
    Violations out;
    for (std::size_t idx = 0; idx < derivations.size(); ++idx) {
        const MultiOp& D = derivations[idx];
        if (!check_derivation(D, bracket, {true}).empty()) throw PreconditionError("cochain input is not a derivation");
        for (int i = 1; i <= i_max; ++i) {
            const MultiOp b1 = hom_bracket(d2, n_i_d(bracket, D, i));
            diff_ops(b1, n_i_d(bracket, commutator(delta1, D), i + 1), "b-identity", i, opt, out);
            if (stop_now(out, opt)) return out;
            const MultiOp b2 = hom_bracket(d2, b1);
            diff_ops(b2, MultiOp::zero(bracket.basis_ptr(), b2.arity(), b2.degree()), "b-square", i, opt, out);
            if (stop_now(out, opt)) return out;
        }
    }
    // N_i ad(V) is carried into N_{i+1} ad(V): b(N_i ad_x) = N_{i+1} ad_{δ_1 x}.
    for (int x = 0; x < static_cast<int>(bracket.basis().size()); ++x) {
        const MultiOp adx = left_multiplication(bracket, x);
        const Element dx = delta1.at({x});
        for (int i = 1; i <= i_max; ++i) {
            const MultiOp b1 = hom_bracket(d2, n_i_d(bracket, adx, i));
            MultiOp expected = MultiOp::zero(bracket.basis_ptr(), i + 1, b1.degree());
            for (const auto& [y, c] : dx.coefficients()) expected += c * n_i_d(bracket, left_multiplication(bracket, y), i + 1);
            diff_ops(b1, expected, "adjoint-subcomplex", i, opt, out);
            if (stop_now(out, opt)) return out;
        }
    }
    return out;
}

}  // namespace shleib
