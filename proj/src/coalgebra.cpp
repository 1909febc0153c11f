#include "shleib/coalgebra.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace shleib {

namespace {

const std::vector<Permutation>& cached_unshuffles(int p, int q) {
    static std::map<std::pair<int, int>, std::vector<Permutation>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find({p, q});
    if (it == cache.end()) it = cache.emplace(std::make_pair(p, q), unshuffles(p, q)).first;
    return it->second;
}

std::string render_word(const GradedBasis& basis, const TensorWord& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += basis.name(static_cast<std::size_t>(w[i]));
    }
    return s + ")";
}

std::vector<int> letter_degrees(const GradedBasis& basis, const TensorWord& w, std::size_t count) {
    std::vector<int> d(count);
    for (std::size_t p = 0; p < count; ++p) d[p] = basis.degree(static_cast<std::size_t>(w[p]));
    return d;
}

}  // namespace

TensorElement TensorElement::word(const TensorWord& w, Scalar c) {
    TensorElement t;
    t.add_term(w, c);
    return t;
}

void TensorElement::add_term(const TensorWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    if (w.empty()) throw MalformedInput("T̄V has no empty word");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TensorElement::add_scaled(const TensorElement& other, const Scalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [w, c] : other.terms_) add_term(w, c * factor);
}

TensorElement TensorElement::of_length(std::size_t n) const {
    TensorElement out;
    for (const auto& [w, c] : terms_)
        if (w.size() == n) out.terms_.emplace(w, c);
    return out;
}

std::string TensorElement::render(const GradedBasis& basis) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << ' ';
        first = false;
        os << render_word(basis, w) << ':' << c;
    }
    return os.str();
}

void TensorPairElement::add_term(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TensorPairElement::add_scaled(const TensorPairElement& other, const Scalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [k, c] : other.terms_) add_term(k, c * factor);
}

std::string TensorPairElement::render(const GradedBasis& basis) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << ' ';
        first = false;
        os << render_word(basis, k.first) << "⊗" << render_word(basis, k.second) << ':' << c;
    }
    return os.str();
}

int word_degree(const GradedBasis& basis, const TensorWord& w) {
    int d = 0;
    for (int b : w) d += basis.degree(static_cast<std::size_t>(b));
    return d;
}

TensorPairElement comultiply(const GradedBasis& basis, const TensorWord& word) {
    TensorPairElement out;
    if (word.size() <= 1) return out;
    const int n = static_cast<int>(word.size()) - 1;
    const auto degs = letter_degrees(basis, word, static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (const auto& sigma : cached_unshuffles(i, n - i)) {
            TensorWord left, right;
            for (int p = 1; p <= i; ++p) left.push_back(word[static_cast<std::size_t>(sigma(p) - 1)]);
            for (int p = i + 1; p <= n; ++p) right.push_back(word[static_cast<std::size_t>(sigma(p) - 1)]);
            right.push_back(word.back());
            out.add_term({std::move(left), std::move(right)}, koszul_sign(sigma, degs));
        }
    return out;
}

TensorPairElement comultiply(const GradedBasis& basis, const TensorElement& t) {
    TensorPairElement out;
    for (const auto& [w, c] : t.terms()) out.add_scaled(comultiply(basis, w), c);
    return out;
}

std::string dual_leibniz_residual(const GradedBasis& basis, const TensorWord& word) {
    using Triple = std::tuple<TensorWord, TensorWord, TensorWord>;
    std::map<Triple, Scalar> acc;
    auto add = [&](Triple k, const Scalar& c) {
        auto [it, ins] = acc.try_emplace(std::move(k), c);
        if (!ins) it->second += c;
    };
    const auto first = comultiply(basis, word);
    for (const auto& [k, c] : first.terms()) {
        const auto& [a, b] = k;
        // (1⊗Δ)Δ; Δ has degree 0 so no Koszul sign.
        for (const auto tmp = comultiply(basis, b); const auto& [k2, c2] : tmp.terms()) add({a, k2.first, k2.second}, c * c2);
        // -(Δ⊗1)Δ - ((12)⊗1)(Δ⊗1)Δ
        for (const auto tmp = comultiply(basis, a); const auto& [k2, c2] : tmp.terms()) {
            const auto& [a1, a2] = k2;
            add({a1, a2, b}, -(c * c2));
            const long e = static_cast<long>(word_degree(basis, a1)) * word_degree(basis, a2);
            add({a2, a1, b}, -(c * c2 * sign_power(e)));
        }
    }
    std::ostringstream os;
    bool any = false;
    for (const auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        if (any) os << ' ';
        any = true;
        os << render_word(basis, std::get<0>(k)) << "⊗" << render_word(basis, std::get<1>(k)) << "⊗"
           << render_word(basis, std::get<2>(k)) << ':' << c;
    }
    return os.str();
}

std::vector<TensorWord> words_up_to(std::size_t dim, int max_len) {
    std::vector<TensorWord> out;
    for (int len = 1; len <= max_len; ++len)
        for (auto& t : all_tuples(dim, static_cast<std::size_t>(len))) out.push_back(std::move(t));
    return out;
}

Violations check_dual_leibniz(const GradedBasis& basis, int max_len, const CheckOptions& opt) {
    if (max_len < 1) throw MalformedInput("max word length must be >= 1");
    Violations out;
    for (const auto& w : words_up_to(basis.size(), max_len)) {
        auto r = dual_leibniz_residual(basis, w);
        if (!r.empty()) {
            out.push_back({"dual-leibniz", static_cast<int>(w.size()), w, std::move(r)});
            if (stop_now(out, opt)) break;
        }
    }
    return out;
}

bool CoderivationSpec::is_zero() const {
    for (const auto& [a, f] : components_)
        if (!f.is_zero()) return false;
    return true;
}

void CoderivationSpec::add(const MultiOp& f, const Scalar& factor) {
    if (f.degree() != degree_) throw MalformedInput("coderivation component of the wrong degree");
    if (!same_space(f.basis(), *basis_)) throw MalformedInput("coderivation component over a different basis");
    auto it = components_.find(f.arity());
    if (it == components_.end())
        components_.emplace(f.arity(), factor * f);
    else
        it->second += factor * f;
}

MultiOp CoderivationSpec::component(int arity) const {
    auto it = components_.find(arity);
    return it == components_.end() ? MultiOp::zero(basis_, arity, degree_) : it->second;
}

CoderivationSpec CoderivationSpec::truncated(int max_arity) const {
    CoderivationSpec out(basis_, degree_);
    for (const auto& [a, f] : components_)
        if (a <= max_arity) out.components_.emplace(a, f);
    return out;
}

CoderivationSpec& CoderivationSpec::operator*=(const Scalar& s) {
    for (auto& [a, f] : components_) f *= s;
    return *this;
}

bool operator==(const CoderivationSpec& a, const CoderivationSpec& b) {
    if (a.degree_ != b.degree_ || !same_space(*a.basis_, *b.basis_)) return false;
    std::map<int, const MultiOp*> ca, cb;
    for (const auto& [k, f] : a.components_)
        if (!f.is_zero()) ca[k] = &f;
    for (const auto& [k, f] : b.components_)
        if (!f.is_zero()) cb[k] = &f;
    if (ca.size() != cb.size()) return false;
    for (const auto& [k, f] : ca) {
        auto it = cb.find(k);
        if (it == cb.end() || !(*f == *it->second)) return false;
    }
    return true;
}

CoderivationSpec lift_coderivation(const MultiOp& f) {
    CoderivationSpec spec(f.basis_ptr(), f.degree());
    spec.add(f);
    return spec;
}

TensorElement decompose_k(const MultiOp& f, int k, const TensorWord& word) {
    TensorElement out;
    const int i = f.arity();
    const int n = static_cast<int>(word.size());
    if (k < i || k > n) return out;
    const auto& basis = f.basis();
    const auto degs = letter_degrees(basis, word, static_cast<std::size_t>(k - 1));
    Tuple inner(static_cast<std::size_t>(i));
    for (const auto& sigma : cached_unshuffles(k - i, i - 1)) {
        long prefix_degree = 0;
        for (int p = 1; p <= k - i; ++p) prefix_degree += degs[static_cast<std::size_t>(sigma(p) - 1)];
        for (int p = k - i + 1; p <= k - 1; ++p) inner[static_cast<std::size_t>(p - (k - i) - 1)] = word[static_cast<std::size_t>(sigma(p) - 1)];
        inner.back() = word[static_cast<std::size_t>(k - 1)];
        const Element& img = f.at(inner);
        if (img.is_zero()) continue;
        const Scalar sign = koszul_sign(sigma, degs) * sign_power(static_cast<long>(f.degree()) * prefix_degree);
        TensorWord w;
        w.reserve(static_cast<std::size_t>(n - i + 1));
        for (int p = 1; p <= k - i; ++p) w.push_back(word[static_cast<std::size_t>(sigma(p) - 1)]);
        const std::size_t slot = w.size();
        w.push_back(0);
        for (int p = k + 1; p <= n; ++p) w.push_back(word[static_cast<std::size_t>(p - 1)]);
        for (const auto& [b, c] : img.coefficients()) {
            w[slot] = b;
            out.add_term(w, sign * c);
        }
    }
    return out;
}

TensorElement lift_apply(const MultiOp& f, const TensorWord& word) {
    TensorElement out;
    for (int k = f.arity(); k <= static_cast<int>(word.size()); ++k) out += decompose_k(f, k, word);
    return out;
}

TensorElement evaluate_coderivation(const CoderivationSpec& spec, const TensorWord& word) {
    TensorElement out;
    for (const auto& [a, f] : spec.components())
        if (a <= static_cast<int>(word.size()) && !f.is_zero()) out += lift_apply(f, word);
    return out;
}

TensorElement evaluate_coderivation(const CoderivationSpec& spec, const TensorElement& t) {
    TensorElement out;
    for (const auto& [w, c] : t.terms()) out.add_scaled(evaluate_coderivation(spec, w), c);
    return out;
}

TensorPairElement coderivation_axiom_residual(const CoderivationSpec& spec, const TensorWord& word) {
    const auto& basis = *spec.basis_ptr();
    TensorPairElement r = comultiply(basis, evaluate_coderivation(spec, word));
    for (const auto tmp = comultiply(basis, word); const auto& [k, c] : tmp.terms()) {
        const auto& [a, b] = k;
        for (const auto tmp = evaluate_coderivation(spec, a); const auto& [w, c2] : tmp.terms()) r.add_term({w, b}, -(c * c2));
        const Scalar s = sign_power(static_cast<long>(spec.degree()) * word_degree(basis, a));
        for (const auto tmp = evaluate_coderivation(spec, b); const auto& [w, c2] : tmp.terms()) r.add_term({a, w}, -(c * c2 * s));
    }
    return r;
}

Violations check_coderivation_axiom(const CoderivationSpec& spec, int max_len, const CheckOptions& opt) {
    if (max_len < 1) throw MalformedInput("max word length must be >= 1");
    Violations out;
    for (const auto& w : words_up_to(spec.basis_ptr()->size(), max_len)) {
        auto r = coderivation_axiom_residual(spec, w);
        if (!r.is_zero()) {
            out.push_back({"coderivation-axiom", static_cast<int>(w.size()), w, r.render(*spec.basis_ptr())});
            if (stop_now(out, opt)) break;
        }
    }
    return out;
}

Violations check_decomposition(const MultiOp& f, int max_len, const CheckOptions& opt) {
    Violations out;
    for (const auto& w : words_up_to(f.basis().size(), max_len)) {
        TensorElement sum;
        for (int k = 1; k <= static_cast<int>(w.size()); ++k) sum += decompose_k(f, k, w);
        sum -= lift_apply(f, w);
        if (!sum.is_zero()) {
            out.push_back({"decomposition", static_cast<int>(w.size()), w, sum.render(f.basis())});
            if (stop_now(out, opt)) break;
        }
    }
    return out;
}

MultiOp corestriction(const CoderivationSpec& spec, int arity) {
    MultiOp out(spec.basis_ptr(), arity, spec.degree());
    for (const auto& w : all_tuples(spec.basis_ptr()->size(), static_cast<std::size_t>(arity))) {
        Element e;
        for (const auto tmp = evaluate_coderivation(spec, w); const auto& [v, c] : tmp.terms())
            if (v.size() == 1) e.add_term(v[0], c);
        out.set(w, std::move(e));
    }
    return out;
}

Violations check_corestriction_roundtrip(const MultiOp& f) {
    Violations out;
    const MultiOp back = corestriction(lift_coderivation(f), f.arity());
    for (const auto& t : all_tuples(f.basis().size(), static_cast<std::size_t>(f.arity()))) {
        Element r = back.at(t) - f.at(t);
        if (!r.is_zero()) out.push_back({"corestriction", f.arity(), t, r.render(f.basis())});
    }
    return out;
}

namespace {

/// outer∘inner^c projected to V on a word of length arity(outer)+arity(inner)-1.
Element compose_with_lift(const MultiOp& outer, const MultiOp& inner, const TensorWord& w) {
    Element e;
    for (const auto tmp = lift_apply(inner, w); const auto& [v, c] : tmp.terms())
        if (static_cast<int>(v.size()) == outer.arity()) e.add_scaled(outer.at(v), c);
    return e;
}

}  // namespace

MultiOp hom_bracket(const MultiOp& f, const MultiOp& g) {
    if (!same_space(f.basis(), g.basis())) throw MalformedInput("hom_bracket: basis mismatch");
    const int arity = f.arity() + g.arity() - 1;
    MultiOp out(f.basis_ptr(), arity, f.degree() + g.degree());
    if (f.is_zero() || g.is_zero()) return out;
    const Scalar s = sign_power(static_cast<long>(f.degree()) * g.degree());
    for (const auto& w : all_tuples(f.basis().size(), static_cast<std::size_t>(arity))) {
        Element e = compose_with_lift(f, g, w);
        e.add_scaled(compose_with_lift(g, f, w), -s);
        out.set(w, std::move(e));
    }
    return out;
}

CoderivationSpec hom_bracket(const CoderivationSpec& f, const CoderivationSpec& g, int max_arity) {
    CoderivationSpec out(f.basis_ptr(), f.degree() + g.degree());
    for (const auto& [a, fa] : f.components())
        for (const auto& [b, gb] : g.components())
            if (a + b - 1 <= max_arity && !fa.is_zero() && !gb.is_zero()) out.add(hom_bracket(fa, gb));
    return out;
}

Violations check_hom_bracket_lift(const MultiOp& f, const MultiOp& g, int max_len, const CheckOptions& opt) {
    const auto& basis = f.basis();
    const auto fc = lift_coderivation(f), gc = lift_coderivation(g);
    const auto fg = lift_coderivation(hom_bracket(f, g));
    const Scalar s = sign_power(static_cast<long>(f.degree()) * g.degree());
    Violations out;
    for (const auto& w : words_up_to(basis.size(), max_len)) {
        TensorElement r = evaluate_coderivation(fc, evaluate_coderivation(gc, w));
        r.add_scaled(evaluate_coderivation(gc, evaluate_coderivation(fc, w)), -s);
        r -= evaluate_coderivation(fg, w);
        if (!r.is_zero()) {
            out.push_back({"hom-bracket-lift", static_cast<int>(w.size()), w, r.render(basis)});
            if (stop_now(out, opt)) break;
        }
    }
    return out;
}

}  // namespace shleib
