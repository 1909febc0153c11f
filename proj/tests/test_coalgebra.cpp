#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixture_util.hpp"

#include "shleib/coalgebra.hpp"
#include "shleib/leibniz.hpp"

#include <functional>
#include <random>

using namespace shleib;

namespace {

Element v(int i, Scalar c = 1) { return Element::basis_vector(i, std::move(c)); }

using WordMap = std::function<TensorElement(const TensorWord&)>;

TensorElement apply_map(const WordMap& f, const TensorElement& t) {
    TensorElement out;
    for (const auto& [w, c] : t.terms()) out.add_scaled(f(w), c);
    return out;
}

// ΔD - (D⊗1)Δ - (1⊗D)Δ for an arbitrary map D of the given degree on T̄V.
TensorPairElement axiom_residual(const GradedBasis& b, const WordMap& D, int degree, const TensorWord& word) {
    TensorPairElement r = comultiply(b, apply_map(D, TensorElement::word(word)));
    for (const auto delta = comultiply(b, word); const auto& [k, c] : delta.terms()) {
        for (const auto left = D(k.first); const auto& [w, c2] : left.terms()) r.add_term({w, k.second}, -(c * c2));
        const Scalar s = sign_power(static_cast<long>(degree) * word_degree(b, k.first));
        for (const auto right = D(k.second); const auto& [w, c2] : right.terms()) r.add_term({k.first, w}, -(c * c2 * s));
    }
    return r;
}

// Homogeneous map with pseudo-random constants in {-2..2}.
MultiOp random_op(const BasisPtr& b, int arity, int degree, std::mt19937& rng) {
    MultiOp f(b, arity, degree);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const auto& t : all_tuples(b->size(), static_cast<std::size_t>(arity))) {
        int d = degree;
        for (int x : t) d += b->degree(static_cast<std::size_t>(x));
        Element img;
        for (int y = 0; y < static_cast<int>(b->size()); ++y)
            if (b->degree(static_cast<std::size_t>(y)) == d) img.add_term(y, coef(rng));
        f.set(t, img);
    }
    return f;
}

MultiOp hb(const MultiOp& f, const MultiOp& g) { return hom_bracket(f, g); }

}  // namespace

TEST_CASE("comultiplication examples") {
    const auto b0 = make_basis({{"x", 0}, {"y", 0}, {"z", 0}});
    CHECK(comultiply(*b0, TensorWord{0}).is_zero());
    TensorPairElement two;
    two.add_term({{0}, {1}}, 1);
    CHECK(comultiply(*b0, TensorWord{0, 1}) == two);
    TensorPairElement three;
    three.add_term({{0}, {1, 2}}, 1);
    three.add_term({{1}, {0, 2}}, 1);
    three.add_term({{0, 1}, {2}}, 1);
    CHECK(comultiply(*b0, TensorWord{0, 1, 2}) == three);

    // Odd x, y: moving y past x costs a sign.
    const auto b1 = make_basis({{"x", 1}, {"y", 1}, {"z", 0}});
    TensorPairElement odd;
    odd.add_term({{0}, {1, 2}}, 1);
    odd.add_term({{1}, {0, 2}}, -1);
    odd.add_term({{0, 1}, {2}}, 1);
    CHECK(comultiply(*b1, TensorWord{0, 1, 2}) == odd);
}

TEST_CASE("dual Leibniz identity") {
    const auto b0 = make_basis({{"x", 0}, {"y", 0}});
    CHECK(check_dual_leibniz(*b0, 2).empty());
    CHECK(check_dual_leibniz(*b0, 3).empty());
    const auto mixed = make_basis({{"x", 0}, {"y", 1}, {"z", 2}});
    CHECK(check_dual_leibniz(*mixed, 5).empty());
}

TEST_CASE("lift examples") {
    const auto b = make_basis({{"x", 1}, {"y", 0}, {"fx", 2}, {"fy", 1}});
    const auto f = linear_map(b, 1, {{0, v(2)}, {1, v(3)}});
    TensorElement expect;
    expect.add_term({2, 1}, 1);
    expect.add_term({0, 3}, -1);  // (-1)^{|f||x|}, |f| = |x| = 1
    CHECK(lift_apply(f, {0, 1}) == expect);

    MultiOp g(b, 2, 1);
    g.set({0, 1}, v(2));
    CHECK(lift_apply(g, {0, 1}) == TensorElement::word({2}));
    CHECK(lift_apply(g, {0}).is_zero());
    CHECK(decompose_k(g, 1, {0, 1}).is_zero());
}

TEST_CASE("decompose_k: arity 2, word length 3, k = 3") {
    const auto b = make_basis({{"u", 1}, {"w", 1}, {"r", 3}});
    MultiOp f(b, 2, 1);
    f.set({1, 0}, v(2));
    f.set({0, 0}, v(2));
    TensorElement expect;
    expect.add_term({0, 2}, -1);  // (u, f(w,u)), (-1)^{|f||u|}
    expect.add_term({1, 2}, 1);   // (w, f(u,u)), ε = -1 and (-1)^{|f||w|}
    CHECK(decompose_k(f, 3, {0, 1, 0}) == expect);
    CHECK(decompose_k(f, 2, {0, 1, 0}) == TensorElement());  // f(u,w) = 0
    CHECK(decompose_k(f, 4, {0, 1, 0}).is_zero());
}

TEST_CASE("coderivation axiom: lifted maps pass, a dropped sign fails") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        CHECK(check_coderivation_axiom(lift_coderivation(m.bracket), 4).empty());
        for (const auto fam = m.family(); const auto& d : fam.deltas()) CHECK(check_coderivation_axiom(lift_coderivation(d), 4).empty());
    }
    CHECK(check_coderivation_axiom(CoderivationSpec(make_basis({{"x", 0}}), 3), 4).empty());

    const auto b = make_basis({{"x", 1}, {"fx", 2}});
    const auto f = linear_map(b, 1, {{0, v(1)}});
    const WordMap good = [&](const TensorWord& w) { return lift_apply(f, w); };
    const WordMap bad = [&](const TensorWord& w) {
        TensorElement out;
        for (std::size_t p = 0; p < w.size(); ++p)
            for (const auto img = f.apply_basis(std::vector<int>{w[p]}); const auto& [y, c] : img.coefficients()) {
                auto u = w;
                u[p] = y;
                out.add_term(u, c);
            }
        return out;
    };
    for (const auto& w : words_up_to(2, 4)) CHECK(axiom_residual(*b, good, 1, w).is_zero());
    CHECK(axiom_residual(*b, good, 1, {0, 0}).is_zero());
    CHECK_FALSE(axiom_residual(*b, bad, 1, {0, 0}).is_zero());
}

TEST_CASE("decomposition and corestriction round trip on fixture maps") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        std::vector<MultiOp> maps{m.bracket};
        for (const auto fam = m.family(); const auto& d : fam.deltas()) maps.push_back(d);
        for (int i = 2; i <= 3; ++i) maps.push_back(nary_bracket(m.bracket, i));
        for (const auto& f : maps) {
            CHECK(check_decomposition(f, 5).empty());
            CHECK(check_corestriction_roundtrip(f).empty());
            CHECK(corestriction(lift_coderivation(f), f.arity()) == f);
        }
    }
}

TEST_CASE("lift keeps the last letter in place") {
    const auto m = load_fixture("mc-dglie");
    for (const auto& f : {m.bracket, m.family().delta(1), nary_bracket(m.bracket, 3)})
        for (const auto& w : words_up_to(m.basis->size(), 4))
            for (int k = f.arity(); k < static_cast<int>(w.size()); ++k)
                for (const auto t = decompose_k(f, k, w); const auto& [u, c] : t.terms()) REQUIRE(u.back() == w.back());
}

TEST_CASE("hom bracket on arity-1 maps is the graded commutator") {
    const auto m = load_fixture("l2b");
    const auto d = m.family().delta(1);
    const auto xi = m.gauge->xi(1);
    CHECK(hom_bracket(d, xi) == commutator(d, xi));
    CHECK(hom_bracket(d, d) == commutator(d, d));
    CHECK(hom_bracket(d, MultiOp::zero(m.basis, 2, 0)).is_zero());
}

TEST_CASE("hom bracket is graded antisymmetric and satisfies Jacobi") {
    std::mt19937 rng(7);
    for (const auto& b : {make_basis({{"e", 0}, {"c", 0}, {"b", 1}}), make_basis({{"x", -1}, {"y", 0}, {"z", 1}})}) {
        std::vector<MultiOp> ops;
        for (int arity = 1; arity <= 2; ++arity)
            for (int degree = -1; degree <= 1; ++degree) ops.push_back(random_op(b, arity, degree, rng));
        for (const auto& f : ops)
            for (const auto& g : ops) {
                const Scalar s = sign_power(static_cast<long>(f.degree()) * g.degree());
                REQUIRE(hb(f, g) == Scalar(-1) * s * hb(g, f));
                for (const auto& h : ops) {
                    const auto lhs = hb(f, hb(g, h));
                    const auto rhs = hb(hb(f, g), h) + s * hb(g, hb(f, h));
                    REQUIRE(lhs == rhs);
                }
            }
        for (const auto& f : ops)
            for (const auto& g : ops) REQUIRE(check_hom_bracket_lift(f, g, 4).empty());
    }
}

TEST_CASE("word enumeration") {
    const auto w = words_up_to(2, 3);
    CHECK(w.size() == 2 + 4 + 8);
    CHECK(w.front() == TensorWord{0});
    CHECK(w.back() == TensorWord{1, 1, 1});
}
