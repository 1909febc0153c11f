#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixture_util.hpp"

#include "shleib/leibniz.hpp"

using namespace shleib;

namespace {

Element v(int i, Scalar c = 1) { return Element::basis_vector(i, std::move(c)); }

// e, c of degree 0 with {e,e} = c.
MultiOp l2() {
    MultiOp br(make_basis({{"e", 0}, {"c", 0}}), 2, 0);
    br.set({0, 0}, v(1));
    return br;
}

}  // namespace

TEST_CASE("apply is the plain multilinear extension") {
    const auto br = l2();
    const Element zero;
    const Element e = v(0);
    CHECK(br.apply(std::vector<Element>{zero, e}).is_zero());
    CHECK(br.apply(std::vector<Element>{e, e}) == v(1));
    CHECK(br.apply(std::vector<Element>{Scalar(2) * e, e}) == Scalar(2) * br.apply(std::vector<Element>{e, e}));
    CHECK_THROWS_AS(br.apply(std::vector<Element>{e}), MalformedInput);
}

TEST_CASE("structure constants are validated") {
    MultiOp br(make_basis({{"x", 0}, {"y", 1}}), 2, 0);
    CHECK_THROWS_AS(br.set({0, 0}, v(1)), MalformedInput);
    CHECK_THROWS_AS(br.set({0, 2}, v(0)), MalformedInput);
    CHECK_THROWS_AS(br.set({0}, v(0)), MalformedInput);
    br.set({0, 1}, v(1));
    br.set({0, 1}, Element());
    CHECK(br.is_zero());
}

TEST_CASE("left Leibniz identity") {
    const auto zero = MultiOp::zero(make_basis({{"x", 0}, {"y", 1}}), 2, 0);
    CHECK(check_leibniz_identity(zero).empty());
    CHECK(check_leibniz_identity(l2()).empty());

    MultiOp bad(make_basis({{"e", 0}}), 2, 0);
    bad.set({0, 0}, v(0));
    const auto viol = check_leibniz_identity(bad);
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].tuple == Tuple{0, 0, 0});
    CHECK(viol[0].residual == "e:-1");
    CHECK(leibniz_residual(bad, 0, 0, 0) == v(0, -1));

    CHECK_THROWS_AS(check_leibniz_identity(MultiOp::zero(make_basis({{"e", 0}}), 1, 0)), MalformedInput);
    CHECK_THROWS_AS(check_leibniz_identity(MultiOp::zero(make_basis({{"e", 0}}), 2, 1)), MalformedInput);

    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        CHECK(check_leibniz_identity(load_fixture(name).bracket).empty());
    }
}

TEST_CASE("derivations and differentials") {
    const auto b = make_basis({{"e", 0}, {"c", 0}, {"b", 1}});
    MultiOp br(b, 2, 0);
    br.set({0, 0}, v(1));
    const auto delta = linear_map(b, 1, {{0, v(2)}});
    const auto zero_d = MultiOp::zero(b, 1, 1);

    CHECK(check_derivation(zero_d, br).empty());
    CHECK(check_derivation(delta, MultiOp::zero(b, 2, 0)).empty());
    CHECK(check_derivation(delta, br).empty());
    CHECK(check_differential(zero_d, br).ok());
    CHECK(check_differential(delta, br).ok());
    CHECK_FALSE(check_differential(MultiOp::identity(b), br).ok());

    // D(e) = b, D(b) = e': square is nonzero on e.
    const auto b2 = make_basis({{"e", 0}, {"b", 1}, {"e'", 2}});
    const auto D = linear_map(b2, 1, {{0, v(1)}, {1, v(2)}});
    const auto verdict = check_differential(D, MultiOp::zero(b2, 2, 0));
    CHECK(verdict.degree_ok);
    CHECK(verdict.derivation.empty());
    REQUIRE(verdict.square.size() == 1);
    CHECK(verdict.square[0].tuple == Tuple{0});
    CHECK(verdict.square[0].residual == "e':1");

    // The derivation sign uses |x||D|: a degree-1 map that ignores it fails.
    const auto bh = make_basis({{"x", 1}, {"y", 1}, {"z", 2}});
    MultiOp brh(bh, 2, 0);
    brh.set({0, 0}, v(2));
    CHECK(check_derivation(linear_map(bh, 0, {{0, v(1)}, {1, v(0)}}), brh).size() > 0);
}

TEST_CASE("n-fold brackets") {
    const auto br = l2();
    CHECK(nary_bracket(br, 1) == MultiOp::identity(br.basis_ptr()));
    CHECK(nary_bracket(br, 2) == br);
    CHECK(nary_bracket(br, 3).apply_basis(std::vector<int>{0, 0, 0}).is_zero());

    const auto m = load_fixture("l2b");
    const auto delta = m.family().delta(1);
    CHECK(n_i_d(m.bracket, delta, 1) == delta);
    CHECK(n_i_d(m.bracket, delta, 2).apply_basis(std::vector<int>{0, 0}).is_zero());
    for (int i = 1; i <= 4; ++i) CHECK(n_i_d(m.bracket, MultiOp::zero(m.basis, 1, 1), i).is_zero());
}

TEST_CASE("N_n = N_{n-i+1}(N_i(..), ..) for n <= 4 on every fixture") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        const auto dim = m.basis->size();
        for (int n = 1; n <= 4; ++n) {
            const auto Nn = nary_bracket(m.bracket, n);
            for (int i = 1; i <= n; ++i) {
                const auto Ni = nary_bracket(m.bracket, i);
                const auto outer = nary_bracket(m.bracket, n - i + 1);
                for (const auto& t : all_tuples(dim, static_cast<std::size_t>(n))) {
                    std::vector<Element> args{Ni.apply_basis(std::span(t).first(static_cast<std::size_t>(i)))};
                    for (int k = i; k < n; ++k) args.push_back(v(t[static_cast<std::size_t>(k)]));
                    REQUIRE(Nn.apply_basis(t) == outer.apply(args));
                }
            }
        }
    }
}

TEST_CASE("rearrangement identity") {
    CHECK(check_rearrangement(MultiOp::zero(make_basis({{"x", 0}, {"y", 1}}), 2, 0)).empty());
    CHECK(check_rearrangement(l2(), 1).empty());
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        CHECK(check_rearrangement(load_fixture(name).bracket, 3).empty());
    }
    CHECK_FALSE(check_rearrangement(load_fixture("nonleibniz").bracket, 1).empty());
}

TEST_CASE("skewsymmetry") {
    const auto b = make_basis({{"x", 0}, {"y", 0}});
    CHECK(check_skewsymmetry(MultiOp::zero(b, 2, 0)).empty());
    MultiOp sym(b, 2, 0);
    sym.set({0, 1}, v(0));
    sym.set({1, 0}, v(0));
    const auto viol = check_skewsymmetry(sym, {}, {true});
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].tuple == Tuple{0, 1});
    CHECK(viol[0].residual == "x:2");

    CHECK(check_skewsymmetry(load_fixture("mc-dglie").bracket).empty());
    CHECK_FALSE(check_skewsymmetry(load_fixture("hemisemidirect").bracket).empty());
    CHECK_THROWS_AS(check_skewsymmetry(MultiOp::identity(b)), MalformedInput);
}

TEST_CASE("subalgebra closure") {
    const auto m = load_fixture("subalg-dglie");
    CHECK(check_closed(m.bracket, m.subalgebra).empty());
    const std::vector<int> ta{m.basis->find("t"), m.basis->find("a")};
    CHECK_FALSE(check_closed(m.bracket, ta).empty());
}

TEST_CASE("derivation spaces") {
    // D(e) = αe + βc, D(c) = 2αc.
    const auto basis0 = derivation_basis(l2(), 0);
    CHECK(basis0.size() == 2);
    for (const auto& D : basis0) CHECK(check_derivation(D, l2()).empty());
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        for (const auto& D : all_derivations(m.bracket)) CHECK(check_derivation(D, m.bracket).empty());
        for (int x = 0; x < static_cast<int>(m.basis->size()); ++x)
            CHECK(check_derivation(left_multiplication(m.bracket, x), m.bracket).empty());
    }
}
