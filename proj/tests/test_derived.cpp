#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixture_util.hpp"

#include "shleib/derived.hpp"
#include "shleib/gauge.hpp"
#include "shleib/leibniz.hpp"

using namespace shleib;

namespace {

Element v(int i, Scalar c = 1) { return Element::basis_vector(i, std::move(c)); }

// mc-dglie with one extra δ_0 constant h -> q; breaks δ_0² = 0.
DeformationFamily perturbed_mc(const Model& m) {
    auto deltas = m.family().deltas();
    deltas[0].add({m.basis->find("h")}, v(m.basis->find("q")));
    return DeformationFamily(m.basis, deltas);
}

}  // namespace

TEST_CASE("derived bracket prefactors") {
    const int expect[] = {1, 1, -1, -1, 1};
    for (int i = 1; i <= 5; ++i) CHECK(derived_bracket_prefactor(i) == Scalar(expect[i - 1]));
}

TEST_CASE("explicit form sign") {
    CHECK(explicit_form_sign(std::vector<int>{1}) == Scalar(1));
    CHECK(explicit_form_sign(std::vector<int>{1, 0}) == Scalar(-1));
    CHECK(explicit_form_sign(std::vector<int>{0, 1}) == Scalar(1));
    CHECK(explicit_form_sign(std::vector<int>{0, 1, 0}) == Scalar(-1));
    CHECK(explicit_form_sign(std::vector<int>{1, 0, 1}) == Scalar(1));
    CHECK(explicit_form_sign(std::vector<int>{1, 0, 1, 0}) == Scalar(1));
    CHECK(explicit_form_sign(std::vector<int>{1, 0, 0, 0}) == Scalar(-1));
}

TEST_CASE("sh Leibniz coefficient") {
    CHECK(homleib_sign(Permutation::identity(0), 1, 1, std::vector<int>{}) == Scalar(1));
    // k = 3, j = 2, σ = (2 1) on degrees (1, 0): χ = -1, (-1)^{2·1} = 1, prefix x_2 = 0.
    CHECK(homleib_sign(Permutation({2, 1}), 3, 2, std::vector<int>{1, 0}) == Scalar(-1));
    // Same σ on degrees (0, 1): χ = -1, prefix x_2 = 1 gives (-1)^2.
    CHECK(homleib_sign(Permutation({2, 1}), 3, 2, std::vector<int>{0, 1}) == Scalar(-1));
    // k = 2, j = 2: (-1)^{(1)(1)}.
    CHECK(homleib_sign(Permutation::identity(1), 2, 2, std::vector<int>{3}) == Scalar(-1));
    // k = 2, j = 1, σ = id on one letter of degree 1: (-1)^{1·1}.
    CHECK(homleib_sign(Permutation::identity(1), 2, 1, std::vector<int>{1}) == Scalar(-1));
}

TEST_CASE("deformation families are validated") {
    const auto b = make_basis({{"x", 0}, {"y", 1}});
    CHECK_THROWS_AS(DeformationFamily(b, {}), MalformedInput);
    CHECK_THROWS_AS(DeformationFamily(b, {MultiOp::zero(b, 1, 0)}), MalformedInput);
    CHECK_THROWS_AS(DeformationFamily(b, {MultiOp::zero(b, 2, 1)}), MalformedInput);
    const DeformationFamily fam(b, {MultiOp::zero(b, 1, 1)});
    CHECK(fam.order() == 0);
    CHECK(fam.delta(3).is_zero());
}

TEST_CASE("l_1 is δ_0 transported to sV and l_2(sx,sy) = (-1)^x s{δ_1x,y}") {
    const auto m = load_fixture("mc-dglie");
    const auto fam = m.family();
    const auto sb = make_shifted(m.basis);
    const auto l1 = derived_bracket(m.bracket, fam.delta(0), 1, sb);
    CHECK(l1.degree() == 1);
    CHECK(l1 == fam.delta(0).rebased(sb, 1));
    const int q = m.basis->find("q"), r = m.basis->find("r"), h = m.basis->find("h"), p = m.basis->find("p");
    CHECK(l1.at({q}) == v(r));

    const auto l2 = derived_bracket(m.bracket, fam.delta(1), 2, sb);
    CHECK(l2.degree() == 0);
    for (const auto& t : all_tuples(m.basis->size(), 2)) {
        const Element dx = fam.delta(1).apply_basis(std::vector<int>{t[0]});
        const Element expect = sign_power(m.basis->degree(static_cast<std::size_t>(t[0]))) *
                               m.bracket.apply(std::vector<Element>{dx, v(t[1])});
        REQUIRE(l2.at(t) == expect);
    }
    // δ_1 = ad p: l_2(sh, sp) = {[p,h], p} = -{p,p} = -r.
    CHECK(l2.at({h, p}) == v(r, -1));
    for (int i = 1; i <= 4; ++i) CHECK(derived_bracket(m.bracket, fam.delta(1), i, sb).degree() == 2 - i);
}

TEST_CASE("both constructions of l_i agree on every fixture") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        const auto fam = m.family();
        CHECK(compare_derived_routes(m.bracket, fam).empty());
        CHECK(compare_partial_routes(m.bracket, fam).empty());
        const auto sb = make_shifted(m.basis);
        // Also for δ's that are not part of any family.
        for (const auto& D : all_derivations(m.bracket)) {
            if (D.degree() != 1) continue;
            for (int i = 1; i <= 4; ++i)
                REQUIRE(derived_bracket(m.bracket, D, i, sb) == derived_bracket_explicit(m.bracket, D, i, sb));
        }
    }
}

TEST_CASE("sh structure shapes") {
    const auto a = load_fixture("abelian4");
    const auto fa = a.family();
    const auto sa = build_sh_structure(a.bracket, fa);
    CHECK(sa.max_arity() == fa.order() + 1);
    CHECK(*sa.op(1) == fa.delta(0).rebased(sa.shifted_basis, 1));
    for (int i = 2; i <= sa.max_arity(); ++i) CHECK(sa.op(i)->is_zero());
    CHECK(sa.op(7) == nullptr);
    CHECK(check_sh_leibniz(sa, 6).empty());

    const auto l = load_fixture("l2b");
    const auto s = build_sh_structure(l.bracket, l.family());
    CHECK(s.op(1)->is_zero());
    // l_2(se, se) = s{δ_1e, e} = s{b, e} = 0, and so on for every pair.
    CHECK(s.op(2)->is_zero());
    CHECK(vacuous_consts(s, 6) == std::vector<int>{2, 3, 4, 5, 6});
    const auto mc = load_fixture("mc-dglie");
    CHECK(vacuous_consts(build_sh_structure(mc.bracket, mc.family()), 8) == std::vector<int>{7, 8});
}

TEST_CASE("∂_i = N_iδ_{i-1}") {
    const auto m = load_fixture("l2b");
    const auto fam = m.family();
    CHECK(partial_i(m.bracket, fam.delta(0), 1) == fam.delta(0));
    CHECK(partial_i(m.bracket, fam.delta(1), 2) == n_i_d(m.bracket, fam.delta(1), 2));
    CHECK(partial_i(m.bracket, MultiOp::zero(m.basis, 1, 1), 3).is_zero());
    const auto sb = make_shifted(m.basis);
    CHECK(unshift_operation(derived_bracket(m.bracket, fam.delta(1), 2, sb), m.basis) ==
          partial_i(m.bracket, fam.delta(1), 2));
    const auto d = codifferential(m.bracket, fam);
    CHECK(d.component(1) == fam.delta(0));
    CHECK(d.component(2) == n_i_d(m.bracket, fam.delta(1), 2));
}

TEST_CASE("valid fixtures satisfy both routes") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        const auto fam = m.family();
        CHECK(check_sh_leibniz(build_sh_structure(m.bracket, fam), 6).empty());
        CHECK(check_codifferential(m.bracket, fam, 4).empty());
    }
}

TEST_CASE("a perturbed δ fails both routes with reproducible witnesses") {
    const auto m = load_fixture("mc-dglie");
    const auto bad = perturbed_mc(m);
    const auto kc = check_deformation(m.bracket, bad);
    REQUIRE_FALSE(kc.empty());
    CHECK(kc[0].label == "keycond");
    CHECK(kc[0].scope == 0);

    const auto s = build_sh_structure(m.bracket, bad);
    const auto sh = check_sh_leibniz(s, 6);
    REQUIRE_FALSE(sh.empty());
    CHECK(sh[0].scope == 2);
    CHECK(sh[0].tuple == Tuple{m.basis->find("h")});
    CHECK(sh[0].residual == "r:1");
    for (const auto& w : sh) CHECK(sh_residual(s, w.tuple).render(*s.shifted_basis) == w.residual);

    const auto dd = check_codifferential(m.bracket, bad, 4);
    REQUIRE_FALSE(dd.empty());
    const auto d = codifferential(m.bracket, bad);
    for (const auto& w : dd) CHECK(codifferential_square(d, w.tuple).render(*m.basis) == w.residual);

    const auto first = check_sh_leibniz(s, 6, {true});
    CHECK(first.size() == 1);
    CHECK(first[0] == sh[0]);
}

TEST_CASE("key lemma") {
    const auto m = load_fixture("l2b");
    const auto ders = all_derivations(m.bracket);
    REQUIRE(ders.size() >= 2);
    for (const auto& D : ders)
        for (const auto& Dp : ders) {
            CHECK(hom_bracket(D, Dp) == commutator(D, Dp));
            for (int i = 1; i <= 5; ++i)
                for (int j = 1; i + j <= 6; ++j) REQUIRE(check_key_lemma(m.bracket, D, Dp, i, j).empty());
        }
    const auto notder = MultiOp::identity(m.basis);
    CHECK_THROWS_AS(check_key_lemma(m.bracket, notder, ders[0], 1, 1), PreconditionError);
}

TEST_CASE("Leibniz cohomology subcomplex") {
    const auto m = load_fixture("l2b");
    const auto d1 = m.family().delta(1);
    const std::vector<MultiOp> just_d1{d1};
    CHECK(leibniz_cohomology_check(m.bracket, d1, just_d1, 3).empty());
    CHECK(leibniz_cohomology_check(m.bracket, d1, all_derivations(m.bracket), 3).empty());
    // δ_1 = ad p on mc-dglie is not square-zero.
    const auto mc = load_fixture("mc-dglie");
    CHECK_THROWS_AS(leibniz_cohomology_check(mc.bracket, mc.family().delta(1), just_d1, 1), PreconditionError);
}

TEST_CASE("binary derived bracket of a differential is Leibniz on sV") {
    for (const char* name : kValidFixtures) {
        CAPTURE(name);
        const auto m = load_fixture(name);
        const auto sb = make_shifted(m.basis);
        for (const auto& D : all_derivations(m.bracket)) {
            if (D.degree() != 1 || !check_differential(D, m.bracket).ok()) continue;
            CHECK(check_leibniz_identity(derived_bracket(m.bracket, D, 2, sb)).empty());
        }
    }
}
