#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixture_util.hpp"

#include "shleib/graded.hpp"
#include "shleib/scalar.hpp"
#include "shleib/shift_calculus.hpp"

#include <algorithm>
#include <numeric>

using namespace shleib;

namespace {

// Sign of reordering symbols 1..n into (σ(1)..σ(n)) by adjacent swaps, each
// swap of degrees a, b contributing (-1)^{ab}. front_first pulls σ(1) to the
// front first; otherwise σ(n) is pushed to the back first.
int swap_oracle(const Permutation& sigma, const std::vector<int>& degrees, bool front_first) {
    const int n = static_cast<int>(sigma.size());
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::iota(cur.begin(), cur.end(), 1);
    int sign = 1;
    auto swap_at = [&](int k) {
        const int a = degrees[static_cast<std::size_t>(cur[k] - 1)];
        const int b = degrees[static_cast<std::size_t>(cur[k + 1] - 1)];
        if ((a * b) % 2 != 0) sign = -sign;
        std::swap(cur[k], cur[k + 1]);
    };
    if (front_first) {
        for (int p = 0; p < n; ++p) {
            int k = static_cast<int>(std::find(cur.begin(), cur.end(), sigma(p + 1)) - cur.begin());
            while (k > p) swap_at(--k);
        }
    } else {
        for (int p = n - 1; p >= 0; --p) {
            int k = static_cast<int>(std::find(cur.begin(), cur.end(), sigma(p + 1)) - cur.begin());
            while (k < p) swap_at(k++);
        }
    }
    return sign;
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
    return out;
}

std::vector<std::vector<int>> degree_lists(int n, int max_degree) {
    std::vector<std::vector<int>> out;
    for (const auto& t : all_tuples(static_cast<std::size_t>(max_degree + 1), static_cast<std::size_t>(n))) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("scalar normalization and parsing") {
    CHECK(Scalar::parse("4/6") == Scalar(2, 3));
    CHECK(Scalar::parse("-4/6").str() == "-2/3");
    CHECK(Scalar::parse("+3").str() == "3");
    CHECK(Scalar(3, -6).str() == "-1/2");
    CHECK(Scalar::parse("0/5").is_zero());
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse(""), std::invalid_argument);
    CHECK(inverse_factorial(0) == Scalar(1));
    CHECK(inverse_factorial(4) == Scalar(1, 24));
    CHECK(Scalar(1, 3) + Scalar(1, 6) == Scalar(1, 2));
}

TEST_CASE("element stores no zero coefficients") {
    const auto b = make_basis({{"x", 0}, {"y", 1}});
    Element e = Element::basis_vector(0, 2);
    e.add_term(0, -2);
    CHECK(e.is_zero());
    CHECK(e.render(*b) == "0");
    Element f = Element::basis_vector(1, Scalar(1, 2)) + Element::basis_vector(0, 3);
    CHECK(f.render(*b) == "x:3 y:1/2");
    CHECK_FALSE(f.is_homogeneous(*b, 0));
    CHECK_THROWS_AS((void)f.degree(*b), MalformedInput);
    CHECK(Element::basis_vector(1).degree(*b) == 1);
}

TEST_CASE("basis names are unique") {
    CHECK_THROWS_AS(GradedBasis({{"x", 0}, {"x", 1}}), MalformedInput);
    const GradedBasis b({{"x", 0}, {"y", 1}});
    CHECK(b.find("y") == 1);
    CHECK(b.find("z") == -1);
}

TEST_CASE("permutation validity, composition and inverse") {
    CHECK_THROWS_AS(Permutation({1, 1}), MalformedInput);
    CHECK_THROWS_AS(Permutation({0, 1}), MalformedInput);
    const Permutation c({2, 3, 1});
    const Permutation t({2, 1, 3});
    CHECK((c * t).images() == std::vector<int>{3, 2, 1});
    CHECK(c * c.inverse() == Permutation::identity(3));
    CHECK(c.sign() == 1);
    CHECK(t.sign() == -1);
    const std::vector<int> d{5, 6, 7};
    CHECK(c.permute(d) == std::vector<int>{6, 7, 5});
}

TEST_CASE("koszul sign examples") {
    CHECK(koszul_sign(Permutation::identity(3), std::vector<int>{1, 1, 1}) == Scalar(1));
    CHECK(koszul_sign(Permutation({2, 1}), std::vector<int>{1, 1}) == Scalar(-1));
    const Permutation cycle({2, 3, 1});
    const std::vector<int> d{1, 1, 2};
    const int front = swap_oracle(cycle, d, true);
    const int back = swap_oracle(cycle, d, false);
    CHECK(front == back);
    CHECK(koszul_sign(cycle, d) == Scalar(front));
    // x3 (degree 2) passes nobody odd-odd; x1 passes x2: both odd.
    CHECK(front == -1);
    CHECK_THROWS_AS(koszul_sign(cycle, std::vector<int>{1, 1}), MalformedInput);
}

TEST_CASE("anti-koszul sign examples") {
    CHECK(anti_koszul_sign(Permutation::identity(4), std::vector<int>{1, 0, 1, 1}) == Scalar(1));
    CHECK(anti_koszul_sign(Permutation({2, 1}), std::vector<int>{1, 2}) == Scalar(-1));
    const std::vector<int> d{0, 1, 1, 2};
    for (const auto& s : all_permutations(4))
        CHECK(anti_koszul_sign(s, d) == Scalar(s.sign() * swap_oracle(s, d, true)));
}

TEST_CASE("koszul sign matches both decomposition oracles on S_4") {
    for (const auto& d : degree_lists(4, 1))
        for (const auto& s : all_permutations(4)) {
            const int a = swap_oracle(s, d, true);
            CHECK(a == swap_oracle(s, d, false));
            CHECK(koszul_sign(s, d) == Scalar(a));
        }
}

TEST_CASE("koszul sign is a homomorphism for n <= 4, degrees in {0,1,2}") {
    // Reordering by tau and then by sigma is the reordering by tau*sigma.
    for (int n = 1; n <= 4; ++n) {
        const auto perms = all_permutations(n);
        for (const auto& d : degree_lists(n, 2))
            for (const auto& s : perms)
                for (const auto& t : perms) {
                    const auto dt = t.permute(d);
                    REQUIRE(koszul_sign(t * s, d) == koszul_sign(s, dt) * koszul_sign(t, d));
                }
    }
}

TEST_CASE("unshuffles agree with a brute-force filter") {
    CHECK(unshuffles(2, 1).size() == 3);
    CHECK(unshuffles(0, 3) == std::vector<Permutation>{Permutation::identity(3)});
    CHECK(unshuffles(0, 0).size() == 1);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 5; ++q) {
            std::vector<Permutation> brute;
            for (const auto& s : all_permutations(p + q)) {
                bool ok = true;
                for (int a = 1; a < p; ++a) ok = ok && s(a) < s(a + 1);
                for (int a = p + 1; a < p + q; ++a) ok = ok && s(a) < s(a + 1);
                if (ok) brute.push_back(s);
            }
            CHECK(unshuffles(p, q) == brute);
            CHECK(brute.size() == binomial(static_cast<std::size_t>(p + q), static_cast<std::size_t>(p)));
        }
    CHECK(unshuffles(2, 2).size() == 6);
}

TEST_CASE("shifted degrees") {
    const GradedBasis b({{"x", -1}, {"y", 0}, {"z", 2}});
    CHECK(shifted_degrees(b, Shift::lower).degrees() == std::vector<int>{-2, -1, 1});
    CHECK(shifted_degrees(b, Shift::raise).degrees() == std::vector<int>{0, 1, 3});
    CHECK(shifted_degrees(shifted_degrees(b, Shift::raise), Shift::lower) == b);
}

TEST_CASE("shift sign rule (s⊗s) = (s⊗1)(1⊗s) = -(1⊗s)(s⊗1) on every fixture pair") {
    const SlotMap ss[] = {SlotMap::raise(), SlotMap::raise()};
    const SlotMap s1[] = {SlotMap::raise(), SlotMap::identity()};
    const SlotMap one_s[] = {SlotMap::identity(), SlotMap::raise()};
    int pairs = 0;
    for (const char* name : kValidFixtures) {
        const auto m = load_fixture(name);
        const auto& b = *m.basis;
        for (int x = 0; x < static_cast<int>(b.size()); ++x)
            for (int y = 0; y < static_cast<int>(b.size()); ++y) {
                const auto w = SymbolTensor::word({{x, 0}, {y, 0}});
                const auto both = apply_slots(ss, w, b);
                const auto right_first = apply_slots(s1, apply_slots(one_s, w, b), b);
                const auto left_first = apply_slots(one_s, apply_slots(s1, w, b), b);
                CHECK(both == right_first);
                SymbolTensor neg;
                for (const auto& [word, c] : left_first.terms()) neg.add_term(word, -c);
                CHECK(both == neg);
                // (s⊗s)(x⊗y) = (-1)^{|x|} sx⊗sy
                CHECK(both == SymbolTensor::word({{x, 1}, {y, 1}}, sign_power(b.degree(x))));
                ++pairs;
            }
    }
    CHECK(pairs > 0);
}

TEST_CASE("all_tuples is lexicographic") {
    const auto t = all_tuples(2, 2);
    CHECK(t == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(binomial(5, 2) == 10);
}
