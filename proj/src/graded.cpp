#include "shleib/graded.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace shleib {

GradedBasis::GradedBasis(std::vector<BasisEntry> entries) : entries_(std::move(entries)) {
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.name.empty()) throw MalformedInput("empty basis name");
        if (!seen.insert(e.name).second) throw MalformedInput("duplicate basis name '" + e.name + "'");
    }
}

int GradedBasis::find(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> GradedBasis::degrees() const {
    std::vector<int> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.degree);
    return out;
}

Element Element::basis_vector(int index, Scalar coefficient) {
    Element e;
    e.add_term(index, coefficient);
    return e;
}

Scalar Element::coefficient(int index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Scalar(0) : it->second;
}

void Element::add_term(int index, const Scalar& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(index, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void Element::add_scaled(const Element& other, const Scalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [i, c] : other.coeffs_) add_term(i, c * factor);
}

Element& Element::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [i, c] : coeffs_) c *= s;
    return *this;
}

bool Element::is_homogeneous(const GradedBasis& basis, int degree) const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [&](const auto& kv) { return basis.degree(static_cast<std::size_t>(kv.first)) == degree; });
}

int Element::degree(const GradedBasis& basis) const {
    if (coeffs_.empty()) throw MalformedInput("zero element has no degree");
    const int d = basis.degree(static_cast<std::size_t>(coeffs_.begin()->first));
    if (!is_homogeneous(basis, d)) throw MalformedInput("element is not homogeneous");
    return d;
}

std::string Element::render(const GradedBasis& basis) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
        if (!first) os << ' ';
        first = false;
        os << basis.name(static_cast<std::size_t>(i)) << ':' << c;
    }
    return os.str();
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 1 || static_cast<std::size_t>(v) > images_.size() || seen[static_cast<std::size_t>(v - 1)])
            throw MalformedInput("not a permutation of {1..n}");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
}

int Permutation::sign() const {
    int s = 1;
    for (std::size_t p = 0; p < images_.size(); ++p)
        for (std::size_t q = p + 1; q < images_.size(); ++q)
            if (images_[p] > images_[q]) s = -s;
    return s;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t p = 0; p < images_.size(); ++p) inv[static_cast<std::size_t>(images_[p] - 1)] = static_cast<int>(p + 1);
    return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw MalformedInput("composing permutations of different sizes");
    std::vector<int> im(a.size());
    for (std::size_t p = 0; p < im.size(); ++p) im[p] = a(b.images_[p]);
    return Permutation(std::move(im));
}

std::vector<int> Permutation::permute(std::span<const int> degrees) const {
    if (degrees.size() != images_.size()) throw MalformedInput("degree list size does not match permutation size");
    std::vector<int> out(images_.size());
    for (std::size_t p = 0; p < images_.size(); ++p) out[p] = degrees[static_cast<std::size_t>(images_[p] - 1)];
    return out;
}

Scalar koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
    if (degrees.size() != sigma.size())
        throw MalformedInput("koszul_sign: " + std::to_string(degrees.size()) + " degrees for a permutation of size " +
                             std::to_string(sigma.size()));
    // Each inversion in the output sequence is one pair of symbols that passed
    // each other.
    const auto& im = sigma.images();
    long odd_swaps = 0;
    for (std::size_t p = 0; p < im.size(); ++p) {
        const int dp = degrees[static_cast<std::size_t>(im[p] - 1)];
        if (dp % 2 == 0) continue;
        for (std::size_t q = p + 1; q < im.size(); ++q)
            if (im[p] > im[q] && degrees[static_cast<std::size_t>(im[q] - 1)] % 2 != 0) ++odd_swaps;
    }
    return sign_power(odd_swaps);
}

Scalar anti_koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
    return Scalar(sigma.sign()) * koszul_sign(sigma, degrees);
}

std::vector<Permutation> unshuffles(int p, int q) {
    if (p < 0 || q < 0) throw MalformedInput("unshuffles: negative block size");
    const int n = p + q;
    std::vector<Permutation> out;
    out.reserve(binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(p)));
    // Choose the first block as a p-subset in lexicographic order; the second
    // block is its complement in increasing order.
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    std::fill(chosen.begin(), chosen.begin() + p, true);
    do {
        std::vector<int> im;
        im.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (chosen[static_cast<std::size_t>(i)]) im.push_back(i + 1);
        for (int i = 0; i < n; ++i)
            if (!chosen[static_cast<std::size_t>(i)]) im.push_back(i + 1);
        out.emplace_back(std::move(im));
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    return out;
}

GradedBasis shifted_degrees(const GradedBasis& basis, Shift direction) {
    const int delta = direction == Shift::raise ? 1 : -1;
    std::vector<BasisEntry> entries = basis.entries();
    for (auto& e : entries) e.degree += delta;
    return GradedBasis(std::move(entries));
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::vector<int>> all_tuples(std::size_t dim, std::size_t length) {
    std::vector<std::vector<int>> out;
    if (dim == 0 && length > 0) return out;
    std::vector<int> t(length, 0);
    while (true) {
        out.push_back(t);
        std::size_t pos = length;
        while (pos > 0) {
            --pos;
            if (static_cast<std::size_t>(++t[pos]) < dim) break;
            t[pos] = 0;
            if (pos == 0) return out;
        }
        if (length == 0) return out;
    }
}

}  // namespace shleib
