#include "shleib/leibniz.hpp"

#include <algorithm>
#include <set>

namespace shleib {

std::string render_tuple(const GradedBasis& basis, const Tuple& tuple) {
    std::string s = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += ", ";
        s += basis.name(static_cast<std::size_t>(tuple[i]));
    }
    return s + ")";
}

namespace {

Element bracket_of(const MultiOp& bracket, const Element& a, const Element& b) {
    const Element args[] = {a, b};
    return bracket.apply(args);
}

Element unary(const MultiOp& op, const Element& a) {
    const Element args[] = {a};
    return op.apply(args);
}

void require_bracket(const MultiOp& bracket) {
    if (bracket.arity() != 2) throw MalformedInput("bracket must have arity 2");
}

int dim(const MultiOp& op) { return static_cast<int>(op.basis().size()); }

Violation make_violation(const GradedBasis& basis, std::string label, int scope, Tuple t, const Element& residual) {
    return Violation{std::move(label), scope, std::move(t), residual.render(basis)};
}

}  // namespace

Element leibniz_residual(const MultiOp& bracket, int x, int y, int z) {
    const auto X = Element::basis_vector(x), Y = Element::basis_vector(y), Z = Element::basis_vector(z);
    const auto& b = bracket.basis();
    Element r = bracket_of(bracket, X, bracket_of(bracket, Y, Z));
    r -= bracket_of(bracket, bracket_of(bracket, X, Y), Z);
    r.add_scaled(bracket_of(bracket, Y, bracket_of(bracket, X, Z)),
                 -sign_power(static_cast<long>(b.degree(static_cast<std::size_t>(x))) * b.degree(static_cast<std::size_t>(y))));
    return r;
}

Violations check_leibniz_identity(const MultiOp& bracket, const CheckOptions& opt) {
    require_bracket(bracket);
    if (bracket.degree() != 0) throw MalformedInput("Leibniz bracket must have degree 0");
    Violations out;
    const int n = dim(bracket);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Element r = leibniz_residual(bracket, x, y, z);
                if (!r.is_zero()) {
                    out.push_back(make_violation(bracket.basis(), "leibniz", 3, {x, y, z}, r));
                    if (stop_now(out, opt)) return out;
                }
            }
    return out;
}

Element derivation_residual(const MultiOp& D, const MultiOp& bracket, int x, int y) {
    const auto X = Element::basis_vector(x), Y = Element::basis_vector(y);
    Element r = unary(D, bracket_of(bracket, X, Y));
    r -= bracket_of(bracket, unary(D, X), Y);
    const long sgn = static_cast<long>(bracket.basis().degree(static_cast<std::size_t>(x))) * D.degree();
    r.add_scaled(bracket_of(bracket, X, unary(D, Y)), -sign_power(sgn));
    return r;
}

Violations check_derivation(const MultiOp& D, const MultiOp& bracket, const CheckOptions& opt) {
    require_bracket(bracket);
    if (D.arity() != 1) throw MalformedInput("derivation must have arity 1");
    if (!same_space(D.basis(), bracket.basis())) throw MalformedInput("derivation and bracket over different bases");
    Violations out;
    const int n = dim(bracket);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Element r = derivation_residual(D, bracket, x, y);
            if (!r.is_zero()) {
                out.push_back(make_violation(bracket.basis(), "derivation", 2, {x, y}, r));
                if (stop_now(out, opt)) return out;
            }
        }
    return out;
}

DifferentialVerdict check_differential(const MultiOp& D, const MultiOp& bracket, const CheckOptions& opt) {
    DifferentialVerdict v;
    v.degree_ok = D.arity() == 1 && D.degree() == 1;
    v.derivation = check_derivation(D, bracket, opt);
    const MultiOp sq = compose(D, D);
    for (const auto& [t, img] : sq.constants()) {
        v.square.push_back(make_violation(D.basis(), "square-zero", 1, t, img));
        if (stop_now(v.square, opt)) break;
    }
    return v;
}

Element nested_bracket(const MultiOp& bracket, std::span<const Element> args) {
    if (args.empty()) throw MalformedInput("nested bracket of no arguments");
    Element acc = args[0];
    for (std::size_t k = 1; k < args.size() && !acc.is_zero(); ++k) acc = bracket_of(bracket, acc, args[k]);
    if (args.size() > 1 && acc.is_zero()) return Element{};
    return acc;
}

MultiOp nary_bracket(const MultiOp& bracket, int i) {
    return n_i_d(bracket, MultiOp::identity(bracket.basis_ptr()), i);
}

MultiOp n_i_d(const MultiOp& bracket, const MultiOp& D, int i) {
    require_bracket(bracket);
    if (i < 1) throw MalformedInput("n_i_d: i must be positive");
    if (D.arity() != 1) throw MalformedInput("n_i_d: D must have arity 1");
    if (i == 1) return D;
    MultiOp out(bracket.basis_ptr(), i, D.degree());
    const int n = dim(bracket);
    // Build left to right: level k holds {...{Dx_1,x_2},...,x_k} for every prefix.
    std::map<Tuple, Element> level;
    for (const auto& [t, img] : D.constants()) level.emplace(t, img);
    for (int k = 2; k <= i; ++k) {
        std::map<Tuple, Element> next;
        for (const auto& [t, acc] : level)
            for (int x = 0; x < n; ++x) {
                Element r = bracket_of(bracket, acc, Element::basis_vector(x));
                if (r.is_zero()) continue;
                Tuple t2 = t;
                t2.push_back(x);
                next.emplace(std::move(t2), std::move(r));
            }
        level = std::move(next);
    }
    for (auto& [t, img] : level) out.set(t, std::move(img));
    return out;
}

Element rearrangement_residual(const MultiOp& bracket, const Tuple& tuple) {
    if (tuple.size() < 3) throw MalformedInput("rearrangement identity needs (A, B, y_1..y_n) with n >= 1");
    const auto& basis = bracket.basis();
    std::vector<Element> e;
    for (int b : tuple) e.push_back(Element::basis_vector(b));
    const int degA = basis.degree(static_cast<std::size_t>(tuple[0]));
    const int degB = basis.degree(static_cast<std::size_t>(tuple[1]));
    const Element& B = e[1];

    Element r = nested_bracket(bracket, e);

    std::vector<Element> ay{e[0]};
    ay.insert(ay.end(), e.begin() + 2, e.end());
    r.add_scaled(bracket_of(bracket, B, nested_bracket(bracket, ay)), sign_power(static_cast<long>(degA) * degB));

    long passed = 0;
    for (std::size_t a = 1; a < ay.size(); ++a) {
        auto args = ay;
        args[a] = bracket_of(bracket, B, ay[a]);
        r.add_scaled(nested_bracket(bracket, args), -sign_power(static_cast<long>(degB) * passed));
        passed += basis.degree(static_cast<std::size_t>(tuple[a + 1]));
    }
    return r;
}

Violations check_rearrangement(const MultiOp& bracket, int max_n, const CheckOptions& opt) {
    require_bracket(bracket);
    Violations out;
    for (int n = 1; n <= max_n; ++n)
        for (const auto& t : all_tuples(bracket.basis().size(), static_cast<std::size_t>(n + 2))) {
            Element r = rearrangement_residual(bracket, t);
            if (!r.is_zero()) {
                out.push_back(make_violation(bracket.basis(), "rearrangement", n, t, r));
                if (stop_now(out, opt)) return out;
            }
        }
    return out;
}

namespace {

std::vector<int> resolve_sub_basis(const MultiOp& op, std::span<const int> sub_basis) {
    std::vector<int> sub(sub_basis.begin(), sub_basis.end());
    if (sub.empty())
        for (int i = 0; i < dim(op); ++i) sub.push_back(i);
    for (int b : sub)
        if (b < 0 || b >= dim(op)) throw MalformedInput("sub-basis index out of range");
    return sub;
}

template <typename F>
bool for_each_tuple_over(const std::vector<int>& sub, int arity, F&& f) {
    for (const auto& idx : all_tuples(sub.size(), static_cast<std::size_t>(arity))) {
        Tuple t;
        t.reserve(idx.size());
        for (int i : idx) t.push_back(sub[static_cast<std::size_t>(i)]);
        if (!f(t)) return false;
    }
    return true;
}

}  // namespace

Violations check_skewsymmetry(const MultiOp& op, std::span<const int> sub_basis, const CheckOptions& opt) {
    if (op.arity() < 2) throw MalformedInput("skewsymmetry needs arity >= 2");
    const auto sub = resolve_sub_basis(op, sub_basis);
    const auto& basis = op.basis();
    Violations out;
    for_each_tuple_over(sub, op.arity(), [&](const Tuple& t) {
        for (std::size_t p = 0; p + 1 < t.size(); ++p) {
            Tuple swapped = t;
            std::swap(swapped[p], swapped[p + 1]);
            const long e = static_cast<long>(basis.degree(static_cast<std::size_t>(t[p]))) *
                           basis.degree(static_cast<std::size_t>(t[p + 1]));
            Element r = op.at(swapped);
            r.add_scaled(op.at(t), sign_power(e));
            if (!r.is_zero()) {
                out.push_back(make_violation(basis, "skewsymmetry", static_cast<int>(p + 1), t, r));
                if (stop_now(out, opt)) return false;
            }
        }
        return true;
    });
    return out;
}

Violations check_closed(const MultiOp& op, std::span<const int> sub_basis, const CheckOptions& opt) {
    const auto sub = resolve_sub_basis(op, sub_basis);
    const std::set<int> members(sub.begin(), sub.end());
    Violations out;
    for_each_tuple_over(sub, op.arity(), [&](const Tuple& t) {
        Element outside;
        for (const auto& [b, c] : op.at(t).coefficients())
            if (!members.count(b)) outside.add_term(b, c);
        if (!outside.is_zero()) {
            out.push_back(make_violation(op.basis(), "closure", op.arity(), t, outside));
            if (stop_now(out, opt)) return false;
        }
        return true;
    });
    return out;
}

namespace {

/// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<std::vector<Scalar>>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        const Scalar inv = Scalar(1) / m[row][c];
        for (auto& v : m[row]) v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            const Scalar f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<MultiOp> derivation_basis(const MultiOp& bracket, int degree) {
    require_bracket(bracket);
    const auto& basis = bracket.basis();
    const int n = dim(bracket);
    // Unknowns: coefficient of target t in D(b), for |t| = |b| + degree.
    std::vector<std::pair<int, int>> vars;
    std::map<std::pair<int, int>, std::size_t> var_index;
    for (int b = 0; b < n; ++b)
        for (int t = 0; t < n; ++t)
            if (basis.degree(static_cast<std::size_t>(t)) == basis.degree(static_cast<std::size_t>(b)) + degree) {
                var_index[{b, t}] = vars.size();
                vars.emplace_back(b, t);
            }
    if (vars.empty()) return {};

    std::vector<std::vector<Scalar>> rows;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const long sx = static_cast<long>(basis.degree(static_cast<std::size_t>(x))) * degree;
            std::map<int, std::vector<Scalar>> eq;  // output coordinate -> row
            auto coeff = [&](int out, std::size_t var) -> Scalar& {
                auto [it, ins] = eq.try_emplace(out, std::vector<Scalar>(vars.size()));
                return it->second[var];
            };
            // D{x,y}
            for (const auto& [b, c] : bracket.at({x, y}).coefficients())
                for (int t = 0; t < n; ++t)
                    if (auto it = var_index.find({b, t}); it != var_index.end()) coeff(t, it->second) += c;
            // -{Dx,y}
            for (int t = 0; t < n; ++t)
                if (auto it = var_index.find({x, t}); it != var_index.end())
                    for (const auto& [o, c] : bracket.at({t, y}).coefficients()) coeff(o, it->second) -= c;
            // -(-1)^{|x||D|}{x,Dy}
            for (int t = 0; t < n; ++t)
                if (auto it = var_index.find({y, t}); it != var_index.end())
                    for (const auto& [o, c] : bracket.at({x, t}).coefficients()) coeff(o, it->second) -= sign_power(sx) * c;
            for (auto& [o, row] : eq)
                if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) rows.push_back(std::move(row));
        }

    const auto pivots = rref(rows, vars.size());
    std::vector<bool> is_pivot(vars.size(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<MultiOp> out;
    for (std::size_t free = 0; free < vars.size(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> sol(vars.size());
        sol[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = -rows[r][free];
        std::map<int, Element> images;
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (!sol[v].is_zero()) images[vars[v].first].add_term(vars[v].second, sol[v]);
        out.push_back(linear_map(bracket.basis_ptr(), degree, images));
    }
    return out;
}

std::vector<MultiOp> all_derivations(const MultiOp& bracket) {
    const auto degs = bracket.basis().degrees();
    if (degs.empty()) return {};
    const auto [lo, hi] = std::minmax_element(degs.begin(), degs.end());
    std::vector<MultiOp> out;
    for (int d = *lo - *hi; d <= *hi - *lo; ++d)
        for (auto& D : derivation_basis(bracket, d)) out.push_back(std::move(D));
    return out;
}

MultiOp left_multiplication(const MultiOp& bracket, int x) {
    require_bracket(bracket);
    MultiOp out(bracket.basis_ptr(), 1, bracket.basis().degree(static_cast<std::size_t>(x)));
    for (int y = 0; y < dim(bracket); ++y) out.set({y}, bracket.at({x, y}));
    return out;
}

}  // namespace shleib
