#include "shleib/multiop.hpp"

#include <string>

namespace shleib {

namespace {

const Element& zero_element() {
    static const Element zero;
    return zero;
}

std::string render_tuple(const GradedBasis& basis, const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += basis.name(static_cast<std::size_t>(t[i]));
    }
    return s + ")";
}

}  // namespace

bool same_space(const GradedBasis& a, const GradedBasis& b) { return &a == &b || a == b; }

MultiOp::MultiOp(BasisPtr basis, int arity, int degree) : basis_(std::move(basis)), arity_(arity), degree_(degree) {
    if (!basis_) throw MalformedInput("MultiOp needs a basis");
    if (arity_ < 1) throw MalformedInput("MultiOp arity must be positive");
}

MultiOp MultiOp::identity(BasisPtr basis) {
    MultiOp op(basis, 1, 0);
    for (std::size_t i = 0; i < basis->size(); ++i) op.set({static_cast<int>(i)}, Element::basis_vector(static_cast<int>(i)));
    return op;
}

void MultiOp::set(const Tuple& tuple, Element image) {
    if (static_cast<int>(tuple.size()) != arity_)
        throw MalformedInput("tuple of length " + std::to_string(tuple.size()) + " for arity " + std::to_string(arity_));
    int target = degree_;
    for (int b : tuple) {
        if (b < 0 || static_cast<std::size_t>(b) >= basis_->size()) throw MalformedInput("basis index out of range");
        target += basis_->degree(static_cast<std::size_t>(b));
    }
    if (!image.is_homogeneous(*basis_, target))
        throw MalformedInput("degree-inhomogeneous constant at " + render_tuple(*basis_, tuple) + " -> " +
                             image.render(*basis_) + " (expected degree " + std::to_string(target) + ")");
    if (image.is_zero())
        constants_.erase(tuple);
    else
        constants_[tuple] = std::move(image);
}

void MultiOp::add(const Tuple& tuple, const Element& image, const Scalar& factor) {
    if (image.is_zero() || factor.is_zero()) return;
    Element next = at(tuple);
    next.add_scaled(image, factor);
    set(tuple, std::move(next));
}

const Element& MultiOp::at(const Tuple& tuple) const {
    auto it = constants_.find(tuple);
    return it == constants_.end() ? zero_element() : it->second;
}

Element MultiOp::apply_basis(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != arity_) throw MalformedInput("arity mismatch in apply");
    return at(Tuple(tuple.begin(), tuple.end()));
}

Element MultiOp::apply(std::span<const Element> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw MalformedInput("apply: " + std::to_string(args.size()) + " arguments for arity " + std::to_string(arity_));
    Element result;
    for (const auto& a : args)
        if (a.is_zero()) return result;
    // Walk the cartesian product of the argument supports.
    std::vector<Element::Map::const_iterator> it(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) it[i] = args[i].coefficients().begin();
    Tuple t(args.size());
    while (true) {
        Scalar coef = 1;
        for (std::size_t i = 0; i < args.size(); ++i) {
            t[i] = it[i]->first;
            coef *= it[i]->second;
        }
        const Element& img = at(t);
        if (!img.is_zero()) result.add_scaled(img, coef);
        std::size_t pos = args.size();
        while (pos > 0) {
            --pos;
            if (++it[pos] != args[pos].coefficients().end()) break;
            it[pos] = args[pos].coefficients().begin();
            if (pos == 0) return result;
        }
    }
}

void MultiOp::check_compatible(const MultiOp& o) const {
    if (arity_ != o.arity_ || degree_ != o.degree_) throw MalformedInput("adding MultiOps of different arity or degree");
    if (!same_space(*basis_, *o.basis_)) throw MalformedInput("adding MultiOps over different bases");
}

MultiOp& MultiOp::operator+=(const MultiOp& o) {
    check_compatible(o);
    for (const auto& [t, img] : o.constants_) add(t, img);
    return *this;
}

MultiOp& MultiOp::operator-=(const MultiOp& o) {
    check_compatible(o);
    for (const auto& [t, img] : o.constants_) add(t, img, -1);
    return *this;
}

MultiOp& MultiOp::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        constants_.clear();
        return *this;
    }
    for (auto& [t, img] : constants_) img *= s;
    return *this;
}

bool operator==(const MultiOp& a, const MultiOp& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && same_space(*a.basis_, *b.basis_) &&
           a.constants_ == b.constants_;
}

MultiOp MultiOp::rebased(BasisPtr basis, int degree) const {
    if (basis->size() != basis_->size()) throw MalformedInput("rebasing onto a basis of different size");
    MultiOp out(std::move(basis), arity_, degree);
    for (const auto& [t, img] : constants_) out.set(t, img);
    return out;
}

MultiOp compose(const MultiOp& a, const MultiOp& b) {
    if (a.arity() != 1 || b.arity() != 1) throw MalformedInput("compose expects arity-1 maps");
    if (!same_space(a.basis(), b.basis())) throw MalformedInput("compose: basis mismatch");
    MultiOp out(a.basis_ptr(), 1, a.degree() + b.degree());
    for (const auto& [t, img] : b.constants()) {
        const Element args[] = {img};
        out.set(t, a.apply(args));
    }
    return out;
}

MultiOp commutator(const MultiOp& a, const MultiOp& b) {
    MultiOp out = compose(a, b);
    out -= sign_power(static_cast<long>(a.degree()) * b.degree()) * compose(b, a);
    return out;
}

MultiOp linear_map(BasisPtr basis, int degree, const std::map<int, Element>& images) {
    MultiOp out(std::move(basis), 1, degree);
    for (const auto& [i, img] : images) out.set({i}, img);
    return out;
}

}  // namespace shleib
