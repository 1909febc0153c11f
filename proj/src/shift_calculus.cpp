#include "shleib/shift_calculus.hpp"

namespace shleib {

SymbolTensor SymbolTensor::word(SymbolWord w, Scalar coefficient) {
    SymbolTensor t;
    t.add_term(w, coefficient);
    return t;
}

void SymbolTensor::add_term(const SymbolWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SlotMap SlotMap::linear(const MultiOp& op) {
    if (op.arity() != 1) throw MalformedInput("SlotMap::linear needs an arity-1 map");
    return SlotMap(Kind::linear, &op);
}

int SlotMap::degree() const {
    switch (kind_) {
        case Kind::identity: return 0;
        case Kind::raise: return 1;
        case Kind::lower: return -1;
        case Kind::linear: return op_->degree();
    }
    return 0;
}

int symbol_degree(const GradedBasis& base, const GradedSymbol& s) {
    return base.degree(static_cast<std::size_t>(s.index)) + s.shift;
}

SymbolTensor apply_slots(std::span<const SlotMap> maps, const SymbolTensor& tensor, const GradedBasis& base) {
    SymbolTensor out;
    for (const auto& [word, coef] : tensor.terms()) {
        if (word.size() != maps.size()) throw MalformedInput("apply_slots: word length does not match operator");
        long exponent = 0;
        long passed = 0;
        for (std::size_t k = 0; k < word.size(); ++k) {
            exponent += static_cast<long>(maps[k].degree()) * passed;
            passed += symbol_degree(base, word[k]);
        }
        // Expand slot by slot; only linear slots can branch.
        std::vector<std::pair<SymbolWord, Scalar>> partial{{SymbolWord{}, coef * sign_power(exponent)}};
        for (std::size_t k = 0; k < word.size(); ++k) {
            std::vector<std::pair<SymbolWord, Scalar>> next;
            const GradedSymbol sym = word[k];
            const SlotMap& f = maps[k];
            for (auto& [prefix, c] : partial) {
                switch (f.kind_) {
                    case SlotMap::Kind::identity: {
                        auto w = prefix;
                        w.push_back(sym);
                        next.emplace_back(std::move(w), c);
                        break;
                    }
                    case SlotMap::Kind::raise:
                    case SlotMap::Kind::lower: {
                        auto w = prefix;
                        w.push_back({sym.index, sym.shift + f.degree()});
                        next.emplace_back(std::move(w), c);
                        break;
                    }
                    case SlotMap::Kind::linear: {
                        if (sym.shift != 0) throw MalformedInput("linear slot map applied to a shifted symbol");
                        const Element& img = f.op_->at({sym.index});
                        for (const auto& [b, v] : img.coefficients()) {
                            auto w = prefix;
                            w.push_back({b, 0});
                            next.emplace_back(std::move(w), c * v);
                        }
                        break;
                    }
                }
            }
            partial = std::move(next);
        }
        for (const auto& [w, c] : partial) out.add_term(w, c);
    }
    return out;
}

Element contract(const MultiOp& op, const SymbolTensor& tensor, int input_shift) {
    Element out;
    Tuple t(static_cast<std::size_t>(op.arity()));
    for (const auto& [word, coef] : tensor.terms()) {
        if (static_cast<int>(word.size()) != op.arity()) throw MalformedInput("contract: arity mismatch");
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (word[k].shift != input_shift) throw MalformedInput("contract: symbol shift does not match the operation's space");
            t[k] = word[k].index;
        }
        out.add_scaled(op.at(t), coef);
    }
    return out;
}

}  // namespace shleib
