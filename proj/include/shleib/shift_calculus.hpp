#pragma once

#include "shleib/multiop.hpp"

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace shleib {

/// A basis vector of V carried through some number of shift operators:
/// the symbol s^shift(x_index), of degree |x| + shift.
struct GradedSymbol {
    int index = 0;
    int shift = 0;
    friend auto operator<=>(const GradedSymbol&, const GradedSymbol&) = default;
};

using SymbolWord = std::vector<GradedSymbol>;

/// Linear combination of tensor words of shifted symbols. Used to evaluate
/// composites like s∘N_i∘(s^{-1})^{⊗i}∘(sδs^{-1}⊗1) with every Koszul sign
/// produced mechanically rather than by hand.
class SymbolTensor {
public:
    using Map = std::map<SymbolWord, Scalar>;

    SymbolTensor() = default;
    static SymbolTensor word(SymbolWord w, Scalar coefficient = 1);

    void add_term(const SymbolWord& w, const Scalar& c);
    [[nodiscard]] const Map& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const SymbolTensor&, const SymbolTensor&) = default;

private:
    Map terms_;
};

/// One tensor factor of a graded operator f_1⊗...⊗f_n.
class SlotMap {
public:
    enum class Kind { identity, raise, lower, linear };

    static SlotMap identity() { return SlotMap(Kind::identity, nullptr); }
    static SlotMap raise() { return SlotMap(Kind::raise, nullptr); }
    static SlotMap lower() { return SlotMap(Kind::lower, nullptr); }
    /// An arity-1 map on V; it may only act on unshifted symbols.
    static SlotMap linear(const MultiOp& op);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int degree() const;

private:
    SlotMap(Kind kind, const MultiOp* op) : kind_(kind), op_(op) {}
    friend SymbolTensor apply_slots(std::span<const SlotMap>, const SymbolTensor&, const GradedBasis&);

    Kind kind_;
    const MultiOp* op_;
};

[[nodiscard]] int symbol_degree(const GradedBasis& base, const GradedSymbol& s);

/// (f_1⊗...⊗f_n)(y_1⊗...⊗y_n) = (-1)^{Σ_k |f_k|(|y_1|+...+|y_{k-1}|)} f_1y_1⊗...⊗f_ny_n,
/// extended linearly. Every word in the tensor must have length n.
SymbolTensor apply_slots(std::span<const SlotMap> maps, const SymbolTensor& tensor, const GradedBasis& base);

/// Feeds every word into op. All symbols must carry the same shift, and op's
/// basis must be the base space shifted by that amount. The result lives in
/// op's space.
Element contract(const MultiOp& op, const SymbolTensor& tensor, int input_shift);

}  // namespace shleib
