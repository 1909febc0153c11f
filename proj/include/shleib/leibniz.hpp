#pragma once

#include "shleib/check.hpp"
#include "shleib/multiop.hpp"

#include <span>
#include <vector>

namespace shleib {

/// (V, {,}) with a degree-0 bracket satisfying the left Leibniz identity.
struct LeibnizAlgebra {
    BasisPtr basis;
    MultiOp bracket;
};

/// Leibniz algebra with a square-zero degree +1 derivation.
struct DgLeibnizAlgebra {
    LeibnizAlgebra algebra;
    MultiOp differential;
};

/// {x,{y,z}} - {{x,y},z} - (-1)^{|x||y|}{y,{x,z}} on basis vectors.
Element leibniz_residual(const MultiOp& bracket, int x, int y, int z);
/// Checks the left Leibniz identity on every basis triple.
Violations check_leibniz_identity(const MultiOp& bracket, const CheckOptions& opt = {});

/// D{x,y} - {Dx,y} - (-1)^{|x||D|}{x,Dy} on basis vectors.
Element derivation_residual(const MultiOp& D, const MultiOp& bracket, int x, int y);
Violations check_derivation(const MultiOp& D, const MultiOp& bracket, const CheckOptions& opt = {});

struct DifferentialVerdict {
    bool degree_ok = false;
    Violations derivation;
    Violations square;  // nonzero D(D(x)), tuple = (x)
    [[nodiscard]] bool ok() const { return degree_ok && derivation.empty() && square.empty(); }
};
DifferentialVerdict check_differential(const MultiOp& D, const MultiOp& bracket, const CheckOptions& opt = {});

/// Left-nested bracket {...{{x_1,x_2},x_3},...,x_n} of elements (n >= 1).
Element nested_bracket(const MultiOp& bracket, std::span<const Element> args);

/// N_i as an arity-i degree-0 MultiOp (N_1 = identity).
MultiOp nary_bracket(const MultiOp& bracket, int i);

/// N_iD(x_1..x_i) = {...{Dx_1,x_2},...,x_i}; N_1D = D.
MultiOp n_i_d(const MultiOp& bracket, const MultiOp& D, int i);

/// Residual of
///   N_{n+2}(A,B,y_1..y_n) + (-1)^{AB}{B,N_{n+1}(A,y..)} - Σ_a (-1)^{B(y_1+..+y_{a-1})} N_{n+1}(A,..,{B,y_a},..)
/// at the basis tuple (A,B,y_1..y_n), n >= 1.
Element rearrangement_residual(const MultiOp& bracket, const Tuple& tuple);
/// All tuples with 1 <= n <= max_n; scope = n.
Violations check_rearrangement(const MultiOp& bracket, int max_n = 3, const CheckOptions& opt = {});

/// Graded skewsymmetry under adjacent transpositions on tuples drawn from
/// sub_basis (indices into op's basis; empty = whole basis). scope = the
/// transposed slot (1-based); residual = op(..y,x..) + (-1)^{|x||y|} op(..x,y..).
Violations check_skewsymmetry(const MultiOp& op, std::span<const int> sub_basis = {}, const CheckOptions& opt = {});

/// Tuples from sub_basis whose image leaves span(sub_basis).
Violations check_closed(const MultiOp& op, std::span<const int> sub_basis, const CheckOptions& opt = {});

/// Basis of the space of degree-`degree` derivations of the bracket, found by
/// exact Gaussian elimination. Deterministic.
std::vector<MultiOp> derivation_basis(const MultiOp& bracket, int degree);

/// Derivation bases for every degree that can map some basis vector to another.
std::vector<MultiOp> all_derivations(const MultiOp& bracket);

/// Left multiplication ad_x = {x,-}, a derivation of degree |x|.
MultiOp left_multiplication(const MultiOp& bracket, int x);

}  // namespace shleib
