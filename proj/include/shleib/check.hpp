#pragma once

#include "shleib/multiop.hpp"

#include <string>
#include <vector>

namespace shleib {

/// One failing instance of an identity check: which identity (label), at which
/// scope (Const, word length, order, arity pair ...), on which basis tuple, and
/// the nonzero residual rendered as name:coefficient pairs.
struct Violation {
    std::string label;
    int scope = 0;
    Tuple tuple;
    std::string residual;
    friend bool operator==(const Violation&, const Violation&) = default;
};

using Violations = std::vector<Violation>;

/// Exhaustive collection is the default; first_violation stops at the first hit.
struct CheckOptions {
    bool first_violation = false;
};

inline bool stop_now(const Violations& v, const CheckOptions& opt) { return opt.first_violation && !v.empty(); }

std::string render_tuple(const GradedBasis& basis, const Tuple& tuple);

}  // namespace shleib
