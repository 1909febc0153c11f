#pragma once

#include "shleib/derived.hpp"
#include "shleib/gauge.hpp"
#include "shleib/graded.hpp"
#include "shleib/multiop.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shleib {

/// One "name:coefficient" summand of a declared image.
struct Term {
    std::string name;
    Scalar coefficient;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Line numbers are kept for error reporting only and ignored by ==.
struct BracketEntry {
    std::string left, right;
    std::vector<Term> image;
    int line = 0;
    friend bool operator==(const BracketEntry& a, const BracketEntry& b) {
        return a.left == b.left && a.right == b.right && a.image == b.image;
    }
};

struct MapEntry {
    std::string input;
    std::vector<Term> image;
    int line = 0;
    friend bool operator==(const MapEntry& a, const MapEntry& b) { return a.input == b.input && a.image == b.image; }
};

struct AlgebraDocument {
    std::vector<BasisEntry> basis;
    std::vector<BracketEntry> bracket;
    std::map<int, std::vector<MapEntry>> deltas;  // order -> entries (possibly empty)
    std::map<int, std::vector<MapEntry>> gauges;
    std::map<int, std::vector<Term>> thetas;
    std::vector<std::string> subalgebra;
    std::map<std::string, std::string> metadata;
    friend bool operator==(const AlgebraDocument&, const AlgebraDocument&) = default;
};

struct LocatedError {
    int line = 0;
    std::string field;
    std::string message;
};

class DocumentError : public MalformedInput {
public:
    explicit DocumentError(std::vector<LocatedError> errors);
    [[nodiscard]] const std::vector<LocatedError>& errors() const { return errors_; }

private:
    std::vector<LocatedError> errors_;
};

/// Parses and validates (names resolve, images are degree homogeneous, no
/// duplicate declarations). Throws DocumentError listing every problem found.
AlgebraDocument parse_document(std::string_view text);

/// Canonical text: meta, basis, bracket, delta, theta, gauge, subalgebra; entries
/// in basis order, zero images omitted.
std::string serialize(const AlgebraDocument& doc);

/// Inverse of parse for the algebraic content: builds a document from objects.
AlgebraDocument make_document(const MultiOp& bracket, const DeformationFamily* fam = nullptr,
                              const GaugeFamily* gauge = nullptr);

/// The mathematical objects a document describes.
struct Model {
    BasisPtr basis;
    MultiOp bracket;
    std::optional<MultiOp> delta0;
    std::optional<McElement> theta;
    std::optional<GaugeFamily> gauge;
    std::vector<int> subalgebra;
    std::map<std::string, std::string> metadata;
    /// Orders declared with delta lines (not theta); 0..m.
    std::vector<MultiOp> declared_deltas;

    [[nodiscard]] bool has_family() const { return !declared_deltas.empty() || theta.has_value(); }
    /// The declared family, or (δ_0, ad θ_1, ..) when θ is given. Throws McError
    /// for a non-solution.
    [[nodiscard]] DeformationFamily family() const;
};

Model build_model(const AlgebraDocument& doc);

}  // namespace shleib
