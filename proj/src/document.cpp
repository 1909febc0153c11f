#include "shleib/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace shleib {

namespace {

std::string join_errors(const std::vector<LocatedError>& errors) {
    std::string s;
    for (const auto& e : errors) {
        if (!s.empty()) s += "\n";
        s += "line " + std::to_string(e.line) + " [" + e.field + "]: " + e.message;
    }
    return s;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

std::optional<int> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size() || s.size() - i > 9) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    return std::stoi(s);
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

class Parser {
public:
    std::vector<LocatedError> errors;
    AlgebraDocument doc;

    void error(int line, std::string field, std::string msg) { errors.push_back({line, std::move(field), std::move(msg)}); }

    /// combination := '0' | term {term}; term := NAME ':' RATIONAL
    std::optional<std::vector<Term>> combination(int line, const std::string& field, std::span<const std::string> toks) {
        if (toks.empty()) {
            error(line, field, "missing image after '='");
            return std::nullopt;
        }
        std::vector<Term> out;
        if (toks.size() == 1 && toks[0] == "0") return out;
        bool ok = true;
        for (const auto& t : toks) {
            const auto colon = t.find(':');
            if (colon == std::string::npos) {
                error(line, field, "term '" + t + "' is not name:coefficient");
                ok = false;
                continue;
            }
            const std::string name = t.substr(0, colon);
            if (!valid_name(name)) {
                error(line, field, "bad basis name '" + name + "'");
                ok = false;
                continue;
            }
            try {
                out.push_back({name, Scalar::parse(std::string_view(t).substr(colon + 1))});
            } catch (const std::invalid_argument& e) {
                error(line, field, e.what());
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return out;
    }

    void statement(int line, const std::vector<std::string>& tok, std::string_view raw) {
        const std::string& kw = tok[0];
        auto eq_at = [&](std::size_t pos) { return tok.size() > pos && tok[pos] == "="; };
        if (kw == "basis") {
            if (tok.size() != 3) return error(line, "basis", "expected: basis <name> <degree>");
            if (!valid_name(tok[1])) return error(line, "basis", "bad basis name '" + tok[1] + "'");
            const auto d = parse_int(tok[2]);
            if (!d) return error(line, "basis", "degree '" + tok[2] + "' is not an integer");
            doc.basis.push_back({tok[1], *d});
            basis_lines.push_back(line);
        } else if (kw == "bracket") {
            if (tok.size() < 5 || !eq_at(3)) return error(line, "bracket", "expected: bracket <x> <y> = <image>");
            auto img = combination(line, "bracket " + tok[1] + " " + tok[2], std::span(tok).subspan(4));
            if (img) doc.bracket.push_back({tok[1], tok[2], std::move(*img), line});
        } else if (kw == "delta" || kw == "gauge") {
            if (tok.size() < 2) return error(line, kw, "expected: " + kw + " <order> [<x> = <image>]");
            const auto k = parse_int(tok[1]);
            if (!k || *k < (kw == "delta" ? 0 : 1))
                return error(line, kw, "order '" + tok[1] + "' out of range");
            auto& slot = (kw == "delta" ? doc.deltas : doc.gauges)[*k];
            if (tok.size() == 2) return;
            if (tok.size() < 5 || !eq_at(3)) return error(line, kw, "expected: " + kw + " <order> <x> = <image>");
            auto img = combination(line, kw + " " + tok[1] + " " + tok[2], std::span(tok).subspan(4));
            if (img) slot.push_back({tok[2], std::move(*img), line});
        } else if (kw == "theta") {
            if (tok.size() < 4 || !eq_at(2)) return error(line, "theta", "expected: theta <order> = <image>");
            const auto k = parse_int(tok[1]);
            if (!k || *k < 1) return error(line, "theta", "order '" + tok[1] + "' out of range");
            if (doc.thetas.count(*k)) return error(line, "theta " + tok[1], "duplicate declaration");
            auto img = combination(line, "theta " + tok[1], std::span(tok).subspan(3));
            if (img) {
                doc.thetas[*k] = std::move(*img);
                theta_lines[*k] = line;
            }
        } else if (kw == "subalgebra") {
            if (tok.size() < 2) return error(line, "subalgebra", "expected at least one name");
            if (!doc.subalgebra.empty()) return error(line, "subalgebra", "declared twice");
            doc.subalgebra.assign(tok.begin() + 1, tok.end());
            subalgebra_line = line;
        } else if (kw == "meta") {
            const auto eq = raw.find('=');
            if (tok.size() < 3 || !eq_at(2) || eq == std::string_view::npos)
                return error(line, "meta", "expected: meta <key> = <value>");
            std::string value(raw.substr(eq + 1));
            const auto b = value.find_first_not_of(" \t");
            const auto e = value.find_last_not_of(" \t\r");
            value = b == std::string::npos ? "" : value.substr(b, e - b + 1);
            if (doc.metadata.count(tok[1])) return error(line, "meta " + tok[1], "duplicate key");
            doc.metadata[tok[1]] = value;
        } else {
            error(line, kw, "unknown statement '" + kw + "'");
        }
    }

    std::vector<int> basis_lines;
    std::map<int, int> theta_lines;
    int subalgebra_line = 0;
};

/// Validation shared by all images: names resolve and degrees match.
void check_image(const GradedBasis& basis, const std::vector<Term>& image, int degree, int line, const std::string& field,
                 std::vector<LocatedError>& errors) {
    std::set<std::string> seen;
    for (const auto& t : image) {
        const int idx = basis.find(t.name);
        if (idx < 0) {
            errors.push_back({line, field, "unknown basis name '" + t.name + "'"});
            continue;
        }
        if (!seen.insert(t.name).second) errors.push_back({line, field, "'" + t.name + "' repeated in image"});
        if (basis.degree(static_cast<std::size_t>(idx)) != degree)
            errors.push_back({line, field,
                              "degree mismatch: '" + t.name + "' has degree " +
                                  std::to_string(basis.degree(static_cast<std::size_t>(idx))) + ", expected " +
                                  std::to_string(degree)});
    }
}

int resolve(const GradedBasis& basis, const std::string& name, int line, const std::string& field,
            std::vector<LocatedError>& errors) {
    const int idx = basis.find(name);
    if (idx < 0) errors.push_back({line, field, "unknown basis name '" + name + "'"});
    return idx;
}

std::vector<Term> normalized(std::vector<Term> image, const GradedBasis& basis) {
    std::erase_if(image, [](const Term& t) { return t.coefficient.is_zero(); });
    std::sort(image.begin(), image.end(), [&](const Term& a, const Term& b) { return basis.find(a.name) < basis.find(b.name); });
    return image;
}

}  // namespace

DocumentError::DocumentError(std::vector<LocatedError> errors) : MalformedInput(join_errors(errors)), errors_(std::move(errors)) {}

AlgebraDocument parse_document(std::string_view text) {
    Parser p;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (!tok.empty()) p.statement(line_no, tok, line);
    }
    auto& errors = p.errors;
    auto& doc = p.doc;

    GradedBasis basis;
    try {
        basis = GradedBasis(doc.basis);
    } catch (const MalformedInput& e) {
        errors.push_back({p.basis_lines.empty() ? 0 : p.basis_lines.front(), "basis", e.what()});
        throw DocumentError(std::move(errors));
    }
    if (basis.size() == 0) errors.push_back({0, "basis", "no basis vectors declared"});

    std::set<std::pair<int, int>> bracket_seen;
    for (auto& b : doc.bracket) {
        const std::string field = "bracket " + b.left + " " + b.right;
        const int x = resolve(basis, b.left, b.line, field, errors);
        const int y = resolve(basis, b.right, b.line, field, errors);
        if (x < 0 || y < 0) continue;
        if (!bracket_seen.insert({x, y}).second) errors.push_back({b.line, field, "duplicate declaration"});
        check_image(basis, b.image, basis.degree(static_cast<std::size_t>(x)) + basis.degree(static_cast<std::size_t>(y)),
                    b.line, field, errors);
        b.image = normalized(std::move(b.image), basis);
    }
    auto check_maps = [&](std::map<int, std::vector<MapEntry>>& maps, const std::string& kw, int degree) {
        for (auto& [k, entries] : maps) {
            std::set<int> seen;
            for (auto& e : entries) {
                const std::string field = kw + " " + std::to_string(k) + " " + e.input;
                const int x = resolve(basis, e.input, e.line, field, errors);
                if (x < 0) continue;
                if (!seen.insert(x).second) errors.push_back({e.line, field, "duplicate declaration"});
                check_image(basis, e.image, basis.degree(static_cast<std::size_t>(x)) + degree, e.line, field, errors);
                e.image = normalized(std::move(e.image), basis);
            }
            std::sort(entries.begin(), entries.end(),
                      [&](const MapEntry& a, const MapEntry& b) { return basis.find(a.input) < basis.find(b.input); });
        }
    };
    check_maps(doc.deltas, "delta", 1);
    check_maps(doc.gauges, "gauge", 0);
    for (auto& [k, img] : doc.thetas) {
        check_image(basis, img, 1, p.theta_lines[k], "theta " + std::to_string(k), errors);
        img = normalized(std::move(img), basis);
    }
    if (!doc.thetas.empty())
        for (const auto& [k, entries] : doc.deltas)
            if (k != 0) {
                const int line = entries.empty() ? 0 : entries.front().line;
                errors.push_back({line, "delta " + std::to_string(k), "theta given: only delta 0 may be declared"});
            }
    std::set<std::string> sub_seen;
    for (const auto& n : doc.subalgebra) {
        resolve(basis, n, p.subalgebra_line, "subalgebra", errors);
        if (!sub_seen.insert(n).second) errors.push_back({p.subalgebra_line, "subalgebra", "'" + n + "' repeated"});
    }
    // Zero images carry no information; dropping them makes serialize() a true inverse.
    std::erase_if(doc.bracket, [](const BracketEntry& b) { return b.image.empty(); });
    for (auto* maps : {&doc.deltas, &doc.gauges})
        for (auto& [k, entries] : *maps) std::erase_if(entries, [](const MapEntry& e) { return e.image.empty(); });
    std::sort(doc.bracket.begin(), doc.bracket.end(), [&](const BracketEntry& a, const BracketEntry& b) {
        return std::pair(basis.find(a.left), basis.find(a.right)) < std::pair(basis.find(b.left), basis.find(b.right));
    });
    if (!errors.empty()) {
        std::stable_sort(errors.begin(), errors.end(), [](const LocatedError& a, const LocatedError& b) { return a.line < b.line; });
        throw DocumentError(std::move(errors));
    }
    return doc;
}

namespace {

std::string render_terms(const std::vector<Term>& img) {
    if (img.empty()) return "0";
    std::string s;
    for (const auto& t : img) {
        if (!s.empty()) s += ' ';
        s += t.name + ":" + t.coefficient.str();
    }
    return s;
}

std::vector<Term> terms_of(const Element& e, const GradedBasis& basis) {
    std::vector<Term> out;
    for (const auto& [b, c] : e.coefficients()) out.push_back({basis.name(static_cast<std::size_t>(b)), c});
    return out;
}

std::vector<MapEntry> entries_of(const MultiOp& f) {
    std::vector<MapEntry> out;
    for (const auto& [t, img] : f.constants()) out.push_back({f.basis().name(static_cast<std::size_t>(t[0])), terms_of(img, f.basis())});
    return out;
}

}  // namespace

std::string serialize(const AlgebraDocument& doc) {
    std::ostringstream out;
    for (const auto& [k, v] : doc.metadata) out << "meta " << k << " = " << v << '\n';
    for (const auto& b : doc.basis) out << "basis " << b.name << ' ' << b.degree << '\n';
    for (const auto& b : doc.bracket)
        if (!b.image.empty()) out << "bracket " << b.left << ' ' << b.right << " = " << render_terms(b.image) << '\n';
    auto maps = [&](const std::map<int, std::vector<MapEntry>>& m, const char* kw) {
        for (const auto& [k, entries] : m) {
            bool any = false;
            for (const auto& e : entries)
                if (!e.image.empty()) {
                    out << kw << ' ' << k << ' ' << e.input << " = " << render_terms(e.image) << '\n';
                    any = true;
                }
            if (!any) out << kw << ' ' << k << '\n';
        }
    };
    maps(doc.deltas, "delta");
    for (const auto& [k, img] : doc.thetas) out << "theta " << k << " = " << render_terms(img) << '\n';
    maps(doc.gauges, "gauge");
    if (!doc.subalgebra.empty()) {
        out << "subalgebra";
        for (const auto& n : doc.subalgebra) out << ' ' << n;
        out << '\n';
    }
    return out.str();
}

AlgebraDocument make_document(const MultiOp& bracket, const DeformationFamily* fam, const GaugeFamily* gauge) {
    AlgebraDocument doc;
    const auto& basis = bracket.basis();
    doc.basis = basis.entries();
    for (const auto& [t, img] : bracket.constants())
        doc.bracket.push_back({basis.name(static_cast<std::size_t>(t[0])), basis.name(static_cast<std::size_t>(t[1])),
                               terms_of(img, basis)});
    if (fam)
        for (int i = 0; i <= fam->order(); ++i) doc.deltas[i] = entries_of(fam->delta(i));
    if (gauge)
        for (int i = 1; i <= gauge->order(); ++i) doc.gauges[i] = entries_of(gauge->xi(i));
    return doc;
}

DeformationFamily Model::family() const {
    if (theta) return mc_to_deformation(bracket, delta0.value_or(MultiOp::zero(basis, 1, 1)), *theta);
    if (declared_deltas.empty()) throw PreconditionError("document declares no deformation family");
    return DeformationFamily(basis, declared_deltas);
}

Model build_model(const AlgebraDocument& doc) {
    Model m;
    m.basis = make_basis(doc.basis);
    const auto& basis = *m.basis;
    auto element = [&](const std::vector<Term>& img) {
        Element e;
        for (const auto& t : img) e.add_term(basis.find(t.name), t.coefficient);
        return e;
    };
    m.bracket = MultiOp(m.basis, 2, 0);
    for (const auto& b : doc.bracket) m.bracket.set({basis.find(b.left), basis.find(b.right)}, element(b.image));
    auto map_of = [&](const std::vector<MapEntry>& entries, int degree) {
        MultiOp f(m.basis, 1, degree);
        for (const auto& e : entries) f.set({basis.find(e.input)}, element(e.image));
        return f;
    };
    if (!doc.thetas.empty()) {
        McElement th;
        const int top = doc.thetas.rbegin()->first;
        for (int k = 1; k <= top; ++k) {
            const auto it = doc.thetas.find(k);
            th.thetas.push_back(it == doc.thetas.end() ? Element{} : element(it->second));
        }
        m.theta = std::move(th);
        if (const auto it = doc.deltas.find(0); it != doc.deltas.end()) m.delta0 = map_of(it->second, 1);
    } else if (!doc.deltas.empty()) {
        const int top = doc.deltas.rbegin()->first;
        for (int k = 0; k <= top; ++k) {
            const auto it = doc.deltas.find(k);
            m.declared_deltas.push_back(it == doc.deltas.end() ? MultiOp(m.basis, 1, 1) : map_of(it->second, 1));
        }
        m.delta0 = m.declared_deltas.front();
    }
    if (!doc.gauges.empty()) {
        std::vector<MultiOp> xis;
        const int top = doc.gauges.rbegin()->first;
        for (int k = 1; k <= top; ++k) {
            const auto it = doc.gauges.find(k);
            xis.push_back(it == doc.gauges.end() ? MultiOp(m.basis, 1, 0) : map_of(it->second, 0));
        }
        m.gauge = GaugeFamily(m.basis, std::move(xis));
    }
    for (const auto& n : doc.subalgebra) m.subalgebra.push_back(basis.find(n));
    m.metadata = doc.metadata;
    return m;
}

}  // namespace shleib
