#include "shleib/report.hpp"

#include "shleib/coalgebra.hpp"
#include "shleib/derived.hpp"
#include "shleib/gauge.hpp"
#include "shleib/leibniz.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <sstream>

namespace shleib {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds{
        "validate",       "check-leibniz",           "check-deformation", "derive",   "check-sh",
        "check-codifferential", "check-key-lemma", "gauge",            "check-gauge-equivalence",
        "check-coalgebra", "report-all"};
    return cmds;
}

void validate_options(const RunOptions& opt) {
    if (opt.max_const < 2 || opt.max_const > 12) throw UsageError("--max-const must be in [2, 12]");
    if (opt.max_word_len < 1 || opt.max_word_len > 8) throw UsageError("--max-word-len must be in [1, 8]");
    if (opt.max_arity < 1 || opt.max_arity > 5) throw UsageError("--max-arity must be in [1, 5]");
}

namespace {

using Scope = std::map<std::string, std::string>;

Witness witness_of(const GradedBasis& basis, const Violation& v) {
    Witness w{v.label, v.scope, {}, v.residual};
    for (int b : v.tuple) w.tuple.push_back(basis.name(static_cast<std::size_t>(b)));
    return w;
}

CheckResult result(std::string name, Scope scope, const Violations& v, const GradedBasis& basis, std::string note = "") {
    CheckResult r{std::move(name), std::move(scope), v.empty() ? Verdict::pass : Verdict::fail, v.size(), std::nullopt,
                  std::move(note)};
    if (!v.empty()) r.witness = witness_of(basis, v.front());
    return r;
}

CheckResult skipped(std::string name, std::string note) {
    return {std::move(name), {}, Verdict::skipped, 0, std::nullopt, std::move(note)};
}

std::string str(int n) { return std::to_string(n); }

Table table_of(std::string title, const MultiOp& f) {
    Table t{std::move(title), {}};
    for (const auto& [tuple, img] : f.constants()) t.rows.push_back(render_tuple(f.basis(), tuple) + " = " + img.render(f.basis()));
    if (t.rows.empty()) t.rows.push_back("0");
    return t;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s.empty() ? "none" : s;
}

class Runner {
public:
    Runner(const AlgebraDocument& doc, const RunOptions& opt, Report& rep)
        : model_(build_model(doc)), opt_(opt), check_opt_{opt.first_violation}, rep_(rep) {}

    void run(const std::string& cmd) {
        static const std::map<std::string, void (Runner::*)()> table{
            {"validate", &Runner::validate},
            {"check-leibniz", &Runner::leibniz},
            {"check-deformation", &Runner::deformation},
            {"derive", &Runner::derive},
            {"check-sh", &Runner::sh},
            {"check-codifferential", &Runner::codifferential_cmd},
            {"check-key-lemma", &Runner::key_lemma},
            {"gauge", &Runner::gauge},
            {"check-gauge-equivalence", &Runner::gauge_equivalence},
            {"check-coalgebra", &Runner::coalgebra},
            {"report-all", &Runner::all},
        };
        const auto it = table.find(cmd);
        if (it == table.end()) throw UsageError("unknown command '" + cmd + "'");
        (this->*(it->second))();
    }

private:
    const GradedBasis& basis() const { return *model_.basis; }
    void add(CheckResult r) { rep_.checks.push_back(std::move(r)); }

    /// The deformation family, or nullptr after recording why it is unavailable.
    const DeformationFamily* family() {
        if (family_) return &*family_;
        if (family_failed_) return nullptr;
        if (!model_.has_family()) throw MalformedInput("document declares no deformation family (delta or theta lines)");
        if (model_.theta) {
            try {
                family_ = model_.family();
                add(result("mc-equation", {{"orders", "1.." + str(2 * static_cast<int>(model_.theta->thetas.size()))}}, {},
                           basis()));
            } catch (const McError& e) {
                Violations v{{"mc-equation", e.order(), {}, e.residual()}};
                add(result("mc-equation", {{"orders", "1.." + str(2 * static_cast<int>(model_.theta->thetas.size()))}}, v,
                           basis(), "first failing order " + str(e.order())));
                family_failed_ = true;
                return nullptr;
            }
        } else {
            family_ = model_.family();
        }
        return &*family_;
    }

    const GaugeFamily& gauge_family() {
        if (!model_.gauge) throw MalformedInput("document declares no gauge (gauge lines)");
        return *model_.gauge;
    }

    void validate() {
        add(result("leibniz-identity", {}, check_leibniz_identity(model_.bracket, check_opt_), basis()));
        if (model_.has_family())
            if (const auto* fam = family()) add_deformation_check(*fam);
        if (model_.gauge) add_gauge_derivations();
        if (!model_.subalgebra.empty())
            add(result("subalgebra-closed", {}, check_closed(model_.bracket, model_.subalgebra, check_opt_), basis()));
    }

    void leibniz() {
        add(result("leibniz-identity", {}, check_leibniz_identity(model_.bracket, check_opt_), basis()));
        add(result("rearrangement", {{"max_n", "3"}}, check_rearrangement(model_.bracket, 3, check_opt_), basis()));
    }

    void add_deformation_check(const DeformationFamily& fam) {
        add(result("deformation", {{"order", str(fam.order())}, {"keycond_orders", "0.." + str(2 * fam.order())}},
                   check_deformation(model_.bracket, fam, std::nullopt, check_opt_), basis()));
    }

    void add_gauge_derivations() {
        Violations v;
        const auto& g = *model_.gauge;
        for (int i = 1; i <= g.order(); ++i)
            for (auto x : check_derivation(g.xi(i), model_.bracket, check_opt_)) {
                x.label = "gauge-derivation";
                x.scope = i;
                v.push_back(std::move(x));
            }
        add(result("gauge-derivation", {{"order", str(g.order())}}, v, basis()));
    }

    void deformation() {
        if (const auto* fam = family()) add_deformation_check(*fam);
    }

    void derive() {
        const auto* fam = family();
        if (!fam) return;
        const auto s = build_sh_structure(model_.bracket, *fam);
        add(result("derived-routes", {{"max_arity", str(s.max_arity())}}, compare_derived_routes(model_.bracket, *fam, check_opt_),
                   *s.shifted_basis));
        for (int i = 1; i <= s.max_arity(); ++i) rep_.tables.push_back(table_of("l_" + str(i), *s.op(i)));
    }

    void sh() {
        const auto* fam = family();
        if (!fam) return;
        const auto s = build_sh_structure(model_.bracket, *fam);
        add(result("derived-routes", {{"max_arity", str(s.max_arity())}}, compare_derived_routes(model_.bracket, *fam, check_opt_),
                   *s.shifted_basis));
        add(result("sh-leibniz", {{"max_const", str(opt_.max_const)}}, check_sh_leibniz(s, opt_.max_const, check_opt_),
                   *s.shifted_basis,
                   "vacuous Const: " + join(vacuous_consts(s, opt_.max_const)) +
                       "; every term vanishes for Const > " + str(2 * s.max_arity())));
    }

    void codifferential_cmd() {
        const auto* fam = family();
        if (!fam) return;
        add(result("partial-routes", {{"max_arity", str(fam->order() + 1)}},
                   compare_partial_routes(model_.bracket, *fam, check_opt_), basis()));
        add(result("codifferential", {{"max_word_len", str(opt_.max_word_len)}},
                   check_codifferential(model_.bracket, *fam, opt_.max_word_len, check_opt_), basis()));
    }

    void key_lemma() {
        const auto ders = all_derivations(model_.bracket);
        Violations v;
        std::size_t pairs = 0;
        for (const auto& D : ders)
            for (const auto& Dp : ders)
                for (int i = 1; i <= opt_.max_arity; ++i)
                    for (int j = 1; j <= opt_.max_arity; ++j) {
                        if (stop_now(v, check_opt_)) break;
                        ++pairs;
                        for (auto& x : check_key_lemma(model_.bracket, D, Dp, i, j, check_opt_)) v.push_back(std::move(x));
                    }
        add(result("key-lemma",
                   {{"max_arity", str(opt_.max_arity)}, {"derivations", str(static_cast<int>(ders.size()))},
                    {"instances", str(static_cast<int>(pairs))}},
                   v, basis()));
    }

    void gauge() {
        const auto& g = gauge_family();
        add_gauge_derivations();
        const auto* fam = family();
        if (!fam) return;
        const auto out = gauge_transform(*fam, g, fam->order());
        add(result("gauge-deformation", {{"order", str(out.order())}},
                   check_deformation(model_.bracket, out, out.order(), check_opt_), basis(),
                   "transformed family checked modulo t^" + str(out.order() + 1)));
        for (int i = 0; i <= out.order(); ++i) rep_.tables.push_back(table_of("delta'_" + str(i), out.delta(i)));
        const auto xi = build_xi(model_.bracket, g);
        for (const auto& [a, f] : xi.components()) rep_.tables.push_back(table_of("Xi arity " + str(a), f));
    }

    void gauge_equivalence() {
        const auto& g = gauge_family();
        const auto* fam = family();
        if (!fam) return;
        const Violations v = check_gauge_equivalence(model_.bracket, *fam, g, opt_.max_word_len, check_opt_);
        const Scope scope{{"max_word_len", str(opt_.max_word_len)}};
        for (const char* label : {"gauge-derivation", "rlas1", "rlas2", "eqpa-operator", "eqpa-components", "inverse"}) {
            Violations part;
            for (const auto& x : v)
                if (x.label == label) part.push_back(x);
            add(result(std::string("gauge/") + label, scope, part, basis()));
        }
        Violations part;
        for (const auto& x : v)
            if (x.label.starts_with("deformation/")) part.push_back(x);
        add(result("gauge/deformation", {{"order", str(std::max(fam->order(), opt_.max_word_len - 1))}}, part, basis()));
    }

    /// Every arity-1 or -2 map the document defines, plus N_iδ_{i-1}.
    std::vector<std::pair<std::string, MultiOp>> document_maps() {
        std::vector<std::pair<std::string, MultiOp>> maps{{"bracket", model_.bracket}};
        if (model_.has_family())
            if (const auto* fam = family())
                for (int i = 0; i <= fam->order(); ++i) {
                    maps.emplace_back("delta_" + str(i), fam->delta(i));
                    if (i >= 1) maps.emplace_back("N_" + str(i + 1) + "delta_" + str(i), partial_i(model_.bracket, fam->delta(i), i + 1));
                }
        if (model_.gauge)
            for (int i = 1; i <= model_.gauge->order(); ++i) maps.emplace_back("xi_" + str(i), model_.gauge->xi(i));
        return maps;
    }

    void coalgebra() {
        const int len = std::max(opt_.max_word_len, 1);
        add(result("dual-leibniz", {{"max_word_len", str(len)}}, check_dual_leibniz(basis(), len, check_opt_), basis()));
        const auto maps = document_maps();
        Violations axiom, decomposition, roundtrip, hom;
        for (const auto& [name, f] : maps) {
            for (auto x : check_coderivation_axiom(lift_coderivation(f), len, check_opt_)) {
                x.label = name;
                axiom.push_back(std::move(x));
            }
            for (auto x : check_decomposition(f, len, check_opt_)) {
                x.label = name;
                decomposition.push_back(std::move(x));
            }
            for (auto x : check_corestriction_roundtrip(f)) {
                x.label = name;
                roundtrip.push_back(std::move(x));
            }
        }
        const int hom_len = std::min(len, 4);
        for (const auto& [nf, f] : maps)
            for (const auto& [ng, g] : maps) {
                if (f.arity() + g.arity() - 1 > hom_len) continue;
                for (auto x : check_hom_bracket_lift(f, g, hom_len, check_opt_)) {
                    x.label = "(" + nf + ", " + ng + ")";
                    hom.push_back(std::move(x));
                }
            }
        const Scope scope{{"max_word_len", str(len)}, {"maps", str(static_cast<int>(maps.size()))}};
        add(result("coderivation-axiom", scope, axiom, basis()));
        add(result("decomposition", scope, decomposition, basis()));
        add(result("corestriction-roundtrip", {{"maps", str(static_cast<int>(maps.size()))}}, roundtrip, basis()));
        add(result("hom-bracket-lift", {{"max_word_len", str(hom_len)}}, hom, basis()));
    }

    void sh_lie() {
        if (model_.subalgebra.empty()) return;
        const auto* fam = family();
        if (!fam) return;
        const auto s = build_sh_structure(model_.bracket, *fam);
        Violations closed, skew;
        for (int i = 1; i <= s.max_arity(); ++i) {
            for (auto x : check_closed(*s.op(i), model_.subalgebra, check_opt_)) {
                x.label = "l_" + str(i);
                closed.push_back(std::move(x));
            }
            if (i >= 2)
                for (auto x : check_skewsymmetry(*s.op(i), model_.subalgebra, check_opt_)) {
                    x.label = "l_" + str(i);
                    skew.push_back(std::move(x));
                }
        }
        add(result("subalgebra-closed", {{"max_arity", str(s.max_arity())}}, closed, *s.shifted_basis));
        add(result("sh-lie", {{"max_arity", str(s.max_arity())}}, skew, *s.shifted_basis));
    }

    void binary_derived() {
        const auto* fam = family();
        if (!fam) return;
        const auto shifted = make_shifted(model_.basis);
        bool any = false;
        for (int i = 0; i <= fam->order(); ++i) {
            const MultiOp& d = fam->delta(i);
            if (d.is_zero() || !check_differential(d, model_.bracket, {true}).ok()) continue;
            any = true;
            const MultiOp l2 = derived_bracket(model_.bracket, d, 2, shifted);
            add(result("binary-derived-leibniz", {{"differential", "delta_" + str(i)}},
                       check_leibniz_identity(l2, check_opt_), *shifted));
        }
        if (!any) add(skipped("binary-derived-leibniz", "no nonzero δ_i of the family is a differential"));
    }

    void cohomology() {
        const auto* fam = family();
        if (!fam) return;
        if (fam->order() < 1) return add(skipped("leibniz-cohomology", "the family has no δ_1"));
        const MultiOp d1 = fam->delta(1);
        if (!check_differential(d1, model_.bracket, {true}).ok())
            return add(skipped("leibniz-cohomology", "δ_1 is not a square-zero derivation"));
        const auto ders = all_derivations(model_.bracket);
        add(result("leibniz-cohomology", {{"i_max", "3"}, {"derivations", str(static_cast<int>(ders.size()))}},
                   leibniz_cohomology_check(model_.bracket, d1, ders, 3, check_opt_), basis()));
    }

    void all() {
        validate();
        add(result("rearrangement", {{"max_n", "3"}}, check_rearrangement(model_.bracket, 3, check_opt_), basis()));
        if (model_.has_family() && family()) {
            sh();
            codifferential_cmd();
            binary_derived();
            sh_lie();
            cohomology();
        }
        key_lemma();
        coalgebra();
        if (model_.gauge && model_.has_family() && family()) gauge_equivalence();
    }

    Model model_;
    RunOptions opt_;
    CheckOptions check_opt_;
    Report& rep_;
    std::optional<DeformationFamily> family_;
    bool family_failed_ = false;
};

}  // namespace

Report run_command(const AlgebraDocument& doc, const std::string& command, const RunOptions& opt, const std::string& input_name) {
    validate_options(opt);
    Report rep;
    rep.command = command;
    rep.input = input_name;
    const auto t0 = std::chrono::steady_clock::now();
    Runner(doc, opt, rep).run(command);
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : rep.checks)
        if (c.verdict == Verdict::fail) rep.verdict = Verdict::fail;
    return rep;
}

int exit_code(const Report& r) { return r.verdict == Verdict::fail ? 1 : 0; }

std::string render_text(const Report& r, bool include_timing) {
    std::ostringstream out;
    out << "command: " << r.command << '\n';
    if (!r.input.empty()) out << "input: " << r.input << '\n';
    for (const auto& c : r.checks) {
        out << to_string(c.verdict) << "  " << c.name;
        if (!c.scope.empty()) {
            out << " [";
            bool first = true;
            for (const auto& [k, v] : c.scope) {
                out << (first ? "" : " ") << k << '=' << v;
                first = false;
            }
            out << ']';
        }
        if (c.verdict == Verdict::fail) out << "  " << c.violation_count << " violation(s)";
        out << '\n';
        if (c.witness) {
            const auto& w = *c.witness;
            out << "      witness: " << w.label << " scope=" << w.scope << " tuple=(";
            for (std::size_t i = 0; i < w.tuple.size(); ++i) out << (i ? ", " : "") << w.tuple[i];
            out << ") residual=" << w.residual << '\n';
        }
        if (!c.note.empty()) out << "      note: " << c.note << '\n';
    }
    for (const auto& t : r.tables) {
        out << "table " << t.title << '\n';
        for (const auto& row : t.rows) out << "  " << row << '\n';
    }
    out << "verdict: " << to_string(r.verdict) << '\n';
    if (include_timing) out << "timing_ms: " << static_cast<long long>(r.timing_ms) << '\n';
    return out.str();
}

std::string render_structured(const Report& r, bool include_timing) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["command"] = r.command;
    j["input"] = r.input;
    j["verdict"] = to_string(r.verdict);
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["scope"] = ordered_json::object();
        for (const auto& [k, v] : c.scope) cj["scope"][k] = v;
        cj["verdict"] = to_string(c.verdict);
        cj["violations"] = c.violation_count;
        if (c.witness) {
            cj["witness"] = {{"label", c.witness->label},
                             {"scope", c.witness->scope},
                             {"tuple", c.witness->tuple},
                             {"residual", c.witness->residual}};
        } else {
            cj["witness"] = nullptr;
        }
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(std::move(cj));
    }
    j["tables"] = ordered_json::array();
    for (const auto& t : r.tables) j["tables"].push_back({{"title", t.title}, {"rows", t.rows}});
    if (include_timing) j["timing_ms"] = static_cast<long long>(r.timing_ms);
    return j.dump(2) + "\n";
}

}  // namespace shleib
