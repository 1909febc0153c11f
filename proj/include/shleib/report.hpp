#pragma once

#include "shleib/check.hpp"
#include "shleib/document.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shleib {

enum class Verdict { pass, fail, skipped };

std::string to_string(Verdict v);

/// A violation with its tuple spelled out by basis names.
struct Witness {
    std::string label;
    int scope = 0;
    std::vector<std::string> tuple;
    std::string residual;
};

struct CheckResult {
    std::string name;
    std::map<std::string, std::string> scope;
    Verdict verdict = Verdict::pass;
    std::size_t violation_count = 0;
    std::optional<Witness> witness;
    std::string note;
};

/// A named table of structure constants, e.g. l_2 or δ'_1.
struct Table {
    std::string title;
    std::vector<std::string> rows;
};

struct Report {
    std::string command;
    std::string input;
    Verdict verdict = Verdict::pass;
    std::vector<CheckResult> checks;
    std::vector<Table> tables;
    double timing_ms = 0;
};

struct RunOptions {
    int max_const = 6;
    int max_word_len = 4;
    int max_arity = 3;
    bool first_violation = false;
};

const std::vector<std::string>& known_commands();

/// Thrown for an unknown command or out-of-range scope flag (exit status 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void validate_options(const RunOptions& opt);

/// Dispatches one command over an already-parsed document. Mathematical
/// failures become failing checks; only usage errors throw.
Report run_command(const AlgebraDocument& doc, const std::string& command, const RunOptions& opt,
                   const std::string& input_name = "");

/// Human-readable report. With include_timing = false the output is a pure
/// function of the document and options.
std::string render_text(const Report& r, bool include_timing = true);
/// JSON report; see README for the fields.
std::string render_structured(const Report& r, bool include_timing = true);

/// 0 pass, 1 violations found.
int exit_code(const Report& r);

}  // namespace shleib
