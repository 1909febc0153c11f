// Command-line front end: shleib <command> <file> [flags]
#include "shleib/document.hpp"
#include "shleib/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace shleib;

int main(int argc, char** argv) {
    CLI::App app{"Exact verifier for graded Leibniz algebras and their higher derived brackets"};
    std::string command, path, format = "text";
    RunOptions opt;
    bool no_timing = false;

    std::string commands;
    for (const auto& c : known_commands()) commands += (commands.empty() ? "" : ", ") + c;
    app.add_option("command", command, "one of: " + commands)->required();
    app.add_option("file", path, "algebra document")->required();
    app.add_option("--max-const", opt.max_const, "largest Const for the sh Leibniz check (2..12)");
    app.add_option("--max-word-len", opt.max_word_len, "longest tensor word for coalgebra checks (1..8)");
    app.add_option("--max-arity", opt.max_arity, "largest i and j for the key lemma (1..5)");
    app.add_flag("--first-violation", opt.first_violation, "stop each check at its first violation");
    app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--no-timing", no_timing, "omit timing so output is byte-reproducible");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << '\n';
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    try {
        const auto doc = parse_document(buf.str());
        const auto rep = run_command(doc, command, opt, path);
        std::cout << (format == "structured" ? render_structured(rep, !no_timing) : render_text(rep, !no_timing));
        return exit_code(rep);
    } catch (const DocumentError& e) {
        for (const auto& err : e.errors()) std::cerr << path << ":" << err.line << ": [" << err.field << "] " << err.message << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        // UsageError and MalformedInput
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
