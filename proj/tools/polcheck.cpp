#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polcheck/dsl/session.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("POLCHECK_SEED");
    if (!s || !*s) return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "polcheck: ignoring malformed POLCHECK_SEED '" << s << "'\n";
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of polynomial functional equations over fields of characteristic zero"};
    app.set_version_flag("--version", polcheck::dsl::kToolVersion);
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a session file");
    std::string file, format = "json", out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples, max_arity;
    bool oracle = false, timing = false;
    run->add_option("session-file", file, "Session source")->required();
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    run->add_option("--seed", seed, "Sampling seed (overrides the session and POLCHECK_SEED)");
    run->add_option("--samples", samples, "Sample count")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
    run->add_option("--max-arity", max_arity, "Largest form arity to evaluate")
        ->check(CLI::Range(std::size_t{1}, polcheck::kHardArityLimit));
    run->add_flag("--oracle-check", oracle, "Re-evaluate every reported value with the naive oracle");
    run->add_option("--out", out_path, "Write the report here instead of stdout");
    run->add_flag("--timing", timing, "Include per-command wall time (breaks byte stability)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "polcheck: cannot read " << file << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    polcheck::dsl::Session session;
    try {
        session = polcheck::dsl::parse_session(buf.str());
    } catch (const polcheck::SyntaxError& e) {
        std::cerr << file << ": SyntaxError: " << e.what() << "\n";
        return 2;
    } catch (const polcheck::Error& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return 2;
    }

    polcheck::dsl::RunFlags flags;
    flags.seed = seed;
    flags.samples = samples;
    flags.max_arity = max_arity;
    flags.env_seed = env_seed();
    flags.oracle_check = oracle;
    flags.timing = timing;

    polcheck::dsl::ReportDocument doc;
    try {
        doc = polcheck::dsl::run_session(session, flags);
    } catch (const polcheck::Error& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return 2;
    }
    const std::string text = format == "json" ? polcheck::dsl::emit_json(doc) : polcheck::dsl::emit_text(doc);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream o(out_path, std::ios::binary);
        if (!o) {
            std::cerr << "polcheck: cannot write " << out_path << "\n";
            return 2;
        }
        o << text;
    }
    for (const auto& f : doc.oracle_failures) std::cerr << "oracle mismatch: " << f << "\n";
    return doc.exit_code();
}
