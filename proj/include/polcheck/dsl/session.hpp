#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polcheck/dsl/ast.hpp"
#include "polcheck/errors.hpp"
#include "polcheck/funceq/funceq.hpp"
#include "polcheck/sampling/sampling.hpp"

namespace polcheck::dsl {

inline constexpr const char* kToolVersion = "1.0.0";

/// Resolution or construction failure while elaborating a parsed session.
class SessionError : public Error {
   public:
    SessionError(std::string kind, std::string message, Loc loc)
        : Error("line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + kind + ": " +
                message),
          kind_(std::move(kind)),
          loc_(loc) {}

    /// "NameError", "TypeMismatch", "InvalidImage", ...
    const std::string& kind() const noexcept { return kind_; }
    Loc loc() const noexcept { return loc_; }

   private:
    std::string kind_;
    Loc loc_;
};

struct RunConfig {
    SampleConfig samples;
    std::size_t max_arity = kDefaultMaxArity;
};

struct Command {
    std::string text;
    Loc loc;
    std::function<Report(const RunConfig&)> run;
};

struct SessionOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> max_arity;
    std::optional<std::size_t> height;
    std::optional<std::size_t> degree;
};

struct Session {
    SessionAst ast;
    std::size_t declarations = 0;
    std::vector<Command> commands;
    SessionOptions options;
};

/// Syntax plus name resolution and object construction. Throws SyntaxError or SessionError.
Session parse_session(const std::string& source);

struct RunFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> max_arity;
    /// Value of POLCHECK_SEED, consulted when neither the flags nor the session set a seed.
    std::optional<std::uint64_t> env_seed;
    bool oracle_check = false;
    bool timing = false;
};

struct Entry {
    std::size_t index = 0;
    std::string command;
    Loc loc;
    Report report;
    std::string error;
    double millis = 0;
};

struct ReportDocument {
    std::string version = kToolVersion;
    std::string digest;
    RunConfig config;
    std::vector<Entry> entries;
    bool oracle_checked = false;
    std::size_t claims_checked = 0;
    std::vector<std::string> oracle_failures;
    bool timing = false;

    /// 0 all pass, 1 any other verdict, 3 oracle disagreement.
    int exit_code() const;
};

ReportDocument run_session(const Session& s, const RunFlags& flags);

std::string emit_json(const ReportDocument& doc);
std::string emit_text(const ReportDocument& doc);
Json report_json(const Report& r);

/// FNV-1a 64 of the normalized source, as 16 hex digits.
std::string session_digest(const SessionAst& a);

}  // namespace polcheck::dsl
