#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polcheck::dsl {

struct Loc {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Untyped expression; elaboration decides whether it denotes an element, a map, a form or a genpoly.
struct Expr {
    enum class Kind { Int, Name, Sqrt, Call, Add, Sub, Mul, Div, Neg, Pow, Compose };

    Kind kind;
    /// Digits for Int, the identifier for Name and Call, the signed radicand for Sqrt.
    std::string text;
    std::vector<ExprPtr> args;
    long exponent = 0;
    Loc loc;
};

struct FieldDecl {
    std::string name;
    std::optional<long> radicand;
    std::vector<std::string> vars;
};

struct HomDecl {
    enum class Shape { Images, Conj, Id };
    std::string name;
    Shape shape = Shape::Images;
    /// Only for Images: the list may start with `conj`.
    bool conj = false;
    std::vector<std::pair<std::string, ExprPtr>> images;
};

struct DerDecl {
    std::string name;
    std::vector<std::pair<std::string, ExprPtr>> images;
};

struct MapDecl {
    std::string name;
    ExprPtr expr;
};

struct FormDecl {
    std::string name;
    ExprPtr expr;
};

struct GenPolyDecl {
    std::string name;
    ExprPtr expr;
};

struct CheckCmd {
    enum class Mode { Default, Samples, Span };
    std::string fn;
    Loc fn_loc;
    ExprPtr arg;
    ExprPtr rhs;
    Mode mode = Mode::Default;
    std::optional<std::size_t> count;
    std::optional<std::uint64_t> seed;
    std::vector<ExprPtr> span;
};

struct ClassifyCmd {
    enum class What { Quadratic, Power, Quartic, Affine };
    What what = What::Quadratic;
    std::string target;
    Loc target_loc;
    std::optional<std::vector<std::string>> dictionary;
    long n = 0;
    std::vector<ExprPtr> params;
};

struct DegreeCmd {
    std::string name;
    Loc name_loc;
    std::optional<std::size_t> cap;
};

struct RankCmd {
    std::string name;
    Loc name_loc;
    bool mult = true;
    std::vector<ExprPtr> translates;
    std::vector<ExprPtr> points;
};

struct VerifyCmd {
    enum class What { Additive, Multiplicative, Leibniz, LeviCivita, ZeroTrace };
    What what = What::Additive;
    std::string target;
    Loc target_loc;
    /// twoexp(...) or logexp(...) for LeviCivita.
    ExprPtr decomposition;
};

struct PolarizeCmd {
    std::string name;
    Loc name_loc;
    std::vector<ExprPtr> ys;
};

struct OptionCmd {
    std::string key;
    std::uint64_t value = 0;
    std::vector<ExprPtr> probes;
};

using StmtBody = std::variant<FieldDecl, HomDecl, DerDecl, MapDecl, FormDecl, GenPolyDecl, CheckCmd, ClassifyCmd,
                              DegreeCmd, RankCmd, VerifyCmd, PolarizeCmd, OptionCmd>;

struct Stmt {
    Loc loc;
    StmtBody body;
};

struct SessionAst {
    std::vector<Stmt> stmts;
};

/// Syntax only; names are not resolved.
SessionAst parse_syntax(const std::string& source);

std::string format_expr(const Expr& e);
std::string format_stmt(const Stmt& s);
/// One statement per line; parse_syntax(format_session(a)) formats back to the same text.
std::string format_session(const SessionAst& a);

}  // namespace polcheck::dsl
