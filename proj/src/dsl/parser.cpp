#include <cctype>
#include <set>

#include "polcheck/dsl/ast.hpp"
#include "polcheck/errors.hpp"

namespace polcheck::dsl {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind;
    std::string text;
    Loc loc;
    std::size_t offset = 0;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Token::Kind::Punct, "", Loc{line, col}, i};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Int;
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.text = src.substr(i, j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Ident;
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.text = src.substr(i, j - i);
        } else if (src.compare(i, 2, "->") == 0 || src.compare(i, 2, "==") == 0) {
            t.text = src.substr(i, 2);
        } else if (std::string(";,()=+-*/^@:").find(c) != std::string::npos) {
            t.text = std::string(1, c);
        } else {
            throw SyntaxError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                                  ": unexpected character '" + std::string(1, c) + "'",
                              i, {}, line, col);
        }
        advance(t.text.size());
        out.push_back(std::move(t));
    }
    out.push_back(Token{Token::Kind::End, "", Loc{line, col}, src.size()});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::End: return "end of input";
        case Token::Kind::Int: return "integer " + t.text;
        default: return "'" + t.text + "'";
    }
}

std::string join_expected(const std::set<std::string>& e) {
    std::string s;
    for (const auto& x : e) s += (s.empty() ? "" : ", ") + x;
    return s;
}

ExprPtr node(Expr::Kind k, Loc loc, std::vector<ExprPtr> args = {}, std::string text = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->loc = loc;
    e->args = std::move(args);
    e->text = std::move(text);
    return e;
}

class Parser {
   public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    SessionAst session() {
        SessionAst a;
        while (peek().kind != Token::Kind::End) a.stmts.push_back(statement());
        return a;
    }

   private:
    const Token& peek() const { return toks_[pos_]; }

    [[noreturn]] void fail(std::set<std::string> expected) const {
        const Token& t = peek();
        std::string msg = "line " + std::to_string(t.loc.line) + ", column " + std::to_string(t.loc.column) +
                          ": expected " + join_expected(expected) + ", found " + describe(t);
        throw SyntaxError(std::move(msg), t.offset, std::move(expected), t.loc.line, t.loc.column);
    }

    bool at(const std::string& p) const { return peek().kind != Token::Kind::End && peek().kind != Token::Kind::Int && peek().text == p; }

    bool accept(const std::string& p) {
        if (!at(p)) return false;
        ++pos_;
        return true;
    }

    void expect(const std::string& p) {
        if (!accept(p)) fail({"'" + p + "'"});
    }

    std::string ident(const std::string& what = "identifier") {
        if (peek().kind != Token::Kind::Ident) fail({what});
        return toks_[pos_++].text;
    }

    std::string integer() {
        if (peek().kind != Token::Kind::Int) fail({"integer"});
        return toks_[pos_++].text;
    }

    std::uint64_t small_integer() {
        const Token& t = peek();
        const std::string s = integer();
        if (s.size() > 19) {
            throw SyntaxError("line " + std::to_string(t.loc.line) + ", column " + std::to_string(t.loc.column) +
                                  ": integer too large",
                              t.offset, {"integer"}, t.loc.line, t.loc.column);
        }
        return std::stoull(s);
    }

    long signed_integer() {
        const bool neg = accept("-");
        const long v = static_cast<long>(small_integer());
        return neg ? -v : v;
    }

    // ---- expressions ----

    ExprPtr expr() {
        ExprPtr l = term();
        for (;;) {
            const Loc loc = peek().loc;
            if (accept("+")) {
                l = node(Expr::Kind::Add, loc, {l, term()});
            } else if (accept("-")) {
                l = node(Expr::Kind::Sub, loc, {l, term()});
            } else {
                return l;
            }
        }
    }

    ExprPtr term() {
        ExprPtr l = unary();
        for (;;) {
            const Loc loc = peek().loc;
            if (accept("*")) {
                l = node(Expr::Kind::Mul, loc, {l, unary()});
            } else if (accept("/")) {
                l = node(Expr::Kind::Div, loc, {l, unary()});
            } else {
                return l;
            }
        }
    }

    ExprPtr unary() {
        const Loc loc = peek().loc;
        if (accept("-")) return node(Expr::Kind::Neg, loc, {unary()});
        if (accept("+")) return unary();
        ExprPtr l = power();
        for (;;) {
            const Loc cl = peek().loc;
            if (!accept("@")) return l;
            l = node(Expr::Kind::Compose, cl, {l, power()});
        }
    }

    ExprPtr power() {
        ExprPtr base = atom();
        const Loc loc = peek().loc;
        if (!accept("^")) return base;
        long e;
        if (accept("(")) {
            e = signed_integer();
            expect(")");
        } else {
            e = signed_integer();
        }
        auto p = std::make_shared<Expr>(*node(Expr::Kind::Pow, loc, {base}));
        p->exponent = e;
        return p;
    }

    ExprPtr atom() {
        const Token& t = peek();
        const Loc loc = t.loc;
        if (t.kind == Token::Kind::Int) return node(Expr::Kind::Int, loc, {}, integer());
        if (accept("(")) {
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            const std::string name = ident();
            if (name == "sqrt") {
                expect("(");
                const long d = signed_integer();
                expect(")");
                return node(Expr::Kind::Sqrt, loc, {}, std::to_string(d));
            }
            if (!accept("(")) return node(Expr::Kind::Name, loc, {}, name);
            std::vector<ExprPtr> args;
            if (!accept(")")) {
                args = list_tail();
            }
            return node(Expr::Kind::Call, loc, std::move(args), name);
        }
        fail({"integer", "identifier", "sqrt", "'('", "'-'"});
    }

    // Comma-separated expressions up to and including ')'.
    std::vector<ExprPtr> list_tail() {
        std::vector<ExprPtr> out{expr()};
        while (accept(",")) out.push_back(expr());
        expect(")");
        return out;
    }

    std::vector<ExprPtr> paren_list() {
        expect("(");
        if (accept(")")) return {};
        return list_tail();
    }

    std::vector<std::string> name_list() {
        expect("(");
        std::vector<std::string> out{ident("map name")};
        while (accept(",")) out.push_back(ident("map name"));
        expect(")");
        return out;
    }

    // ---- statements ----

    Stmt statement() {
        const Token& t = peek();
        Stmt s{t.loc, FieldDecl{}};
        static const std::set<std::string> kStart = {"field", "hom", "der", "map", "form", "genpoly", "check",
                                                     "classify", "degree", "rank", "verify", "polarize", "option"};
        if (t.kind != Token::Kind::Ident || !kStart.count(t.text)) fail(kStart);
        const std::string kw = ident();
        if (kw == "field") {
            s.body = field_decl();
        } else if (kw == "hom") {
            s.body = hom_decl();
        } else if (kw == "der") {
            DerDecl d;
            d.name = ident("name");
            expect(":");
            d.images = images();
            s.body = d;
        } else if (kw == "map") {
            MapDecl d;
            d.name = ident("name");
            expect("=");
            d.expr = expr();
            s.body = d;
        } else if (kw == "form") {
            FormDecl d;
            d.name = ident("name");
            expect("=");
            d.expr = expr();
            s.body = d;
        } else if (kw == "genpoly") {
            GenPolyDecl d;
            d.name = ident("name");
            expect("=");
            d.expr = expr();
            s.body = d;
        } else if (kw == "check") {
            s.body = check_cmd();
        } else if (kw == "classify") {
            s.body = classify_cmd();
        } else if (kw == "degree") {
            DegreeCmd d;
            d.name_loc = peek().loc;
            d.name = ident("name");
            if (accept("cap")) d.cap = small_integer();
            s.body = d;
        } else if (kw == "rank") {
            RankCmd r;
            r.name_loc = peek().loc;
            r.name = ident("name");
            if (accept("add")) {
                r.mult = false;
            } else {
                accept("mult");
            }
            if (!at("translates")) fail({"mult", "add", "translates"});
            ++pos_;
            r.translates = paren_list();
            if (!at("points")) fail({"points"});
            ++pos_;
            r.points = paren_list();
            s.body = r;
        } else if (kw == "verify") {
            s.body = verify_cmd();
        } else if (kw == "polarize") {
            PolarizeCmd p;
            p.name_loc = peek().loc;
            p.name = ident("name");
            if (!accept("at")) fail({"at"});
            p.ys = paren_list();
            s.body = p;
        } else {
            s.body = option_cmd();
        }
        expect(";");
        return s;
    }

    FieldDecl field_decl() {
        FieldDecl f;
        f.name = ident("name");
        expect("=");
        if (!at("Q")) fail({"Q"});
        ++pos_;
        if (!accept("(")) return f;
        if (accept("sqrt")) {
            if (accept("(")) {
                f.radicand = signed_integer();
                expect(")");
            } else {
                f.radicand = signed_integer();
            }
            expect(")");
            if (!accept("(")) return f;
        }
        f.vars.push_back(ident("indeterminate"));
        while (accept(",")) f.vars.push_back(ident("indeterminate"));
        expect(")");
        return f;
    }

    std::vector<std::pair<std::string, ExprPtr>> images() {
        std::vector<std::pair<std::string, ExprPtr>> out;
        do {
            std::string g = ident("indeterminate");
            expect("->");
            out.emplace_back(std::move(g), expr());
        } while (accept(","));
        return out;
    }

    HomDecl hom_decl() {
        HomDecl h;
        h.name = ident("name");
        if (accept("=")) {
            if (accept("conj")) {
                h.shape = HomDecl::Shape::Conj;
            } else if (accept("id")) {
                h.shape = HomDecl::Shape::Id;
            } else {
                fail({"conj", "id"});
            }
            return h;
        }
        if (!accept(":")) fail({"'='", "':'"});
        if (accept("conj")) {
            h.conj = true;
            if (!accept(",")) return h;
        }
        h.images = images();
        return h;
    }

    CheckCmd check_cmd() {
        CheckCmd c;
        c.fn_loc = peek().loc;
        c.fn = ident("function name");
        expect("(");
        c.arg = expr();
        expect(")");
        expect("==");
        c.rhs = expr();
        if (!accept("on")) return c;
        if (accept("samples")) {
            c.mode = CheckCmd::Mode::Samples;
            expect("(");
            c.count = small_integer();
            if (accept(",")) {
                if (!accept("seed")) fail({"seed"});
                expect("=");
                c.seed = small_integer();
            }
            expect(")");
        } else if (accept("span")) {
            c.mode = CheckCmd::Mode::Span;
            c.span = paren_list();
        } else {
            fail({"samples", "span"});
        }
        return c;
    }

    ClassifyCmd classify_cmd() {
        ClassifyCmd c;
        if (accept("quadratic")) {
            c.what = ClassifyCmd::What::Quadratic;
        } else if (accept("power")) {
            c.what = ClassifyCmd::What::Power;
        } else if (accept("quartic")) {
            c.what = ClassifyCmd::What::Quartic;
        } else if (accept("affine")) {
            c.what = ClassifyCmd::What::Affine;
        } else {
            fail({"quadratic", "power", "quartic", "affine"});
        }
        c.target_loc = peek().loc;
        c.target = ident("name");
        switch (c.what) {
            case ClassifyCmd::What::Power: c.n = static_cast<long>(small_integer()); break;
            case ClassifyCmd::What::Affine:
                if (!accept("params")) fail({"params"});
                c.params = paren_list();
                break;
            default:
                if (accept("with")) {
                    if (!accept("dictionary")) fail({"dictionary"});
                    c.dictionary = name_list();
                }
        }
        return c;
    }

    VerifyCmd verify_cmd() {
        VerifyCmd v;
        static const std::set<std::string> kLaws = {"additive", "multiplicative", "leibniz", "levicivita", "zerotrace"};
        if (peek().kind != Token::Kind::Ident || !kLaws.count(peek().text)) fail(kLaws);
        const std::string law = ident();
        if (law == "additive") v.what = VerifyCmd::What::Additive;
        if (law == "multiplicative") v.what = VerifyCmd::What::Multiplicative;
        if (law == "leibniz") v.what = VerifyCmd::What::Leibniz;
        if (law == "levicivita") v.what = VerifyCmd::What::LeviCivita;
        if (law == "zerotrace") v.what = VerifyCmd::What::ZeroTrace;
        v.target_loc = peek().loc;
        v.target = ident("name");
        if (v.what == VerifyCmd::What::LeviCivita) {
            if (!at("twoexp") && !at("logexp")) fail({"twoexp", "logexp"});
            v.decomposition = atom();
        }
        return v;
    }

    OptionCmd option_cmd() {
        OptionCmd o;
        static const std::set<std::string> kKeys = {"seed", "samples", "max_arity", "height", "degree", "probes"};
        if (peek().kind != Token::Kind::Ident || !kKeys.count(peek().text)) fail(kKeys);
        o.key = ident();
        if (o.key == "probes") {
            o.probes = paren_list();
            return o;
        }
        expect("=");
        o.value = small_integer();
        return o;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---- formatting -----------------------------------------------------------------------------

int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Compose: return 4;
        case Expr::Kind::Pow: return 5;
        default: return 6;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    const std::string s = format_expr(e);
    return prec(e) < min_prec ? "(" + s + ")" : s;
}

std::string join_exprs(const std::vector<ExprPtr>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + format_expr(*es[i]);
    return s;
}

std::string join_names(const std::vector<std::string>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? ", " : "") + ns[i];
    return s;
}

std::string format_images(const std::vector<std::pair<std::string, ExprPtr>>& ims) {
    std::string s;
    for (std::size_t i = 0; i < ims.size(); ++i) s += (i ? ", " : "") + ims[i].first + " -> " + format_expr(*ims[i].second);
    return s;
}

struct StmtFormatter {
    std::string operator()(const FieldDecl& f) const {
        std::string s = "field " + f.name + " = Q";
        if (f.radicand) s += "(sqrt " + std::to_string(*f.radicand) + ")";
        if (!f.vars.empty()) s += "(" + join_names(f.vars) + ")";
        return s;
    }
    std::string operator()(const HomDecl& h) const {
        switch (h.shape) {
            case HomDecl::Shape::Conj: return "hom " + h.name + " = conj";
            case HomDecl::Shape::Id: return "hom " + h.name + " = id";
            default: break;
        }
        std::string s = "hom " + h.name + " : ";
        if (h.conj) s += h.images.empty() ? "conj" : "conj, ";
        return s + format_images(h.images);
    }
    std::string operator()(const DerDecl& d) const { return "der " + d.name + " : " + format_images(d.images); }
    std::string operator()(const MapDecl& d) const { return "map " + d.name + " = " + format_expr(*d.expr); }
    std::string operator()(const FormDecl& d) const { return "form " + d.name + " = " + format_expr(*d.expr); }
    std::string operator()(const GenPolyDecl& d) const { return "genpoly " + d.name + " = " + format_expr(*d.expr); }
    std::string operator()(const CheckCmd& c) const {
        std::string s = "check " + c.fn + "(" + format_expr(*c.arg) + ") == " + format_expr(*c.rhs);
        if (c.mode == CheckCmd::Mode::Samples) {
            s += " on samples(" + std::to_string(*c.count);
            if (c.seed) s += ", seed=" + std::to_string(*c.seed);
            s += ")";
        } else if (c.mode == CheckCmd::Mode::Span) {
            s += " on span(" + join_exprs(c.span) + ")";
        }
        return s;
    }
    std::string operator()(const ClassifyCmd& c) const {
        static const char* kWhat[] = {"quadratic", "power", "quartic", "affine"};
        std::string s = std::string("classify ") + kWhat[static_cast<int>(c.what)] + " " + c.target;
        if (c.what == ClassifyCmd::What::Power) s += " " + std::to_string(c.n);
        if (c.what == ClassifyCmd::What::Affine) s += " params(" + join_exprs(c.params) + ")";
        if (c.dictionary) s += " with dictionary(" + join_names(*c.dictionary) + ")";
        return s;
    }
    std::string operator()(const DegreeCmd& d) const {
        return "degree " + d.name + (d.cap ? " cap " + std::to_string(*d.cap) : "");
    }
    std::string operator()(const RankCmd& r) const {
        return "rank " + r.name + (r.mult ? " mult" : " add") + " translates(" + join_exprs(r.translates) + ") points(" +
               join_exprs(r.points) + ")";
    }
    std::string operator()(const VerifyCmd& v) const {
        static const char* kWhat[] = {"additive", "multiplicative", "leibniz", "levicivita", "zerotrace"};
        std::string s = std::string("verify ") + kWhat[static_cast<int>(v.what)] + " " + v.target;
        if (v.decomposition) s += " " + format_expr(*v.decomposition);
        return s;
    }
    std::string operator()(const PolarizeCmd& p) const { return "polarize " + p.name + " at (" + join_exprs(p.ys) + ")"; }
    std::string operator()(const OptionCmd& o) const {
        if (o.key == "probes") return "option probes(" + join_exprs(o.probes) + ")";
        return "option " + o.key + " = " + std::to_string(o.value);
    }
};

}  // namespace

SessionAst parse_syntax(const std::string& source) { return Parser(source).session(); }

std::string format_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Int:
        case Expr::Kind::Name: return e.text;
        case Expr::Kind::Sqrt: return "sqrt(" + e.text + ")";
        case Expr::Kind::Call: return e.text + "(" + join_exprs(e.args) + ")";
        case Expr::Kind::Add: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
        case Expr::Kind::Sub: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
        case Expr::Kind::Mul: return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
        case Expr::Kind::Div: return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
        case Expr::Kind::Neg: return "-" + wrap(*e.args[0], 3);
        case Expr::Kind::Compose: return wrap(*e.args[0], 4) + " @ " + wrap(*e.args[1], 5);
        case Expr::Kind::Pow: {
            const std::string ex = e.exponent < 0 ? "(" + std::to_string(e.exponent) + ")" : std::to_string(e.exponent);
            return wrap(*e.args[0], 6) + "^" + ex;
        }
    }
    return {};
}

std::string format_stmt(const Stmt& s) { return std::visit(StmtFormatter{}, s.body) + ";"; }

std::string format_session(const SessionAst& a) {
    std::string out;
    for (const auto& s : a.stmts) out += format_stmt(s) + "\n";
    return out;
}

}  // namespace polcheck::dsl
