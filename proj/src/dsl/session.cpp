#include "polcheck/dsl/session.hpp"

#include "polcheck/field/parse.hpp"
#include "polcheck/oracle_expr.hpp"

namespace polcheck::dsl {

namespace {

using Kind = Expr::Kind;

std::string error_kind(const Error& e) {
    if (dynamic_cast<const NameError*>(&e)) return "NameError";
    if (dynamic_cast<const TypeMismatch*>(&e)) return "TypeMismatch";
    if (dynamic_cast<const InvalidImage*>(&e)) return "InvalidImage";
    if (dynamic_cast<const UnsupportedSpec*>(&e)) return "UnsupportedSpec";
    if (dynamic_cast<const InvalidSpec*>(&e)) return "InvalidSpec";
    if (dynamic_cast<const SpecMismatch*>(&e)) return "SpecMismatch";
    if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
    if (dynamic_cast<const DenominatorVanishes*>(&e)) return "DenominatorVanishes";
    if (dynamic_cast<const ArityTooLarge*>(&e)) return "ArityTooLarge";
    if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
    return "Error";
}

template <class F>
auto located(Loc loc, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SessionError&) {
        throw;
    } catch (const Error& e) {
        throw SessionError(error_kind(e), e.what(), loc);
    }
}

[[noreturn]] void type_error(const Expr& e, const std::string& msg) {
    throw SessionError("TypeMismatch", msg + " (got '" + format_expr(e) + "')", e.loc);
}

using ProbeTable = std::map<const FieldSpec*, std::vector<FieldElement>>;

// ---- element expressions evaluated at run time -------------------------------------------------

struct Scope {
    SpecPtr spec;
    const FieldElement* x = nullptr;
    const Function* fn = nullptr;
};

FieldElement eval_elem(const Expr& e, const Scope& s) {
    switch (e.kind) {
        case Kind::Int: return FieldElement::rational(s.spec, mpq_class(mpz_class(e.text)));
        case Kind::Sqrt: return sqrt_literal(mpz_class(e.text), s.spec);
        case Kind::Name:
            if (e.text == "x" && s.x) return *s.x;
            return FieldElement::indeterminate(s.spec, e.text);
        case Kind::Call: return (*s.fn)(eval_elem(*e.args[0], s));
        case Kind::Add: return eval_elem(*e.args[0], s) + eval_elem(*e.args[1], s);
        case Kind::Sub: return eval_elem(*e.args[0], s) - eval_elem(*e.args[1], s);
        case Kind::Mul: return eval_elem(*e.args[0], s) * eval_elem(*e.args[1], s);
        case Kind::Div: {
            const FieldElement d = eval_elem(*e.args[1], s);
            if (d.is_zero()) throw DivisionByZero();
            return eval_elem(*e.args[0], s) / d;
        }
        case Kind::Neg: return -eval_elem(*e.args[0], s);
        case Kind::Pow: return eval_elem(*e.args[0], s).pow(e.exponent);
        case Kind::Compose: break;
    }
    throw TypeMismatch("not an element expression");
}

Json oracle_of(const Expr& e, const Json& fn) {
    switch (e.kind) {
        case Kind::Int: return ox::lit_text(e.text);
        case Kind::Sqrt: return ox::lit_text("sqrt(" + e.text + ")");
        case Kind::Name: return e.text == "x" ? ox::var("x") : ox::lit_text(e.text);
        case Kind::Call: return ox::call(fn, oracle_of(*e.args[0], fn));
        case Kind::Add: return ox::add(oracle_of(*e.args[0], fn), oracle_of(*e.args[1], fn));
        case Kind::Sub: return ox::sub(oracle_of(*e.args[0], fn), oracle_of(*e.args[1], fn));
        case Kind::Mul: return ox::mul(oracle_of(*e.args[0], fn), oracle_of(*e.args[1], fn));
        case Kind::Div: return ox::div(oracle_of(*e.args[0], fn), oracle_of(*e.args[1], fn));
        case Kind::Neg: return ox::neg(oracle_of(*e.args[0], fn));
        case Kind::Pow: return ox::pow(oracle_of(*e.args[0], fn), e.exponent);
        case Kind::Compose: break;
    }
    return Json{};
}

// Polynomial in one leaf (x, or f(x)) with constant coefficients, if the expression is one.
using Coeffs = std::vector<FieldElement>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Coeffs cmul(const Coeffs& a, const Coeffs& b, const SpecPtr& spec) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, FieldElement::zero(spec));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Coeffs cadd(Coeffs a, const Coeffs& b, const SpecPtr& spec, bool negate) {
    if (a.size() < b.size()) a.resize(b.size(), FieldElement::zero(spec));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = negate ? a[i] - b[i] : a[i] + b[i];
    trim(a);
    return a;
}

std::optional<Coeffs> poly_of(const Expr& e, const SpecPtr& spec, const std::function<bool(const Expr&)>& is_leaf) {
    if (is_leaf(e)) return Coeffs{FieldElement::zero(spec), FieldElement::one(spec)};
    auto constant = [&](const FieldElement& c) {
        Coeffs r{c};
        trim(r);
        return r;
    };
    switch (e.kind) {
        case Kind::Int:
        case Kind::Sqrt: return constant(eval_elem(e, Scope{spec}));
        case Kind::Name:
            if (e.text == "x") return std::nullopt;
            return constant(eval_elem(e, Scope{spec}));
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul: {
            auto a = poly_of(*e.args[0], spec, is_leaf);
            auto b = poly_of(*e.args[1], spec, is_leaf);
            if (!a || !b) return std::nullopt;
            if (e.kind == Kind::Mul) return cmul(*a, *b, spec);
            return cadd(*a, *b, spec, e.kind == Kind::Sub);
        }
        case Kind::Div: {
            auto a = poly_of(*e.args[0], spec, is_leaf);
            auto b = poly_of(*e.args[1], spec, is_leaf);
            if (!a || !b || b->size() != 1) return std::nullopt;
            const FieldElement inv = FieldElement::one(spec) / b->front();
            for (auto& c : *a) c *= inv;
            return a;
        }
        case Kind::Neg: {
            auto a = poly_of(*e.args[0], spec, is_leaf);
            if (!a) return std::nullopt;
            for (auto& c : *a) c = -c;
            return a;
        }
        case Kind::Pow: {
            auto a = poly_of(*e.args[0], spec, is_leaf);
            if (!a) return std::nullopt;
            if (e.exponent < 0) {
                if (a->size() != 1) return std::nullopt;
                return constant(a->front().pow(e.exponent));
            }
            Coeffs r{FieldElement::one(spec)};
            for (long i = 0; i < e.exponent; ++i) r = cmul(r, *a, spec);
            return r;
        }
        default: return std::nullopt;
    }
}

// ---- elaboration ---------------------------------------------------------------------------

class Elaborator {
   public:
    Session run(const std::string& source) {
        Session s;
        s.ast = parse_syntax(source);
        probes_ = std::make_shared<ProbeTable>();
        for (const auto& st : s.ast.stmts) {
            cur_loc_ = st.loc;
            std::visit([&](const auto& b) { this->stmt(b, st, s); }, st.body);
        }
        return s;
    }

   private:
    // ---- helpers ----

    const SpecPtr& field(Loc loc) const {
        if (!spec_) throw SessionError("NameError", "no field declared yet", loc);
        return spec_;
    }

    void declare(const std::string& name, Loc loc) {
        if (is_reserved_word(name)) throw SessionError("NameError", "'" + name + "' is a reserved word", loc);
        if (!names_.insert(name).second) throw SessionError("NameError", "'" + name + "' is already declared", loc);
    }

    bool names_map(const Expr& e) const {
        switch (e.kind) {
            case Kind::Name: return e.text == "id" || e.text == "zero" || maps_.count(e.text);
            case Kind::Compose: return true;
            case Kind::Call: return false;
            default:
                for (const auto& a : e.args) {
                    if (names_map(*a)) return true;
                }
                return false;
        }
    }

    bool names_form(const Expr& e) const {
        static const std::set<std::string> kCtors = {"product", "mapprod", "lift", "lincomb", "formprod"};
        switch (e.kind) {
            case Kind::Name: return forms_.count(e.text) > 0;
            case Kind::Call: return kCtors.count(e.text) > 0;
            default:
                for (const auto& a : e.args) {
                    if (names_form(*a)) return true;
                }
                return false;
        }
    }

    // Checks names in an element expression; `fn` may be called when nonempty, `x` is allowed when asked.
    void check_elem(const Expr& e, bool allow_x, const std::string& fn = {}) const {
        const SpecPtr& spec = field(e.loc);
        switch (e.kind) {
            case Kind::Int: return;
            case Kind::Sqrt:
                located(e.loc, [&] { return sqrt_literal(mpz_class(e.text), spec); });
                return;
            case Kind::Name:
                if (e.text == "x") {
                    if (!allow_x) throw SessionError("NameError", "'x' is only meaningful inside check", e.loc);
                    return;
                }
                if (spec->var_index(e.text) >= 0) return;
                if (names_.count(e.text) || e.text == "id" || e.text == "zero") {
                    throw SessionError("TypeMismatch", "'" + e.text + "' is not a field element", e.loc);
                }
                throw SessionError("NameError", "unknown name '" + e.text + "' (not an indeterminate of " + spec->name() + ")",
                                   e.loc);
            case Kind::Call:
                if (fn.empty() || e.text != fn) {
                    throw SessionError(names_.count(e.text) ? "TypeMismatch" : "NameError",
                                       "cannot call '" + e.text + "' here", e.loc);
                }
                if (e.args.size() != 1) throw SessionError("TypeMismatch", "'" + fn + "' takes one argument", e.loc);
                check_elem(*e.args[0], allow_x, fn);
                return;
            case Kind::Compose: type_error(e, "composition of maps where an element was expected");
            default:
                for (const auto& a : e.args) check_elem(*a, allow_x, fn);
        }
    }

    FieldElement elem(const Expr& e) const {
        check_elem(e, false);
        return located(e.loc, [&] { return eval_elem(e, Scope{spec_}); });
    }

    std::vector<FieldElement> elems(const std::vector<ExprPtr>& es) const {
        std::vector<FieldElement> out;
        for (const auto& e : es) out.push_back(elem(*e));
        return out;
    }

    std::size_t positive_int(const Expr& e, const std::string& what) const {
        if (e.kind != Kind::Int) type_error(e, what + " must be an integer literal");
        if (e.text.size() > 6) type_error(e, what + " is too large");
        return std::stoul(e.text);
    }

    AdditiveMap map_named(const std::string& name, Loc loc) const {
        const SpecPtr& spec = field(loc);
        if (name == "id") return AdditiveMap::identity(spec).named("id");
        if (name == "zero") return AdditiveMap::zero(spec).named("zero");
        auto it = maps_.find(name);
        if (it == maps_.end()) {
            if (names_.count(name)) throw SessionError("TypeMismatch", "'" + name + "' is not a map", loc);
            throw SessionError("NameError", "unknown map '" + name + "'", loc);
        }
        if (!same_spec(it->second.domain_spec(), spec)) {
            throw SessionError("TypeMismatch", "map '" + name + "' belongs to " + it->second.domain_spec()->name(), loc);
        }
        return it->second;
    }

    AdditiveMap map_expr(const Expr& e) const {
        switch (e.kind) {
            case Kind::Name: return map_named(e.text, e.loc);
            case Kind::Add: return sum_map({map_expr(*e.args[0]), map_expr(*e.args[1])});
            case Kind::Sub:
                return sum_map({map_expr(*e.args[0]), scale_map(FieldElement::integer(spec_, -1), map_expr(*e.args[1]))});
            case Kind::Neg: return scale_map(FieldElement::integer(spec_, -1), map_expr(*e.args[0]));
            case Kind::Mul: {
                const bool lm = names_map(*e.args[0]), rm = names_map(*e.args[1]);
                if (lm == rm) type_error(e, "a product needs one scalar and one map");
                return lm ? scale_map(elem(*e.args[1]), map_expr(*e.args[0])) : scale_map(elem(*e.args[0]), map_expr(*e.args[1]));
            }
            case Kind::Div: {
                const FieldElement d = elem(*e.args[1]);
                if (d.is_zero()) throw SessionError("DivisionByZero", "division by zero", e.args[1]->loc);
                return scale_map(FieldElement::one(spec_) / d, map_expr(*e.args[0]));
            }
            case Kind::Compose: return compose_map(map_expr(*e.args[0]), map_expr(*e.args[1]));
            default: type_error(e, "expected a map");
        }
    }

    SymmetricForm form_named(const std::string& name, Loc loc) const {
        auto it = forms_.find(name);
        if (it == forms_.end()) {
            if (names_.count(name) || name == "id" || name == "zero") {
                throw SessionError("TypeMismatch", "'" + name + "' is not a form", loc);
            }
            throw SessionError("NameError", "unknown form '" + name + "'", loc);
        }
        if (!same_spec(it->second.spec(), field(loc))) {
            throw SessionError("TypeMismatch", "form '" + name + "' belongs to " + it->second.spec()->name(), loc);
        }
        return it->second;
    }

    void form_terms(const Expr& e, const FieldElement& c, std::vector<std::pair<FieldElement, SymmetricForm>>& out) const {
        switch (e.kind) {
            case Kind::Add:
                form_terms(*e.args[0], c, out);
                form_terms(*e.args[1], c, out);
                return;
            case Kind::Sub:
                form_terms(*e.args[0], c, out);
                form_terms(*e.args[1], -c, out);
                return;
            case Kind::Neg: form_terms(*e.args[0], -c, out); return;
            case Kind::Mul: {
                const bool lf = names_form(*e.args[0]), rf = names_form(*e.args[1]);
                if (lf == rf) type_error(e, "a product needs one scalar and one form");
                if (lf) {
                    form_terms(*e.args[0], c * elem(*e.args[1]), out);
                } else {
                    form_terms(*e.args[1], c * elem(*e.args[0]), out);
                }
                return;
            }
            case Kind::Div: {
                const FieldElement d = elem(*e.args[1]);
                if (d.is_zero()) throw SessionError("DivisionByZero", "division by zero", e.args[1]->loc);
                form_terms(*e.args[0], c / d, out);
                return;
            }
            default: out.emplace_back(c, form_atom(e));
        }
    }

    SymmetricForm form_atom(const Expr& e) const {
        if (e.kind == Kind::Name) return form_named(e.text, e.loc);
        if (e.kind != Kind::Call) {
            if (!names_form(e) && !names_map(e)) return SymmetricForm::constant(elem(e));
            type_error(e, "expected a form");
        }
        const auto& a = e.args;
        auto need = [&](std::size_t n) {
            if (a.size() != n) type_error(e, e.text + " takes " + std::to_string(n) + " arguments");
        };
        return located(e.loc, [&]() -> SymmetricForm {
            if (e.text == "product") {
                if (a.empty()) type_error(e, "product needs at least one map");
                std::vector<AdditiveMap> ms;
                for (const auto& m : a) ms.push_back(map_expr(*m));
                return SymmetricForm::product_sym(std::move(ms));
            }
            if (e.text == "mapprod") {
                need(2);
                return SymmetricForm::map_of_product(map_expr(*a[0]), positive_int(*a[1], "mapprod arity"));
            }
            if (e.text == "lift") {
                need(2);
                return SymmetricForm::lift(form_expr(*a[0]), positive_int(*a[1], "lift power"));
            }
            if (e.text == "lincomb") {
                std::vector<std::pair<FieldElement, SymmetricForm>> terms;
                for (const auto& t : a) form_terms(*t, FieldElement::one(spec_), terms);
                if (terms.empty()) type_error(e, "lincomb needs at least one term");
                return SymmetricForm::lincomb(std::move(terms));
            }
            if (e.text == "formprod") {
                if (a.empty()) type_error(e, "formprod needs at least one form");
                std::vector<SymmetricForm> fs;
                for (const auto& f : a) fs.push_back(form_expr(*f));
                return SymmetricForm::form_product(std::move(fs));
            }
            throw SessionError(names_.count(e.text) ? "TypeMismatch" : "NameError",
                               "unknown form constructor '" + e.text + "'", e.loc);
        });
    }

    SymmetricForm form_expr(const Expr& e) const {
        field(e.loc);
        if (e.kind == Kind::Name || e.kind == Kind::Call) return form_atom(e);
        if (!names_form(e)) return form_atom(e);
        std::vector<std::pair<FieldElement, SymmetricForm>> terms;
        form_terms(e, FieldElement::one(spec_), terms);
        return located(e.loc, [&] { return SymmetricForm::lincomb(std::move(terms)); });
    }

    void genpoly_terms(const Expr& e, const FieldElement& c, std::vector<GenMonomial>& out) const {
        switch (e.kind) {
            case Kind::Add:
                genpoly_terms(*e.args[0], c, out);
                genpoly_terms(*e.args[1], c, out);
                return;
            case Kind::Sub:
                genpoly_terms(*e.args[0], c, out);
                genpoly_terms(*e.args[1], -c, out);
                return;
            case Kind::Neg: genpoly_terms(*e.args[0], -c, out); return;
            case Kind::Mul: {
                const bool lp = is_trace_like(*e.args[0]), rp = is_trace_like(*e.args[1]);
                if (lp == rp) type_error(e, "a product needs one scalar and one trace");
                if (lp) {
                    genpoly_terms(*e.args[0], c * elem(*e.args[1]), out);
                } else {
                    genpoly_terms(*e.args[1], c * elem(*e.args[0]), out);
                }
                return;
            }
            case Kind::Call:
                if (e.text == "trace") {
                    if (e.args.size() != 1) type_error(e, "trace takes one form");
                    SymmetricForm f = form_expr(*e.args[0]);
                    if (!c.is_one()) f = located(e.loc, [&] { return SymmetricForm::lincomb({{c, f}}); });
                    out.push_back(trace(f));
                    return;
                }
                break;
            case Kind::Name: {
                auto it = genpolys_.find(e.text);
                if (it != genpolys_.end()) {
                    for (const auto& m : it->second.components()) {
                        SymmetricForm f = m.form;
                        if (!c.is_one()) f = SymmetricForm::lincomb({{c, f}});
                        out.push_back(trace(f));
                    }
                    return;
                }
                break;
            }
            default: break;
        }
        type_error(e, "expected trace(FORM) terms");
    }

    bool is_trace_like(const Expr& e) const {
        if (e.kind == Kind::Call) return e.text == "trace";
        if (e.kind == Kind::Name) return genpolys_.count(e.text) > 0;
        for (const auto& a : e.args) {
            if (is_trace_like(*a)) return true;
        }
        return false;
    }

    // A genpoly name, or a map name taken as the degree-1 monomial x -> m(x).
    GenPoly function_named(const std::string& name, Loc loc) const {
        auto it = genpolys_.find(name);
        if (it != genpolys_.end()) {
            if (!same_spec(it->second.spec(), field(loc))) {
                throw SessionError("TypeMismatch", "'" + name + "' belongs to " + it->second.spec()->name(), loc);
            }
            return it->second;
        }
        if (maps_.count(name) || name == "id" || name == "zero") {
            return GenPoly::monomial(SymmetricForm::product_sym({map_named(name, loc)}).named(name));
        }
        if (names_.count(name)) throw SessionError("TypeMismatch", "'" + name + "' is not a function", loc);
        throw SessionError("NameError", "unknown function '" + name + "'", loc);
    }

    std::vector<AdditiveMap> dictionary(const std::optional<std::vector<std::string>>& names, Loc loc) const {
        if (!names) return default_dictionary(field(loc));
        std::vector<AdditiveMap> d;
        for (const auto& n : *names) d.push_back(map_named(n, loc));
        return d;
    }

    std::function<std::vector<FieldElement>()> probes_for(const SpecPtr& spec) const {
        auto table = probes_;
        return [table, spec] {
            auto it = table->find(spec.get());
            return it == table->end() ? default_probes(spec) : it->second;
        };
    }

    void add_command(Session& s, const Stmt& st, std::function<Report(const RunConfig&)> run) {
        const SpecPtr spec = spec_;
        s.commands.push_back(Command{format_stmt(st), st.loc, [run = std::move(run), spec](const RunConfig& rc) {
                                         Report r = run(rc);
                                         if (r.field.is_null() && spec) r.field = field_json(*spec);
                                         return r;
                                     }});
    }

    // ---- statements ----

    void stmt(const FieldDecl& f, const Stmt& st, Session& s) {
        declare(f.name, st.loc);
        SpecPtr spec = located(st.loc, [&] {
            SpecPtr base = f.radicand ? FieldSpec::quadratic(*f.radicand) : FieldSpec::rationals();
            return f.vars.empty() ? base : FieldSpec::ratfunc(base, f.vars);
        });
        fields_[f.name] = spec;
        spec_ = spec;
        ++s.declarations;
    }

    std::map<std::string, FieldElement> image_map(const std::vector<std::pair<std::string, ExprPtr>>& ims, Loc loc) const {
        std::map<std::string, FieldElement> out;
        for (const auto& [g, e] : ims) {
            if (field(loc)->var_index(g) < 0) throw SessionError("NameError", "'" + g + "' is not an indeterminate", e->loc);
            if (out.count(g)) throw SessionError("NameError", "image of '" + g + "' given twice", e->loc);
            out.emplace(g, elem(*e));
        }
        return out;
    }

    void stmt(const HomDecl& h, const Stmt& st, Session& s) {
        const SpecPtr& spec = field(st.loc);
        declare(h.name, st.loc);
        AdditiveMap m = located(st.loc, [&] {
            switch (h.shape) {
                case HomDecl::Shape::Id: return AdditiveMap::identity(spec);
                case HomDecl::Shape::Conj: return build_endomorphism(spec, {}, true);
                default: return build_endomorphism(spec, image_map(h.images, st.loc), h.conj);
            }
        });
        maps_.emplace(h.name, m.named(h.name));
        ++s.declarations;
    }

    void stmt(const DerDecl& d, const Stmt& st, Session& s) {
        const SpecPtr& spec = field(st.loc);
        declare(d.name, st.loc);
        AdditiveMap m = located(st.loc, [&] { return build_derivation(spec, image_map(d.images, st.loc)); });
        maps_.emplace(d.name, m.named(d.name));
        ++s.declarations;
    }

    void stmt(const MapDecl& d, const Stmt& st, Session& s) {
        field(st.loc);
        declare(d.name, st.loc);
        AdditiveMap m = located(st.loc, [&] { return map_expr(*d.expr); });
        maps_.emplace(d.name, m.named(d.name));
        ++s.declarations;
    }

    void stmt(const FormDecl& d, const Stmt& st, Session& s) {
        field(st.loc);
        declare(d.name, st.loc);
        SymmetricForm f = form_expr(*d.expr);
        forms_.emplace(d.name, f.named(d.name));
        ++s.declarations;
    }

    void stmt(const GenPolyDecl& d, const Stmt& st, Session& s) {
        const SpecPtr& spec = field(st.loc);
        declare(d.name, st.loc);
        std::vector<GenMonomial> comps;
        genpoly_terms(*d.expr, FieldElement::one(spec), comps);
        genpolys_.emplace(d.name, located(st.loc, [&] { return GenPoly(spec, std::move(comps)); }));
        ++s.declarations;
    }

    void stmt(const OptionCmd& o, const Stmt& st, Session& s) {
        if (o.key == "probes") {
            const SpecPtr& spec = field(st.loc);
            auto ps = elems(o.probes);
            for (std::size_t i = 0; i < ps.size(); ++i) {
                if (ps[i].is_zero()) throw SessionError("InvalidSpec", "probes must be nonzero", o.probes[i]->loc);
            }
            if (ps.empty()) throw SessionError("InvalidSpec", "probe list is empty", st.loc);
            (*probes_)[spec.get()] = ps;
            return;
        }
        if (o.key == "seed") s.options.seed = o.value;
        if (o.key == "samples") {
            if (o.value < 1) throw SessionError("InvalidSpec", "samples must be at least 1", st.loc);
            s.options.samples = o.value;
        }
        if (o.key == "max_arity") {
            if (o.value < 1 || o.value > kHardArityLimit) {
                throw SessionError("InvalidSpec", "max_arity must lie in 1.." + std::to_string(kHardArityLimit), st.loc);
            }
            s.options.max_arity = o.value;
        }
        if (o.key == "height") {
            if (o.value < 1) throw SessionError("InvalidSpec", "height must be at least 1", st.loc);
            s.options.height = o.value;
        }
        if (o.key == "degree") s.options.degree = o.value;
    }

    void stmt(const CheckCmd& c, const Stmt& st, Session& s) {
        const SpecPtr spec = field(st.loc);
        const GenPoly gp = function_named(c.fn, c.fn_loc);
        check_elem(*c.arg, true);
        check_elem(*c.rhs, true, c.fn);
        std::vector<FieldElement> gens;
        if (c.mode == CheckCmd::Mode::Span) {
            gens = elems(c.span);
            if (gens.empty()) throw SessionError("InvalidSpec", "span needs at least one generator", st.loc);
        }
        if (c.count && *c.count < 1) throw SessionError("InvalidSpec", "samples must be at least 1", st.loc);
        const ExprPtr arg = c.arg, rhs = c.rhs;
        const std::string fn_name = c.fn;
        auto is_x = [](const Expr& e) { return e.kind == Kind::Name && e.text == "x"; };
        auto is_fx = [fn_name, is_x](const Expr& e) {
            return e.kind == Kind::Call && e.text == fn_name && e.args.size() == 1 && is_x(*e.args[0]);
        };
        std::optional<Coeffs> p = located(c.arg->loc, [&] { return poly_of(*arg, spec, is_x); });
        std::optional<Coeffs> q = located(c.rhs->loc, [&] { return poly_of(*rhs, spec, is_fx); });
        const auto mode = c.mode;
        const auto count = c.count;
        const auto seed = c.seed;
        const std::string lhs_text = fn_name + "(" + format_expr(*arg) + ")", rhs_text = format_expr(*rhs);

        // the default mode tries the probe set before the seeded samples
        auto samples_for = [spec, mode, count, seed, gens, probes = probes_for(spec)](const RunConfig& rc, Report& r) {
            if (mode == CheckCmd::Mode::Span) return gens;
            SampleConfig cfg = rc.samples;
            if (count) cfg.count = *count;
            if (seed) cfg.seed = *seed;
            std::vector<FieldElement> xs;
            if (mode == CheckCmd::Mode::Default) {
                xs = probes();
                r.values["probes"] = Json::array();
                for (const auto& x : xs) r.values["probes"].push_back(x.to_string());
            }
            r.values["seed"] = cfg.seed;
            r.values["samples"] = cfg.count;
            for (auto& x : sample_elements(spec, cfg)) xs.push_back(std::move(x));
            return xs;
        };

        if (p && q) {
            const PolySpec P = PolySpec::make(*p, PolySpec::Side::Domain);
            const PolySpec Q = PolySpec::make(*q, PolySpec::Side::Codomain);
            add_command(s, st, [=](const RunConfig& rc) {
                Report r;
                if (!gp.components().empty()) {
                    Report pre = degree_precheck(gp.degree(), P, Q);
                    if (pre.verdict == Verdict::NotApplicable) return pre;
                }
                if (mode == CheckCmd::Mode::Span) {
                    const auto pm = P.as_monomial(), qm = Q.as_monomial();
                    if (gp.components().empty() || (gp.is_monomial() && pm && qm && pm->first == qm->first && pm->second.is_one())) {
                        const std::size_t k = gp.components().empty() ? (pm ? pm->first : 1) : pm->first;
                        const FieldElement lambda = qm ? qm->second : FieldElement::one(spec);
                        r = check_symmetrized(gp, k, lambda, gens, rc.max_arity);
                        r.values["lhs"] = lhs_text;
                        r.values["rhs"] = rhs_text;
                        return r;
                    }
                    r = check_pointwise(gp, P, Q, gens);
                    r.notes.push_back("span certificates need f monomial, P = x^k and Q = c*y^k; checked pointwise on the generators");
                    r.values["generators"] = Json::array();
                    for (const auto& g : gens) r.values["generators"].push_back(g.to_string());
                    return r;
                }
                Report tmp;
                const auto xs = samples_for(rc, tmp);
                r = check_pointwise(gp, P, Q, xs);
                for (const auto& [k, v] : tmp.values.items()) r.values[k] = v;
                return r;
            });
            return;
        }

        const Function fn = gp.as_function();
        auto lhs_expr = std::make_shared<Expr>();
        lhs_expr->kind = Kind::Call;
        lhs_expr->text = fn_name;
        lhs_expr->args = {arg};
        auto side = [spec, fn, fn_name](ExprPtr e, std::string label) {
            Function f;
            f.spec = spec;
            f.eval = [e, spec, fn, fn_name](const FieldElement& x) { return eval_elem(*e, Scope{spec, &x, &fn}); };
            f.oracle = ox::lambda("x", oracle_of(*e, fn.oracle));
            f.label = std::move(label);
            return f;
        };
        const Function lhs = side(lhs_expr, lhs_text), rhsf = side(rhs, rhs_text);
        add_command(s, st, [=](const RunConfig& rc) {
            Report tmp;
            const auto xs = samples_for(rc, tmp);
            Report r = check_pointwise(lhs, rhsf, xs);
            for (const auto& [k, v] : tmp.values.items()) r.values[k] = v;
            if (mode == CheckCmd::Mode::Span) {
                r.notes.push_back("right side is not a polynomial in f(x); checked pointwise on the generators");
                r.values["generators"] = Json::array();
                for (const auto& g : xs) r.values["generators"].push_back(g.to_string());
            }
            return r;
        });
    }

    void stmt(const ClassifyCmd& c, const Stmt& st, Session& s) {
        const SpecPtr spec = field(st.loc);
        auto probes = probes_for(spec);
        switch (c.what) {
            case ClassifyCmd::What::Quadratic: {
                const SymmetricForm f = form_named(c.target, c.target_loc);
                if (f.arity() != 2) throw SessionError("TypeMismatch", "classify quadratic needs a form of arity 2", c.target_loc);
                const auto dict = dictionary(c.dictionary, st.loc);
                add_command(s, st, [=](const RunConfig&) { return classify_quadratic_square(f, dict, probes()); });
                return;
            }
            case ClassifyCmd::What::Power: {
                const GenPoly gp = function_named(c.target, c.target_loc);
                const auto n = static_cast<std::size_t>(c.n);
                if (n < 2) throw SessionError("InvalidSpec", "the power identity needs n >= 2", st.loc);
                add_command(s, st, [=](const RunConfig& rc) { return check_power_identity(gp, n, probes(), rc.max_arity); });
                return;
            }
            case ClassifyCmd::What::Quartic: {
                const AdditiveMap a = map_named(c.target, c.target_loc);
                const auto dict = dictionary(c.dictionary, st.loc);
                add_command(s, st, [=](const RunConfig&) { return quartic_solve(a, dict, probes()); });
                return;
            }
            case ClassifyCmd::What::Affine: {
                const SymmetricForm f = form_named(c.target, c.target_loc);
                if (f.arity() != 2) throw SessionError("TypeMismatch", "classify affine needs a form of arity 2", c.target_loc);
                if (c.params.size() != 4) throw SessionError("TypeMismatch", "params takes (a, b, A, B)", st.loc);
                const auto v = elems(c.params);
                const AffineParams ap{v[0], v[1], v[2], v[3]};
                add_command(s, st, [=](const RunConfig&) { return affine_check(f, ap, probes()); });
                return;
            }
        }
    }

    void stmt(const DegreeCmd& d, const Stmt& st, Session& s) {
        const SpecPtr spec = field(st.loc);
        const GenPoly gp = function_named(d.name, d.name_loc);
        if (d.cap && *d.cap > kMaxIncrements - 1) {
            throw SessionError("InvalidSpec", "cap must be at most " + std::to_string(kMaxIncrements - 1), st.loc);
        }
        auto probes = probes_for(spec);
        const auto cap = d.cap;
        const std::string name = d.name;
        add_command(s, st, [=](const RunConfig& rc) {
            Function f = gp.as_function();
            f.label = name;
            return degree_estimate(f, probes(), cap ? *cap : std::min(rc.max_arity, kMaxIncrements - 1)).report;
        });
    }

    void stmt(const RankCmd& r, const Stmt& st, Session& s) {
        field(st.loc);
        const GenPoly gp = function_named(r.name, r.name_loc);
        const auto tr = elems(r.translates), pts = elems(r.points);
        const auto op = r.mult ? TranslateOp::Multiplicative : TranslateOp::Additive;
        const std::string name = r.name;
        add_command(s, st, [=](const RunConfig&) {
            Function f = gp.as_function();
            f.label = name;
            return variety_rank_report(f, tr, pts, op);
        });
    }

    void stmt(const VerifyCmd& v, const Stmt& st, Session& s) {
        const SpecPtr spec = field(st.loc);
        auto probes = probes_for(spec);
        if (v.what == VerifyCmd::What::ZeroTrace) {
            const SymmetricForm f = form_named(v.target, v.target_loc);
            add_command(s, st, [=](const RunConfig& rc) {
                return zero_trace_implies_zero_check(f, multiset_tuples(probes(), f.arity()), rc.max_arity);
            });
            return;
        }
        const AdditiveMap m = map_named(v.target, v.target_loc);
        if (v.what == VerifyCmd::What::LeviCivita) {
            const Expr& d = *v.decomposition;
            LeviCivita lc = located(d.loc, [&]() -> LeviCivita {
                if (d.text == "twoexp") {
                    if (d.args.size() != 4) type_error(d, "twoexp takes (alpha, beta, phi1, phi2)");
                    return TwoExp{elem(*d.args[0]), elem(*d.args[1]), map_expr(*d.args[2]), map_expr(*d.args[3])};
                }
                if (d.args.size() != 3) type_error(d, "logexp takes (phi, d, c)");
                return LogExp{map_expr(*d.args[0]), map_expr(*d.args[1]), elem(*d.args[2])};
            });
            add_command(s, st, [=](const RunConfig&) { return levicivita_verify(m, lc, probes()); });
            return;
        }
        const MapLaw law = v.what == VerifyCmd::What::Additive       ? MapLaw::Additive
                           : v.what == VerifyCmd::What::Multiplicative ? MapLaw::Multiplicative
                                                                       : MapLaw::Leibniz;
        add_command(s, st, [=](const RunConfig& rc) {
            Report r = verify_map_laws(m, law, sample_pairs(spec, rc.samples));
            r.values["seed"] = rc.samples.seed;
            r.values["samples"] = rc.samples.count;
            return r;
        });
    }

    void stmt(const PolarizeCmd& p, const Stmt& st, Session& s) {
        const SpecPtr spec = field(st.loc);
        SymmetricForm f = SymmetricForm::constant(FieldElement::zero(spec));
        if (forms_.count(p.name)) {
            f = form_named(p.name, p.name_loc);
        } else {
            const GenPoly gp = function_named(p.name, p.name_loc);
            if (!gp.is_monomial()) throw SessionError("TypeMismatch", "polarize needs a form or a monomial", p.name_loc);
            f = gp.components().front().form;
        }
        const auto ys = elems(p.ys);
        if (ys.size() > kMaxIncrements) throw SessionError("InvalidSpec", "at most 12 increments", st.loc);
        add_command(s, st, [=](const RunConfig& rc) {
            const FieldElement x = random_element(spec, rc.samples, 0);
            Report r = polarization_check(f, x, ys, rc.max_arity);
            r.values["base_point"] = x.to_string();
            return r;
        });
    }

    SpecPtr spec_;
    Loc cur_loc_;
    std::set<std::string> names_;
    std::map<std::string, SpecPtr> fields_;
    std::map<std::string, AdditiveMap> maps_;
    std::map<std::string, SymmetricForm> forms_;
    std::map<std::string, GenPoly> genpolys_;
    std::shared_ptr<ProbeTable> probes_;
};

}  // namespace

Session parse_session(const std::string& source) { return Elaborator().run(source); }

std::string session_digest(const SessionAst& a) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : format_session(a)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* kHex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 15];
    return out;
}

}  // namespace polcheck::dsl
