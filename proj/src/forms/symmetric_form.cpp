#include "polcheck/forms/symmetric_form.hpp"

#include <bit>

#include "polcheck/errors.hpp"
#include "polcheck/oracle_expr.hpp"

namespace polcheck {

struct SymmetricForm::Node {
    Kind kind = Kind::Constant;
    std::size_t arity = 0;
    SpecPtr spec;
    FieldElement value;
    std::vector<AdditiveMap> maps;
    std::vector<SymmetricForm> forms;
    std::vector<FieldElement> coeffs;
    std::size_t k = 1;
    std::string label;
};

SymmetricForm make_form(SymmetricForm::Node node) {
    return SymmetricForm(std::make_shared<const SymmetricForm::Node>(std::move(node)));
}

mpz_class factorial(std::size_t n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

namespace {

void check_arity(std::size_t arity) {
    if (arity > kHardArityLimit) {
        throw ArityTooLarge("form arity " + std::to_string(arity) + " exceeds the limit " +
                            std::to_string(kHardArityLimit));
    }
}

void check_spec(const SpecPtr& expected, const SpecPtr& got, const char* what) {
    if (!same_spec(expected, got)) {
        throw SpecMismatch(std::string(what) + " lies in " + got->name() + ", expected " + expected->name());
    }
}

}  // namespace

SymmetricForm SymmetricForm::constant(const FieldElement& c) {
    Node n;
    n.kind = Kind::Constant;
    n.spec = c.spec();
    n.value = c;
    return make_form(std::move(n));
}

SymmetricForm SymmetricForm::product_sym(std::vector<AdditiveMap> maps) {
    if (maps.empty()) throw InvalidSpec("product of no maps; use a constant form");
    check_arity(maps.size());
    for (const auto& m : maps) check_spec(maps.front().domain_spec(), m.domain_spec(), "product factor");
    Node n;
    n.kind = Kind::ProductSym;
    n.arity = maps.size();
    n.spec = maps.front().domain_spec();
    n.maps = std::move(maps);
    return make_form(std::move(n));
}

SymmetricForm SymmetricForm::map_of_product(const AdditiveMap& a, std::size_t arity) {
    if (arity == 0) throw TypeMismatch("mapprod needs n >= 1");
    check_arity(arity);
    Node n;
    n.kind = Kind::MapOfProduct;
    n.arity = arity;
    n.spec = a.domain_spec();
    n.maps = {a};
    return make_form(std::move(n));
}

SymmetricForm SymmetricForm::lift(const SymmetricForm& inner, std::size_t k) {
    if (k == 0) throw TypeMismatch("lift needs k >= 1");
    check_arity(inner.arity() * k);
    Node n;
    n.kind = Kind::Lift;
    n.arity = inner.arity() * k;
    n.spec = inner.spec();
    n.forms = {inner};
    n.k = k;
    return make_form(std::move(n));
}

SymmetricForm SymmetricForm::lincomb(std::vector<std::pair<FieldElement, SymmetricForm>> terms) {
    if (terms.empty()) throw InvalidSpec("empty linear combination of forms");
    Node n;
    n.kind = Kind::LinComb;
    n.arity = terms.front().second.arity();
    n.spec = terms.front().second.spec();
    for (auto& [c, f] : terms) {
        if (f.arity() != n.arity) {
            throw TypeMismatch("lincomb mixes arities " + std::to_string(n.arity) + " and " + std::to_string(f.arity()));
        }
        check_spec(n.spec, f.spec(), "lincomb term");
        check_spec(n.spec, c.spec(), "lincomb coefficient");
        n.coeffs.push_back(std::move(c));
        n.forms.push_back(std::move(f));
    }
    return make_form(std::move(n));
}

SymmetricForm SymmetricForm::form_product(std::vector<SymmetricForm> factors) {
    if (factors.empty()) throw InvalidSpec("product of no forms");
    Node n;
    n.kind = Kind::FormProduct;
    n.spec = factors.front().spec();
    for (const auto& f : factors) {
        check_spec(n.spec, f.spec(), "form factor");
        n.arity += f.arity();
    }
    check_arity(n.arity);
    n.forms = std::move(factors);
    return make_form(std::move(n));
}

SymmetricForm::Kind SymmetricForm::kind() const noexcept { return node_->kind; }
std::size_t SymmetricForm::arity() const noexcept { return node_->arity; }
const SpecPtr& SymmetricForm::spec() const noexcept { return node_->spec; }
const FieldElement& SymmetricForm::constant_value() const { return node_->value; }
const std::vector<AdditiveMap>& SymmetricForm::maps() const { return node_->maps; }
const std::vector<SymmetricForm>& SymmetricForm::forms() const { return node_->forms; }
const std::vector<FieldElement>& SymmetricForm::coefficients() const { return node_->coeffs; }
std::size_t SymmetricForm::lift_power() const { return node_->k; }
const std::string& SymmetricForm::label() const noexcept { return node_->label; }

SymmetricForm SymmetricForm::named(std::string label) const {
    Node n = *node_;
    n.label = std::move(label);
    return make_form(std::move(n));
}

Json SymmetricForm::descriptor() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: return Json{{"kind", "constant"}, {"c", n.value.to_string()}};
        case Kind::ProductSym: {
            Json maps = Json::array();
            for (const auto& m : n.maps) maps.push_back(m.descriptor());
            return Json{{"kind", "product_sym"}, {"maps", maps}};
        }
        case Kind::MapOfProduct: return Json{{"kind", "map_of_product"}, {"map", n.maps.front().descriptor()}, {"n", n.arity}};
        case Kind::Lift: return Json{{"kind", "lift"}, {"inner", n.forms.front().descriptor()}, {"k", n.k}};
        case Kind::LinComb: {
            Json terms = Json::array();
            for (std::size_t i = 0; i < n.forms.size(); ++i) {
                terms.push_back(Json{{"c", n.coeffs[i].to_string()}, {"form", n.forms[i].descriptor()}});
            }
            return Json{{"kind", "lincomb"}, {"terms", terms}};
        }
        case Kind::FormProduct: {
            Json factors = Json::array();
            for (const auto& f : n.forms) factors.push_back(f.descriptor());
            return Json{{"kind", "form_product"}, {"factors", factors}};
        }
    }
    return Json{};
}

std::string SymmetricForm::to_string() const {
    const Node& n = *node_;
    if (!n.label.empty()) return n.label;
    auto join_maps = [](const std::vector<AdditiveMap>& ms) {
        std::string s;
        for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? ", " : "") + ms[i].to_string();
        return s;
    };
    switch (n.kind) {
        case Kind::Constant: return n.value.to_string();
        case Kind::ProductSym: return "product(" + join_maps(n.maps) + ")";
        case Kind::MapOfProduct: return "mapprod(" + n.maps.front().to_string() + ", " + std::to_string(n.arity) + ")";
        case Kind::Lift: return "lift(" + n.forms.front().to_string() + ", " + std::to_string(n.k) + ")";
        case Kind::LinComb: {
            std::string s = "lincomb(";
            for (std::size_t i = 0; i < n.forms.size(); ++i) {
                s += (i ? ", " : "") + std::string("(") + n.coeffs[i].to_string() + ")*" + n.forms[i].to_string();
            }
            return s + ")";
        }
        case Kind::FormProduct: {
            std::string s = "formprod(";
            for (std::size_t i = 0; i < n.forms.size(); ++i) s += (i ? ", " : "") + n.forms[i].to_string();
            return s + ")";
        }
    }
    return "?";
}

namespace {

FieldElement eval_node(const SymmetricForm& f, std::span<const FieldElement> args);

// Permanent of M[i][j] = maps[i](args[j]) by dynamic programming over column subsets.
FieldElement permanent(const std::vector<AdditiveMap>& maps, std::span<const FieldElement> args,
                       const SpecPtr& spec) {
    const std::size_t n = maps.size();
    std::vector<std::vector<FieldElement>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j) m[i].push_back(maps[i](args[j]));
    }
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<FieldElement> dp(full + 1, FieldElement::zero(spec));
    dp[0] = FieldElement::one(spec);
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (dp[mask].is_zero()) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            if (m[row][j].is_zero()) continue;
            dp[mask | (std::size_t{1} << j)] += dp[mask] * m[row][j];
        }
    }
    return dp[full];
}

// Sum over unordered partitions of the arguments into blocks of size k of inner(block products).
void lift_partitions(const SymmetricForm& inner, std::size_t k, std::span<const FieldElement> args,
                     std::vector<bool>& used, std::vector<FieldElement>& blocks, FieldElement& acc,
                     std::size_t& count) {
    std::size_t first = 0;
    while (first < args.size() && used[first]) ++first;
    if (first == args.size()) {
        acc += eval_node(inner, blocks);
        ++count;
        return;
    }
    used[first] = true;
    // Choose the k-1 companions of `first` in increasing order.
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, FieldElement)> pick = [&](std::size_t from, FieldElement prod) {
        if (chosen.size() == k - 1) {
            blocks.push_back(std::move(prod));
            lift_partitions(inner, k, args, used, blocks, acc, count);
            blocks.pop_back();
            return;
        }
        for (std::size_t j = from; j < args.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            chosen.push_back(j);
            pick(j + 1, prod * args[j]);
            chosen.pop_back();
            used[j] = false;
        }
    };
    pick(first + 1, args[first]);
    used[first] = false;
}

// Sum over ordered assignments of argument subsets of sizes arity(F_i) to the factors F_i.
void product_assignments(const std::vector<SymmetricForm>& factors, std::size_t idx,
                         std::span<const FieldElement> args, std::vector<bool>& used, const FieldElement& prod,
                         FieldElement& acc) {
    if (idx == factors.size()) {
        acc += prod;
        return;
    }
    const std::size_t r = factors[idx].arity();
    std::vector<FieldElement> sub;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
        if (sub.size() == r) {
            const FieldElement v = eval_node(factors[idx], sub);
            if (!v.is_zero()) product_assignments(factors, idx + 1, args, used, prod * v, acc);
            return;
        }
        for (std::size_t j = from; j < args.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            sub.push_back(args[j]);
            pick(j + 1);
            sub.pop_back();
            used[j] = false;
        }
    };
    pick(0);
}

FieldElement eval_node(const SymmetricForm& f, std::span<const FieldElement> args) {
    const SpecPtr& spec = f.spec();
    switch (f.kind()) {
        case SymmetricForm::Kind::Constant: return f.constant_value();
        case SymmetricForm::Kind::ProductSym: {
            const FieldElement perm = permanent(f.maps(), args, spec);
            return perm / FieldElement::rational(spec, mpq_class(factorial(f.arity())));
        }
        case SymmetricForm::Kind::MapOfProduct: {
            FieldElement prod = FieldElement::one(spec);
            for (const auto& a : args) prod *= a;
            return f.maps().front()(prod);
        }
        case SymmetricForm::Kind::Lift: {
            std::vector<bool> used(args.size(), false);
            std::vector<FieldElement> blocks;
            FieldElement acc = FieldElement::zero(spec);
            std::size_t count = 0;
            lift_partitions(f.forms().front(), f.lift_power(), args, used, blocks, acc, count);
            return acc / FieldElement::integer(spec, static_cast<long>(count));
        }
        case SymmetricForm::Kind::LinComb: {
            FieldElement acc = FieldElement::zero(spec);
            for (std::size_t i = 0; i < f.forms().size(); ++i) {
                if (f.coefficients()[i].is_zero()) continue;
                acc += f.coefficients()[i] * eval_node(f.forms()[i], args);
            }
            return acc;
        }
        case SymmetricForm::Kind::FormProduct: {
            std::vector<bool> used(args.size(), false);
            FieldElement acc = FieldElement::zero(spec);
            product_assignments(f.forms(), 0, args, used, FieldElement::one(spec), acc);
            // n! / prod r_i! ordered assignments
            mpz_class count = factorial(f.arity());
            for (const auto& g : f.forms()) count /= factorial(g.arity());
            return acc / FieldElement::rational(spec, mpq_class(count));
        }
    }
    return FieldElement::zero(spec);
}

}  // namespace

FieldElement eval_form(const SymmetricForm& f, std::span<const FieldElement> args, std::size_t max_arity) {
    if (args.size() != f.arity()) {
        throw TypeMismatch("form of arity " + std::to_string(f.arity()) + " applied to " +
                           std::to_string(args.size()) + " arguments");
    }
    if (f.arity() > max_arity) {
        throw ArityTooLarge("form arity " + std::to_string(f.arity()) + " exceeds the cap " + std::to_string(max_arity));
    }
    for (const auto& a : args) check_spec(f.spec(), a.spec(), "form argument");
    return eval_node(f, args);
}

FieldElement eval_trace(const SymmetricForm& f, const FieldElement& x) {
    check_spec(f.spec(), x.spec(), "trace argument");
    const SpecPtr& spec = f.spec();
    switch (f.kind()) {
        case SymmetricForm::Kind::Constant: return f.constant_value();
        case SymmetricForm::Kind::ProductSym: {
            FieldElement prod = FieldElement::one(spec);
            for (const auto& m : f.maps()) {
                prod *= m(x);
                if (prod.is_zero()) break;
            }
            return prod;
        }
        case SymmetricForm::Kind::MapOfProduct: return f.maps().front()(x.pow(static_cast<long>(f.arity())));
        case SymmetricForm::Kind::Lift: return eval_trace(f.forms().front(), x.pow(static_cast<long>(f.lift_power())));
        case SymmetricForm::Kind::LinComb: {
            FieldElement acc = FieldElement::zero(spec);
            for (std::size_t i = 0; i < f.forms().size(); ++i) {
                if (f.coefficients()[i].is_zero()) continue;
                acc += f.coefficients()[i] * eval_trace(f.forms()[i], x);
            }
            return acc;
        }
        case SymmetricForm::Kind::FormProduct: {
            FieldElement prod = FieldElement::one(spec);
            for (const auto& g : f.forms()) prod *= eval_trace(g, x);
            return prod;
        }
    }
    return FieldElement::zero(spec);
}

Function map_function(const AdditiveMap& a) {
    return Function{a.domain_spec(), [a](const FieldElement& x) { return a(x); },
                    ox::lambda("x", ox::apply_map(a.descriptor(), ox::var("x"))), a.to_string()};
}

Function GenMonomial::as_function() const {
    SymmetricForm f = form;
    return Function{f.spec(), [f](const FieldElement& x) { return eval_trace(f, x); },
                    ox::lambda("x", ox::trace(f.descriptor(), ox::var("x"))), "trace(" + f.to_string() + ")"};
}

GenMonomial trace(const SymmetricForm& f) { return GenMonomial{f.arity(), f}; }

Function delta(const Function& f, const FieldElement& y) {
    Function g;
    g.spec = f.spec;
    g.eval = [f, y](const FieldElement& x) { return f(x + y) - f(x); };
    if (!f.oracle.is_null()) {
        g.oracle = ox::lambda("x", ox::sub(ox::call(f.oracle, ox::add(ox::var("x"), ox::lit(y))),
                                           ox::call(f.oracle, ox::var("x"))));
    }
    g.label = "delta[" + y.to_string() + "](" + f.label + ")";
    return g;
}

FieldElement iterated_delta(const Function& f, const FieldElement& x, std::span<const FieldElement> ys) {
    const std::size_t m = ys.size();
    if (m > kMaxIncrements) {
        throw ArityTooLarge(std::to_string(m) + " increments exceed the limit " + std::to_string(kMaxIncrements));
    }
    // Subset sums by Gray-code order would save additions; plain enumeration keeps it obvious.
    FieldElement acc = FieldElement::zero(f.spec);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        FieldElement point = x;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::size_t{1} << i)) point += ys[i];
        }
        const FieldElement v = f(point);
        if ((m - static_cast<std::size_t>(std::popcount(mask))) % 2 == 0) {
            acc += v;
        } else {
            acc -= v;
        }
    }
    return acc;
}

Json iterated_delta_expr(const Function& f, const FieldElement& x, std::span<const FieldElement> ys) {
    return ox::delta(f.oracle, ox::lit(x), ox::lits(std::vector<FieldElement>(ys.begin(), ys.end())));
}

FieldElement polarize(const GenMonomial& p, std::span<const FieldElement> ys) {
    if (ys.size() != p.degree) {
        throw TypeMismatch("polarize needs " + std::to_string(p.degree) + " increments, got " + std::to_string(ys.size()));
    }
    const SpecPtr& spec = p.form.spec();
    const FieldElement d = iterated_delta(p.as_function(), FieldElement::zero(spec), ys);
    return d / FieldElement::rational(spec, mpq_class(factorial(p.degree)));
}

Report polarization_check(const SymmetricForm& f, const FieldElement& x, std::span<const FieldElement> ys,
                          std::size_t max_arity) {
    Report r;
    r.operation = "polarization_check";
    r.field = field_json(*f.spec());
    const std::size_t n = f.arity(), m = ys.size();
    r.values["form"] = f.to_string();
    r.values["n"] = n;
    r.values["m"] = m;
    r.sample_description = "x = " + x.to_string() + ", " + std::to_string(m) + " increments";
    if (m < n) {
        r.verdict = Verdict::NotApplicable;
        r.notes.push_back("fewer increments than the arity; the formula only fixes m >= n");
        return r;
    }
    const GenMonomial p = trace(f);
    const Function fn = p.as_function();
    const FieldElement lhs = iterated_delta(fn, x, ys);
    add_claim(r, "delta", iterated_delta_expr(fn, x, ys), lhs);
    FieldElement rhs = FieldElement::zero(f.spec());
    if (m == n) {
        const FieldElement value = eval_form(f, ys, max_arity);
        const FieldElement nf = FieldElement::rational(f.spec(), mpq_class(factorial(n)));
        rhs = nf * value;
        add_claim(r, "n! * form", ox::mul(ox::lit(nf), ox::eval_form(f.descriptor(), ox::lits({ys.begin(), ys.end()}))),
                  rhs);
    }
    r.values["lhs"] = lhs.to_string();
    r.values["rhs"] = rhs.to_string();
    std::vector<FieldElement> inputs{x};
    inputs.insert(inputs.end(), ys.begin(), ys.end());
    if (lhs == rhs) {
        r.verdict = Verdict::Pass;
    } else {
        r.verdict = Verdict::Refuted;
        r.witnesses.push_back(make_witness(std::move(inputs), lhs, rhs));
    }
    return r;
}

Report zero_trace_implies_zero_check(const SymmetricForm& f,
                                     const std::vector<std::vector<FieldElement>>& sample_tuples,
                                     std::size_t max_arity) {
    Report r;
    r.operation = "zero_trace_implies_zero_check";
    r.field = field_json(*f.spec());
    r.values["form"] = f.to_string();
    r.sample_description = std::to_string(sample_tuples.size()) + " tuples";
    const std::size_t n = f.arity();
    const GenMonomial p = trace(f);
    // Precondition: the trace vanishes at every subset sum the polarization will visit.
    for (const auto& tuple : sample_tuples) {
        if (tuple.size() != n) throw TypeMismatch("tuple length differs from the form arity");
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            FieldElement point = FieldElement::zero(f.spec());
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) point += tuple[i];
            }
            const FieldElement v = p(point);
            if (!v.is_zero()) {
                r.verdict = Verdict::NotApplicable;
                r.notes.push_back("trace is " + v.to_string() + " at " + point.to_string() + ", not identically zero");
                add_claim(r, "trace", ox::trace(f.descriptor(), ox::lit(point)), v);
                return r;
            }
        }
    }
    for (const auto& tuple : sample_tuples) {
        const FieldElement by_polarization = polarize(p, tuple);
        const FieldElement direct = eval_form(f, tuple, max_arity);
        add_claim(r, "form", ox::eval_form(f.descriptor(), ox::lits(tuple)), direct);
        if (!by_polarization.is_zero() || !direct.is_zero()) {
            r.verdict = Verdict::Refuted;
            r.witnesses.push_back(make_witness(tuple, direct, FieldElement::zero(f.spec()),
                                               "polarized value " + by_polarization.to_string()));
        }
    }
    if (r.verdict == Verdict::Refuted) {
        r.notes.push_back("nonzero form value under a vanishing trace: engine inconsistency or span too small");
    }
    return r;
}

}  // namespace polcheck
