#include "polcheck/funceq/funceq.hpp"

#include "polcheck/errors.hpp"
#include "polcheck/linalg.hpp"
#include "polcheck/oracle_expr.hpp"

namespace polcheck {

namespace {

Condition cond(std::string name) {
    Condition c;
    c.name = std::move(name);
    return c;
}

}  // namespace

PolySpec PolySpec::make(std::vector<FieldElement> coefficients, Side side) {
    if (!coefficients.empty() && coefficients.back().is_zero()) {
        throw InvalidSpec("polynomial with zero leading coefficient");
    }
    return PolySpec{std::move(coefficients), side};
}

PolySpec PolySpec::monomial(const FieldElement& lambda, std::size_t k, Side side) {
    if (lambda.is_zero()) return PolySpec{{}, side};
    std::vector<FieldElement> c(k + 1, FieldElement::zero(lambda.spec()));
    c[k] = lambda;
    return PolySpec{std::move(c), side};
}

long PolySpec::degree() const noexcept { return static_cast<long>(coefficients.size()) - 1; }

FieldElement PolySpec::operator()(const FieldElement& x) const {
    FieldElement acc = FieldElement::zero(x.spec());
    for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
    return acc;
}

Json PolySpec::oracle(Json arg) const {
    std::vector<Json> terms;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i].is_zero()) continue;
        terms.push_back(ox::mul(ox::lit(coefficients[i]), ox::pow(arg, static_cast<long>(i))));
    }
    if (terms.empty()) return ox::lit_text("0");
    return ox::sum(std::move(terms));
}

std::optional<std::pair<std::size_t, FieldElement>> PolySpec::as_monomial() const {
    if (coefficients.empty()) return std::nullopt;
    for (std::size_t i = 0; i + 1 < coefficients.size(); ++i) {
        if (!coefficients[i].is_zero()) return std::nullopt;
    }
    return std::make_pair(coefficients.size() - 1, coefficients.back());
}

std::string PolySpec::to_string(const std::string& var) const {
    if (coefficients.empty()) return "0";
    std::string s;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        if (coefficients[i].is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string c = coefficients[i].to_string();
        std::string term;
        if (mono.empty()) {
            term = "(" + c + ")";
        } else if (coefficients[i].is_one()) {
            term = mono;
        } else {
            term = "(" + c + ")*" + mono;
        }
        s += (s.empty() ? "" : " + ") + term;
    }
    return s;
}

Report degree_precheck(std::size_t f_deg, const PolySpec& p, const PolySpec& q) {
    Report r;
    r.operation = "degree_precheck";
    r.values["f_degree"] = f_deg;
    r.values["deg_P"] = p.degree();
    r.values["deg_Q"] = q.degree();
    if (f_deg < 1) throw InvalidSpec("degree_precheck needs f_deg >= 1");
    const long lhs = static_cast<long>(f_deg) * p.degree(), rhs = static_cast<long>(f_deg) * q.degree();
    r.values["lhs_degree"] = lhs;
    r.values["rhs_degree"] = rhs;
    if (p.degree() == q.degree()) {
        r.verdict = Verdict::Pass;
    } else {
        r.verdict = Verdict::NotApplicable;
        r.notes.push_back("f(P(x)) has degree " + std::to_string(lhs) + " but Q(f(x)) has degree " + std::to_string(rhs) +
                          "; the equation needs deg P = deg Q");
    }
    return r;
}

Function compose_inner(const Function& f, const PolySpec& p) {
    Function g;
    g.spec = f.spec;
    g.eval = [f, p](const FieldElement& x) { return f(p(x)); };
    if (!f.oracle.is_null()) g.oracle = ox::lambda("x", ox::call(f.oracle, p.oracle(ox::var("x"))));
    g.label = f.label + "(" + p.to_string("x") + ")";
    return g;
}

Function compose_outer(const PolySpec& q, const Function& f) {
    Function g;
    g.spec = f.spec;
    g.eval = [f, q](const FieldElement& x) { return q(f(x)); };
    if (!f.oracle.is_null()) g.oracle = ox::lambda("x", q.oracle(ox::call(f.oracle, ox::var("x"))));
    g.label = q.to_string("f(x)");
    return g;
}

Report check_pointwise(const Function& lhs, const Function& rhs, const std::vector<FieldElement>& samples) {
    Report r;
    r.operation = "check_pointwise";
    r.field = field_json(*lhs.spec);
    r.values["lhs"] = lhs.label;
    r.values["rhs"] = rhs.label;
    if (samples.empty()) throw InvalidSpec("check_pointwise needs at least one sample");
    std::size_t checked = 0;
    for (const auto& x : samples) {
        FieldElement l, rv;
        try {
            l = lhs(x);
            rv = rhs(x);
        } catch (const DenominatorVanishes& e) {
            r.notes.push_back("sample " + x.to_string() + " skipped: " + e.what());
            continue;
        } catch (const DivisionByZero& e) {
            r.notes.push_back("sample " + x.to_string() + " skipped: " + e.what());
            continue;
        }
        ++checked;
        if (!lhs.oracle.is_null()) add_claim(r, "lhs", ox::call(lhs.oracle, ox::lit(x)), l);
        if (!rhs.oracle.is_null()) add_claim(r, "rhs", ox::call(rhs.oracle, ox::lit(x)), rv);
        if (!(l == rv)) r.witnesses.push_back(make_witness({x}, l, rv));
    }
    r.values["samples_checked"] = checked;
    r.sample_description = std::to_string(checked) + " of " + std::to_string(samples.size()) + " samples";
    if (!r.witnesses.empty()) {
        r.verdict = Verdict::Refuted;
    } else if (checked == 0) {
        r.verdict = Verdict::Inconclusive;
    } else {
        r.verdict = Verdict::HoldsOnSample;
    }
    return r;
}

Report check_pointwise(const GenPoly& f, const PolySpec& p, const PolySpec& q, const std::vector<FieldElement>& samples) {
    const Function fn = f.as_function();
    Report r = check_pointwise(compose_inner(fn, p), compose_outer(q, fn), samples);
    r.values["f"] = f.to_string();
    r.values["P"] = p.to_string("x");
    r.values["Q"] = q.to_string("y");
    return r;
}

namespace {

Json generator_list(const std::vector<FieldElement>& gens) {
    Json j = Json::array();
    for (const auto& g : gens) j.push_back(g.to_string());
    return j;
}

}  // namespace

Report check_symmetrized(const GenPoly& f, std::size_t k, const FieldElement& lambda,
                         const std::vector<FieldElement>& generators, std::size_t max_arity) {
    Report r;
    r.operation = "check_symmetrized";
    r.field = field_json(*f.spec());
    r.values["f"] = f.to_string();
    r.values["k"] = k;
    r.values["lambda"] = lambda.to_string();
    r.values["generators"] = generator_list(generators);
    if (k == 0) throw InvalidSpec("check_symmetrized needs k >= 1");
    if (f.components().empty()) {
        r.verdict = Verdict::HoldsOnSpan;
        r.notes.push_back("f is the zero polynomial");
        r.sample_description = "span of the generators";
        return r;
    }
    if (!f.is_monomial()) {
        r.verdict = Verdict::NotApplicable;
        r.notes.push_back("the symmetrized check needs a single generalized monomial");
        return r;
    }
    const SymmetricForm form = f.components().front().form;
    const std::size_t n = form.arity();
    if (n * k > max_arity) {
        throw ArityTooLarge("symmetrized check needs arity " + std::to_string(n * k) + " above the cap " +
                            std::to_string(max_arity));
    }
    const SymmetricForm lhs_form = SymmetricForm::lift(form, k);
    const SymmetricForm rhs_form =
        SymmetricForm::lincomb({{lambda, SymmetricForm::form_product(std::vector<SymmetricForm>(k, form))}});
    const Json ld = lhs_form.descriptor(), rd = rhs_form.descriptor();
    const auto tuples = multiset_tuples(generators, n * k);
    for (const auto& t : tuples) {
        const FieldElement l = eval_form(lhs_form, t, max_arity);
        const FieldElement rv = eval_form(rhs_form, t, max_arity);
        add_claim(r, "lhs form", ox::eval_form(ld, ox::lits(t)), l);
        add_claim(r, "rhs form", ox::eval_form(rd, ox::lits(t)), rv);
        if (!(l == rv)) r.witnesses.push_back(make_witness(t, l, rv));
    }
    r.values["tuples_checked"] = tuples.size();
    r.sample_description = "Q-span of " + std::to_string(n * k) + "-fold products of the generators";
    r.verdict = r.witnesses.empty() ? Verdict::HoldsOnSpan : Verdict::Refuted;
    return r;
}

FieldElement f4_value(const SymmetricForm& f2, std::span<const FieldElement> x) {
    if (x.size() != 4) throw TypeMismatch("F4 takes four arguments");
    auto F = [&f2](const FieldElement& u, const FieldElement& v) {
        const FieldElement args[2] = {u, v};
        return eval_form(f2, args);
    };
    return F(x[0] * x[1], x[2] * x[3]) + F(x[0] * x[2], x[1] * x[3]) + F(x[0] * x[3], x[1] * x[2]) -
           F(x[0], x[1]) * F(x[2], x[3]) - F(x[0], x[2]) * F(x[1], x[3]) - F(x[0], x[3]) * F(x[1], x[2]);
}

SymmetricForm f4_form(const SymmetricForm& f2) {
    const SpecPtr& spec = f2.spec();
    return SymmetricForm::lincomb({{FieldElement::integer(spec, 3), SymmetricForm::lift(f2, 2)},
                                   {FieldElement::integer(spec, -3), SymmetricForm::form_product({f2, f2})}});
}

std::vector<AdditiveMap> default_dictionary(const SpecPtr& spec) {
    std::vector<AdditiveMap> d{AdditiveMap::identity(spec).named("id")};
    if (spec->has_sqrt()) d.push_back(build_endomorphism(spec, {}, true).named("conj"));
    return d;
}

namespace {

std::vector<FieldElement> with_one(std::vector<FieldElement> probes, const SpecPtr& spec) {
    const FieldElement one = FieldElement::one(spec);
    bool has = false;
    for (const auto& p : probes) has = has || p == one;
    if (!has) probes.insert(probes.begin(), one);
    return probes;
}

// Probes together with their pairwise products, without repeats, in first-seen order.
std::vector<FieldElement> with_products(const std::vector<FieldElement>& probes) {
    std::vector<FieldElement> out;
    auto push = [&out](const FieldElement& e) {
        for (const auto& o : out) {
            if (o == e) return;
        }
        out.push_back(e);
    };
    for (const auto& p : probes) push(p);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i; j < probes.size(); ++j) push(probes[i] * probes[j]);
    }
    return out;
}

struct DictionaryFit {
    std::optional<std::vector<FieldElement>> coefficients;
    std::optional<Witness> residual;
};

// Solves target(p) = sum_j c_j dict_j(p) over the points, adding equations one at a time so that an
// inconsistency is reported at the first point that breaks it.
DictionaryFit fit_dictionary(const std::function<FieldElement(const FieldElement&)>& target,
                             const std::vector<AdditiveMap>& dict, const std::vector<FieldElement>& points,
                             const SpecPtr& spec) {
    DictionaryFit fit;
    Matrix a;
    std::vector<FieldElement> b;
    std::vector<FieldElement> last(dict.size(), FieldElement::zero(spec));
    for (const auto& p : points) {
        std::vector<FieldElement> row;
        for (const auto& m : dict) row.push_back(m(p));
        const FieldElement tv = target(p);
        a.push_back(row);
        b.push_back(tv);
        auto sol = solve_linear(a, b, spec);
        if (!sol) {
            FieldElement approx = FieldElement::zero(spec);
            for (std::size_t j = 0; j < dict.size(); ++j) approx += last[j] * row[j];
            fit.residual = make_witness({p}, tv, approx, "value not reached by the dictionary span");
            return fit;
        }
        last = *sol;
    }
    fit.coefficients = last;
    return fit;
}

std::string tuple_text(const std::vector<FieldElement>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].to_string();
    return s + ")";
}

}  // namespace

Report classify_quadratic_square(const SymmetricForm& f2, const std::vector<AdditiveMap>& dictionary,
                                 const std::vector<FieldElement>& probes_in) {
    Report r;
    r.operation = "classify_quadratic_square";
    const SpecPtr& spec = f2.spec();
    r.field = field_json(*spec);
    r.values["form"] = f2.to_string();
    if (f2.arity() != 2) throw TypeMismatch("classify quadratic needs a form of arity 2");
    const std::vector<FieldElement> probes = with_one(probes_in, spec);
    r.values["probes"] = generator_list(probes);
    r.sample_description = "probe set and its pairwise products";
    const FieldElement one = FieldElement::one(spec), zero = FieldElement::zero(spec);
    const Json fd = f2.descriptor();
    auto F = [&f2](const FieldElement& u, const FieldElement& v) {
        const FieldElement args[2] = {u, v};
        return eval_form(f2, args);
    };
    Classification cls;

    // (1)-(2) F4 on every probe 4-multiset.
    Condition c4 = cond("F4 vanishes on probe 4-tuples");
    const Json f4d = f4_form(f2).descriptor();
    const auto tuples = multiset_tuples(probes, 4);
    for (const auto& t : tuples) {
        const FieldElement v = f4_value(f2, t);
        add_claim(r, "F4", ox::eval_form(f4d, ox::lits(t)), v);
        if (!v.is_zero()) c4.witnesses.push_back(make_witness(t, v, zero, "F4" + tuple_text(t)));
    }
    c4.holds = c4.witnesses.empty();
    c4.note = std::to_string(tuples.size()) + " tuples";
    r.conditions.push_back(c4);

    // (3) f(1) = F2(1, 1).
    const FieldElement c = F(one, one);
    add_claim(r, "f(1)", ox::eval_form(fd, {ox::lit(one), ox::lit(one)}), c);
    cls.f_at_1 = c;
    if (!c4.holds) {
        r.verdict = Verdict::Refuted;
        r.witnesses = c4.witnesses;
        cls.case_tag = "refuted";
        r.classification = cls;
        r.notes.push_back("F4 is not identically zero, so f(x^2) = f(x)^2 fails");
        return r;
    }
    Condition cf = cond("f(1) in {0, 1}");
    cf.holds = c.is_zero() || c.is_one();
    if (!cf.holds) cf.witnesses.push_back(make_witness({one}, c * c, c, "f(1)^2 vs f(1)"));
    r.conditions.push_back(cf);
    if (!cf.holds) {
        r.verdict = Verdict::Refuted;
        r.witnesses = cf.witnesses;
        cls.case_tag = "refuted";
        r.classification = cls;
        return r;
    }

    const std::vector<FieldElement> points = with_products(probes);
    // (4) f(1) = 0 forces f = 0.
    if (c.is_zero()) {
        Condition cz = cond("f vanishes on probes");
        for (const auto& x : points) {
            const FieldElement v = F(x, x);
            add_claim(r, "f", ox::eval_form(fd, {ox::lit(x), ox::lit(x)}), v);
            if (!v.is_zero()) cz.witnesses.push_back(make_witness({x}, v, zero));
        }
        cz.holds = cz.witnesses.empty();
        r.conditions.push_back(cz);
        cls.case_tag = "zero";
        r.classification = cls;
        if (cz.holds) {
            r.verdict = Verdict::HoldsOnSample;
        } else {
            r.verdict = Verdict::Inconclusive;
            r.witnesses = cz.witnesses;
            r.notes.push_back("F4 vanished on the probes yet f does not; the probe set is too small");
        }
        return r;
    }

    // (5) a(x) = F2(x, 1), Eq. (3) and the convolution identity.
    auto a = [&F, &one](const FieldElement& x) { return F(x, one); };
    auto a_expr = [&fd, &one](Json x) { return ox::eval_form(fd, {std::move(x), ox::lit(one)}); };
    Condition c3 = cond("-a(x^4) + a(x^2)^2 + 4 a(x)^2 a(x^2) - 4 a(x)^4 = 0");
    for (const auto& x : probes) {
        const FieldElement x2 = x * x, x4 = x2 * x2;
        const FieldElement ax = a(x), ax2 = a(x2);
        const FieldElement four = FieldElement::integer(spec, 4);
        const FieldElement v = -a(x4) + ax2 * ax2 + four * ax * ax * ax2 - four * ax.pow(4);
        const Json jx = ox::lit(x);
        const Json e = ox::sum({ox::neg(a_expr(ox::pow(jx, 4))), ox::pow(a_expr(ox::pow(jx, 2)), 2),
                                ox::mul(ox::lit_text("4"), ox::mul(ox::pow(a_expr(jx), 2), a_expr(ox::pow(jx, 2)))),
                                ox::neg(ox::mul(ox::lit_text("4"), ox::pow(a_expr(jx), 4)))});
        add_claim(r, "Eq3", e, v);
        if (!v.is_zero()) c3.witnesses.push_back(make_witness({x}, v, zero));
    }
    c3.holds = c3.witnesses.empty();
    r.conditions.push_back(c3);

    Condition cc = cond("A(xy) = a(x)A(y) + a(y)A(x) for every probe z*");
    bool a_vanishes = true;
    for (const auto& z : probes) {
        const FieldElement az = a(z);
        auto A = [&](const FieldElement& x) { return a(x * z) - az * a(x); };
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const FieldElement& x = probes[i];
            if (!A(x).is_zero()) a_vanishes = false;
            for (std::size_t j = i; j < probes.size(); ++j) {
                const FieldElement& y = probes[j];
                const FieldElement lhs = A(x * y);
                const FieldElement rhs = a(x) * A(y) + a(y) * A(x);
                if (!(lhs == rhs)) {
                    cc.witnesses.push_back(make_witness({x, y, z}, lhs, rhs, "inputs are x, y, z*"));
                }
            }
        }
    }
    cc.holds = cc.witnesses.empty();
    r.conditions.push_back(cc);
    r.values["A_vanishes_on_probes"] = a_vanishes;
    if (!c3.holds || !cc.holds) {
        r.verdict = Verdict::Refuted;
        for (const auto& cond : {c3, cc}) {
            r.witnesses.insert(r.witnesses.end(), cond.witnesses.begin(), cond.witnesses.end());
        }
        cls.case_tag = "refuted";
        r.classification = cls;
        return r;
    }

    // Solve a = sum c_j phi_j on probes and products, then read off phi_1, phi_2 with a = (phi_1 + phi_2)/2.
    Condition cd = cond("a lies in the dictionary span");
    const DictionaryFit fit = fit_dictionary(a, dictionary, points, spec);
    std::optional<std::pair<AdditiveMap, AdditiveMap>> factors;
    if (fit.coefficients) {
        const FieldElement half = FieldElement::rational(spec, mpq_class(1, 2));
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < dictionary.size(); ++j) {
            if (!(*fit.coefficients)[j].is_zero()) nz.push_back(j);
        }
        Json coeffs = Json::object();
        for (std::size_t j = 0; j < dictionary.size(); ++j) {
            coeffs[dictionary[j].to_string()] = (*fit.coefficients)[j].to_string();
        }
        r.values["dictionary_coefficients"] = coeffs;
        if (nz.size() == 1 && (*fit.coefficients)[nz[0]].is_one()) {
            factors = std::make_pair(dictionary[nz[0]], dictionary[nz[0]]);
        } else if (nz.size() == 2 && (*fit.coefficients)[nz[0]] == half && (*fit.coefficients)[nz[1]] == half) {
            factors = std::make_pair(dictionary[nz[0]], dictionary[nz[1]]);
        } else {
            cd.note = "a is in the span but not of the form (phi_1 + phi_2)/2 over the dictionary";
        }
    } else {
        cd.witnesses.push_back(*fit.residual);
    }
    cd.holds = factors.has_value();
    r.conditions.push_back(cd);
    if (!factors) {
        r.verdict = Verdict::Inconclusive;
        cls.case_tag = "dictionary insufficient";
        r.witnesses = cd.witnesses;
        r.classification = cls;
        r.notes.push_back("a could not be decomposed over the supplied homomorphisms; this is a model limitation");
        return r;
    }

    // (6) certificate f(x) = phi_1(x) phi_2(x).
    const auto& [p1, p2] = *factors;
    Condition ct = cond("f(x) = phi_1(x) phi_2(x) on probes");
    const Json d1 = p1.descriptor(), d2 = p2.descriptor();
    for (const auto& x : points) {
        const FieldElement fx = F(x, x);
        const FieldElement prod = p1(x) * p2(x);
        add_claim(r, "f", ox::eval_form(fd, {ox::lit(x), ox::lit(x)}), fx);
        add_claim(r, "phi_1 phi_2", ox::mul(ox::apply_map(d1, ox::lit(x)), ox::apply_map(d2, ox::lit(x))), prod);
        if (!(fx == prod)) ct.witnesses.push_back(make_witness({x}, fx, prod));
    }
    ct.holds = ct.witnesses.empty();
    r.conditions.push_back(ct);
    cls.factors = {p1.to_string(), p2.to_string()};
    const bool same = p1.descriptor() == p2.descriptor();
    cls.case_tag = same ? "single homomorphism squared" : "two independent homomorphisms";
    r.classification = cls;
    if (!ct.holds) {
        r.verdict = Verdict::Inconclusive;
        r.witnesses = ct.witnesses;
        r.notes.push_back("product certificate failed on the probes");
        return r;
    }
    r.verdict = Verdict::HoldsOnSample;
    return r;
}

Report check_power_identity(const GenPoly& f, std::size_t n, const std::vector<FieldElement>& probes_in,
                            std::size_t max_arity) {
    Report r;
    r.operation = "check_power_identity";
    r.field = field_json(*f.spec());
    r.values["f"] = f.to_string();
    r.values["n"] = n;
    if (n < 2) throw InvalidSpec("the power identity needs n >= 2");
    if (!f.is_monomial() || f.components().front().degree != 2) {
        r.verdict = Verdict::NotApplicable;
        r.notes.push_back("f must be a generalized monomial of degree 2");
        return r;
    }
    const SpecPtr& spec = f.spec();
    const SymmetricForm form = f.components().front().form;
    const FieldElement one = FieldElement::one(spec);
    const std::vector<FieldElement> probes = with_one(probes_in, spec);
    const FieldElement c = eval_trace(form, one);
    add_claim(r, "f(1)", ox::trace(form.descriptor(), ox::lit(one)), c);
    Classification cls;
    cls.f_at_1 = c;

    Condition gate = cond("f(1)^n = f(1)");
    const FieldElement cn = c.pow(static_cast<long>(n));
    gate.holds = cn == c;
    if (!gate.holds) gate.witnesses.push_back(make_witness({one}, cn, c, "f(1) is neither 0 nor an (n-1)st root of unity"));
    r.conditions.push_back(gate);
    if (!gate.holds) {
        r.verdict = Verdict::Refuted;
        r.witnesses = gate.witnesses;
        cls.case_tag = "root-of-unity gate failed";
        r.classification = cls;
        return r;
    }

    // Setting x_1 = x_2 = x and all other slots to 1 in the polarized identity gives
    // (n - c^(n-1)) f(x) = (2n-2) c^(n-2) a(x)^2 - (n-1) a(x^2) with a(x) = F2(x, 1).
    const FieldElement nn = FieldElement::integer(spec, static_cast<long>(n));
    const FieldElement den = nn - c.pow(static_cast<long>(n - 1));
    const FieldElement alpha = -FieldElement::integer(spec, static_cast<long>(n - 1)) / den;
    const FieldElement beta = FieldElement::integer(spec, static_cast<long>(2 * n - 2)) * c.pow(static_cast<long>(n - 2)) / den;
    cls.scalars = {{"alpha", alpha}, {"beta", beta}};

    Report sym = check_symmetrized(f, n, one, probes, max_arity);
    r.claims.insert(r.claims.end(), sym.claims.begin(), sym.claims.end());
    Condition cs = cond("f(x^n) = f(x)^n on the span");
    cs.holds = sym.verdict == Verdict::HoldsOnSpan;
    cs.witnesses = sym.witnesses;
    cs.note = sym.sample_description;
    r.conditions.push_back(cs);

    Condition cr = cond("f(x) = alpha a(x^2) + beta a(x)^2 on probes");
    const Json fd = form.descriptor();
    auto a = [&form, &one](const FieldElement& x) {
        const FieldElement args[2] = {x, one};
        return eval_form(form, args);
    };
    for (const auto& x : probes) {
        const FieldElement fx = eval_trace(form, x);
        const FieldElement ax = a(x);
        const FieldElement rhs = alpha * a(x * x) + beta * ax * ax;
        if (!(fx == rhs)) cr.witnesses.push_back(make_witness({x}, fx, rhs));
    }
    cr.holds = cr.witnesses.empty();
    r.conditions.push_back(cr);

    r.values["generators"] = generator_list(probes);
    r.sample_description = sym.sample_description;
    cls.case_tag = c.is_zero() ? "zero" : "f(1) is an (n-1)st root of unity";
    r.classification = cls;
    if (!cs.holds || !cr.holds) {
        r.verdict = Verdict::Refuted;
        for (const auto& cond : {cs, cr}) r.witnesses.insert(r.witnesses.end(), cond.witnesses.begin(), cond.witnesses.end());
        return r;
    }
    r.verdict = Verdict::HoldsOnSpan;
    return r;
}

Report affine_check(const SymmetricForm& f2, const AffineParams& p, const std::vector<FieldElement>& probes) {
    Report r;
    r.operation = "affine_check";
    const SpecPtr& spec = f2.spec();
    r.field = field_json(*spec);
    r.values["form"] = f2.to_string();
    r.values["a"] = p.a.to_string();
    r.values["b"] = p.b.to_string();
    r.values["A"] = p.A.to_string();
    r.values["B"] = p.B.to_string();
    r.sample_description = "probe set and probe pairs";
    if (f2.arity() != 2) throw TypeMismatch("affine check needs a form of arity 2");
    const Json fd = f2.descriptor();
    const FieldElement zero = FieldElement::zero(spec);
    auto F = [&f2](const FieldElement& u, const FieldElement& v) {
        const FieldElement args[2] = {u, v};
        return eval_form(f2, args);
    };
    auto Fx = [&fd](Json u, Json v) { return ox::eval_form(fd, {std::move(u), std::move(v)}); };

    const FieldElement fb = F(p.b, p.b);
    add_claim(r, "f(b)", Fx(ox::lit(p.b), ox::lit(p.b)), fb);
    Condition c1 = cond("(i) B = f(b)");
    c1.holds = p.B == fb;
    if (!c1.holds) c1.witnesses.push_back(make_witness({p.b}, p.B, fb, "B vs f(b)"));
    r.conditions.push_back(c1);

    bool f_nonzero = false;
    for (const auto& x : probes) f_nonzero = f_nonzero || !F(x, x).is_zero();
    Condition c0 = cond("(i) B = 0");
    c0.holds = p.B.is_zero();
    if (!c0.holds) {
        c0.witnesses.push_back(make_witness({p.b}, p.B, zero, "f(b) = " + fb.to_string()));
        c0.note = f_nonzero ? "for a nonzero quadratic f the constant B must vanish" : "f vanishes on the probes";
    }
    r.conditions.push_back(c0);

    Condition c2 = cond("(ii) F2(a x, b) = 0");
    for (const auto& x : probes) {
        const FieldElement v = F(p.a * x, p.b);
        add_claim(r, "F2(ax, b)", Fx(ox::mul(ox::lit(p.a), ox::lit(x)), ox::lit(p.b)), v);
        if (!v.is_zero()) c2.witnesses.push_back(make_witness({x}, v, zero));
    }
    c2.holds = c2.witnesses.empty();
    r.conditions.push_back(c2);

    Condition c3 = cond("(iii) F2(a x, a y) = A F2(x, y)");
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i; j < probes.size(); ++j) {
            const FieldElement& x = probes[i];
            const FieldElement& y = probes[j];
            const FieldElement lhs = F(p.a * x, p.a * y);
            const FieldElement rhs = p.A * F(x, y);
            add_claim(r, "F2(ax, ay)", Fx(ox::mul(ox::lit(p.a), ox::lit(x)), ox::mul(ox::lit(p.a), ox::lit(y))), lhs);
            add_claim(r, "A F2(x, y)", ox::mul(ox::lit(p.A), Fx(ox::lit(x), ox::lit(y))), rhs);
            if (!(lhs == rhs)) c3.witnesses.push_back(make_witness({x, y}, lhs, rhs));
        }
    }
    c3.holds = c3.witnesses.empty();
    r.conditions.push_back(c3);

    bool all = true;
    for (const auto& c : r.conditions) {
        if (!c.holds) {
            all = false;
            r.witnesses.insert(r.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
        }
    }
    if (c1.holds && !c0.holds && f_nonzero) {
        r.notes.push_back("contradiction: f(b) = " + fb.to_string() + " = B, but condition (i) forces B = 0");
    }
    r.verdict = all ? Verdict::Pass : Verdict::Refuted;
    return r;
}

Report quartic_solve(const AdditiveMap& a, const std::vector<AdditiveMap>& dictionary,
                     const std::vector<FieldElement>& probes_in) {
    Report r;
    r.operation = "quartic_solve";
    const SpecPtr& spec = a.domain_spec();
    r.field = field_json(*spec);
    r.values["a"] = a.to_string();
    const std::vector<FieldElement> probes = with_one(probes_in, spec);
    r.values["probes"] = generator_list(probes);
    r.sample_description = "probe set";
    const FieldElement one = FieldElement::one(spec), zero = FieldElement::zero(spec);
    const Json ad = a.descriptor();
    const FieldElement a1 = a(one);
    add_claim(r, "a(1)", ox::apply_map(ad, ox::lit(one)), a1);
    const FieldElement c32 = FieldElement::rational(spec, mpq_class(3, 2));
    const FieldElement c12 = FieldElement::rational(spec, mpq_class(1, 2));
    const FieldElement u = c32 * a1 * a1, v = c12 * a1.pow(3);
    // f(x) = 3/2 a(1)^2 a(x)^2 - 1/2 a(1)^3 a(x^2)
    auto f = [&](const FieldElement& x) {
        const FieldElement ax = a(x);
        return u * ax * ax - v * a(x * x);
    };
    auto am = [&ad](Json x) { return ox::apply_map(ad, std::move(x)); };
    auto f_expr = [&](Json x) {
        return ox::sub(ox::mul(ox::lit(u), ox::pow(am(x), 2)), ox::mul(ox::lit(v), am(ox::pow(x, 2))));
    };

    Condition ci = cond("a(x)^4 = 3/2 a(1)^2 a(x^2)^2 - 1/2 a(1)^3 a(x^4)");
    Condition cf = cond("f(x^2) = a(x)^4");
    for (const auto& x : probes) {
        const FieldElement ax4 = a(x).pow(4);
        const FieldElement x2 = x * x;
        const FieldElement ax2 = a(x2);
        const FieldElement rhs = u * ax2 * ax2 - v * a(x2 * x2);
        const Json jx = ox::lit(x);
        add_claim(r, "a(x)^4", ox::pow(am(jx), 4), ax4);
        add_claim(r, "identity rhs",
                  ox::sub(ox::mul(ox::lit(u), ox::pow(am(ox::pow(jx, 2)), 2)), ox::mul(ox::lit(v), am(ox::pow(jx, 4)))),
                  rhs);
        if (!(ax4 == rhs)) ci.witnesses.push_back(make_witness({x}, ax4, rhs));
        const FieldElement fx2 = f(x2);
        add_claim(r, "f(x^2)", f_expr(ox::pow(jx, 2)), fx2);
        if (!(fx2 == ax4)) cf.witnesses.push_back(make_witness({x}, fx2, ax4));
    }
    ci.holds = ci.witnesses.empty();
    cf.holds = cf.witnesses.empty();
    r.conditions.push_back(ci);
    r.conditions.push_back(cf);
    Classification cls;
    cls.f_at_1 = f(one);
    cls.scalars = {{"a(1)^4", a1.pow(4)}, {"3/2 a(1)^2", u}, {"1/2 a(1)^3", v}};
    Json fvals = Json::object();
    for (const auto& x : probes) fvals[x.to_string()] = f(x).to_string();
    r.values["candidate_f"] = fvals;
    if (!ci.holds || !cf.holds) {
        r.verdict = Verdict::Refuted;
        for (const auto& c : {ci, cf}) r.witnesses.insert(r.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
        cls.case_tag = "refuted";
        r.classification = cls;
        return r;
    }
    if (a1.is_zero()) {
        Condition cz = cond("a vanishes on probes");
        for (const auto& x : probes) {
            const FieldElement ax = a(x);
            if (!ax.is_zero()) cz.witnesses.push_back(make_witness({x}, ax, zero));
        }
        cz.holds = cz.witnesses.empty();
        r.conditions.push_back(cz);
        cls.case_tag = "zero";
        r.classification = cls;
        r.verdict = cz.holds ? Verdict::HoldsOnSample : Verdict::Inconclusive;
        return r;
    }
    // a = a(1) phi for some dictionary phi.
    const std::vector<FieldElement> points = with_products(probes);
    for (const auto& phi : dictionary) {
        bool match = true;
        for (const auto& x : points) {
            if (!(a(x) == a1 * phi(x))) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        Condition ct = cond("f(x) = a(1)^4 phi(x)^2 on probes");
        const FieldElement s = a1.pow(4);
        for (const auto& x : points) {
            const FieldElement fx = f(x), px = phi(x);
            const FieldElement rhs = s * px * px;
            if (!(fx == rhs)) ct.witnesses.push_back(make_witness({x}, fx, rhs));
        }
        ct.holds = ct.witnesses.empty();
        r.conditions.push_back(ct);
        cls.factors = {phi.to_string()};
        cls.case_tag = "scaled homomorphism squared";
        r.classification = cls;
        r.verdict = ct.holds ? Verdict::HoldsOnSample : Verdict::Inconclusive;
        return r;
    }
    cls.case_tag = "dictionary insufficient";
    r.classification = cls;
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("a is not a(1) times any dictionary homomorphism on the probes");
    return r;
}

Report levicivita_verify(const AdditiveMap& a, const LeviCivita& decomposition, const std::vector<FieldElement>& probes) {
    Report r;
    r.operation = "levicivita_verify";
    const SpecPtr& spec = a.domain_spec();
    r.field = field_json(*spec);
    r.values["a"] = a.to_string();
    r.sample_description = "probe set and probe pairs";
    const Json ad = a.descriptor();
    Condition rep = cond("representation of a");
    Condition prod = cond("product expansion of a(xy)");
    auto am = [](const Json& d, Json x) { return ox::apply_map(d, std::move(x)); };
    if (const auto* te = std::get_if<TwoExp>(&decomposition)) {
        r.values["decomposition"] = "twoexp(" + te->alpha.to_string() + ", " + te->beta.to_string() + ", " +
                                    te->phi1.to_string() + ", " + te->phi2.to_string() + ")";
        const Json d1 = te->phi1.descriptor(), d2 = te->phi2.descriptor();
        for (const auto& x : probes) {
            const FieldElement lhs = a(x);
            const FieldElement rhs = te->alpha * te->phi1(x) + te->beta * te->phi2(x);
            add_claim(r, "a(x)", am(ad, ox::lit(x)), lhs);
            add_claim(r, "alpha phi1 + beta phi2",
                      ox::add(ox::mul(ox::lit(te->alpha), am(d1, ox::lit(x))), ox::mul(ox::lit(te->beta), am(d2, ox::lit(x)))),
                      rhs);
            if (!(lhs == rhs)) rep.witnesses.push_back(make_witness({x}, lhs, rhs));
        }
        for (std::size_t i = 0; i < probes.size(); ++i) {
            for (std::size_t j = i; j < probes.size(); ++j) {
                const FieldElement& x = probes[i];
                const FieldElement& y = probes[j];
                const FieldElement lhs = a(x * y);
                const FieldElement rhs =
                    te->alpha * te->phi1(x) * te->phi1(y) + te->beta * te->phi2(x) * te->phi2(y);
                if (!(lhs == rhs)) prod.witnesses.push_back(make_witness({x, y}, lhs, rhs));
            }
        }
    } else {
        const auto& le = std::get<LogExp>(decomposition);
        r.values["decomposition"] = "logexp(" + le.phi.to_string() + ", " + le.d.to_string() + ", " + le.c.to_string() + ")";
        const Json dp = le.phi.descriptor(), dd = le.d.descriptor();
        for (const auto& x : probes) {
            const FieldElement lhs = a(x);
            const FieldElement rhs = le.phi(le.d(x)) + le.c * le.phi(x);
            add_claim(r, "a(x)", am(ad, ox::lit(x)), lhs);
            add_claim(r, "phi(d(x)) + c phi(x)",
                      ox::add(am(dp, am(dd, ox::lit(x))), ox::mul(ox::lit(le.c), am(dp, ox::lit(x)))), rhs);
            if (!(lhs == rhs)) rep.witnesses.push_back(make_witness({x}, lhs, rhs));
        }
        for (std::size_t i = 0; i < probes.size(); ++i) {
            for (std::size_t j = i; j < probes.size(); ++j) {
                const FieldElement& x = probes[i];
                const FieldElement& y = probes[j];
                const FieldElement lhs = a(x * y);
                const FieldElement px = le.phi(x), py = le.phi(y);
                const FieldElement rhs = px * a(y) + py * a(x) - le.c * px * py;
                if (!(lhs == rhs)) prod.witnesses.push_back(make_witness({x, y}, lhs, rhs));
            }
        }
    }
    rep.holds = rep.witnesses.empty();
    prod.holds = prod.witnesses.empty();
    r.conditions.push_back(rep);
    r.conditions.push_back(prod);
    for (const auto& c : r.conditions) r.witnesses.insert(r.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
    r.verdict = rep.holds && prod.holds ? Verdict::Pass : Verdict::Refuted;
    return r;
}

}  // namespace polcheck
