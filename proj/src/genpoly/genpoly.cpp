#include "polcheck/genpoly/genpoly.hpp"

#include <map>

#include "polcheck/errors.hpp"
#include "polcheck/linalg.hpp"
#include "polcheck/oracle_expr.hpp"

namespace polcheck {

GenPoly::GenPoly(SpecPtr spec, std::vector<GenMonomial> components) : spec_(std::move(spec)) {
    std::map<std::size_t, std::vector<SymmetricForm>> by_degree;
    for (auto& c : components) {
        if (!same_spec(spec_, c.form.spec())) {
            throw SpecMismatch("component on " + c.form.spec()->name() + " in a polynomial on " + spec_->name());
        }
        by_degree[c.degree].push_back(c.form);
    }
    for (auto& [deg, forms] : by_degree) {
        if (forms.size() == 1) {
            components_.push_back(GenMonomial{deg, forms.front()});
            continue;
        }
        std::vector<std::pair<FieldElement, SymmetricForm>> terms;
        for (auto& f : forms) terms.emplace_back(FieldElement::one(spec_), f);
        components_.push_back(GenMonomial{deg, SymmetricForm::lincomb(std::move(terms))});
    }
}

GenPoly GenPoly::monomial(const SymmetricForm& f) { return GenPoly(f.spec(), {trace(f)}); }

std::size_t GenPoly::degree() const noexcept { return components_.empty() ? 0 : components_.back().degree; }

FieldElement GenPoly::operator()(const FieldElement& x) const {
    FieldElement acc = FieldElement::zero(spec_);
    for (const auto& c : components_) acc += c(x);
    return acc;
}

FieldElement eval_genpoly(const GenPoly& p, const FieldElement& x) { return p(x); }

Function GenPoly::as_function() const {
    std::vector<Json> terms;
    for (const auto& c : components_) terms.push_back(ox::trace(c.form.descriptor(), ox::var("x")));
    GenPoly self = *this;
    return Function{spec_, [self](const FieldElement& x) { return self(x); }, ox::lambda("x", ox::sum(std::move(terms))),
                    to_string()};
}

std::string GenPoly::to_string() const {
    if (components_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        s += (i ? " + " : "") + std::string("trace(") + components_[i].form.to_string() + ")";
    }
    return s;
}

namespace {

using Counts = std::vector<std::size_t>;

// All coefficient vectors of length p summing to m, in lexicographically decreasing order.
void multisets(std::size_t p, std::size_t m, Counts& cur, std::vector<Counts>& out) {
    if (cur.size() + 1 == p) {
        cur.push_back(m);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t c = m + 1; c-- > 0;) {
        cur.push_back(c);
        multisets(p, m - c, cur, out);
        cur.pop_back();
    }
}

class DifferenceTable {
   public:
    DifferenceTable(const Function& f, const std::vector<FieldElement>& probes) : f_(f), probes_(probes) {}

    FieldElement value_at(const Counts& b) {
        auto it = memo_.find(b);
        if (it != memo_.end()) return it->second;
        FieldElement point = FieldElement::zero(f_.spec);
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] != 0) point += FieldElement::integer(f_.spec, static_cast<long>(b[i])) * probes_[i];
        }
        FieldElement v = f_(point);
        memo_.emplace(b, v);
        return v;
    }

    // Delta over the multiset c at 0: sum over b <= c of prod binom(c_i, b_i) (-1)^(|c|-|b|) f(sum b_i y_i).
    FieldElement delta(const Counts& c) {
        std::size_t m = 0;
        for (auto ci : c) m += ci;
        FieldElement acc = FieldElement::zero(f_.spec);
        Counts b(c.size(), 0);
        for (;;) {
            std::size_t size = 0;
            mpz_class weight = 1;
            for (std::size_t i = 0; i < c.size(); ++i) {
                size += b[i];
                mpz_class bin;
                mpz_bin_uiui(bin.get_mpz_t(), c[i], b[i]);
                weight *= bin;
            }
            if ((m - size) % 2 == 1) weight = -weight;
            acc += FieldElement::rational(f_.spec, mpq_class(weight)) * value_at(b);
            std::size_t i = 0;
            while (i < c.size() && b[i] == c[i]) b[i++] = 0;
            if (i == c.size()) break;
            ++b[i];
        }
        return acc;
    }

   private:
    const Function& f_;
    const std::vector<FieldElement>& probes_;
    std::map<Counts, FieldElement> memo_;
};

std::vector<FieldElement> expand(const Counts& c, const std::vector<FieldElement>& probes) {
    std::vector<FieldElement> ys;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t k = 0; k < c[i]; ++k) ys.push_back(probes[i]);
    }
    return ys;
}

Json probe_list(const std::vector<FieldElement>& es) {
    Json j = Json::array();
    for (const auto& e : es) j.push_back(e.to_string());
    return j;
}

}  // namespace

DegreeEstimate degree_estimate(const Function& f, const std::vector<FieldElement>& probes, std::size_t cap) {
    DegreeEstimate out;
    Report& r = out.report;
    r.operation = "degree_estimate";
    r.field = field_json(*f.spec);
    r.values["function"] = f.label;
    r.values["probes"] = probe_list(probes);
    r.values["cap"] = cap;
    r.sample_description = "on-sample: all multisets of probes, base point 0";
    if (cap > kMaxIncrements - 1) throw ArityTooLarge("degree cap " + std::to_string(cap) + " exceeds 11");
    for (const auto& y : probes) {
        if (y.is_zero()) throw InvalidSpec("degree probes must be nonzero");
    }
    if (probes.empty()) throw InvalidSpec("degree_estimate needs at least one probe");
    DifferenceTable table(f, probes);
    const FieldElement zero = FieldElement::zero(f.spec);
    std::optional<Counts> last_nonzero;
    FieldElement last_value;
    for (std::size_t n = 0; n <= cap; ++n) {
        std::vector<Counts> tuples;
        Counts cur;
        multisets(probes.size(), n + 1, cur, tuples);
        std::optional<Counts> nonzero;
        FieldElement nonzero_value;
        for (const auto& c : tuples) {
            FieldElement v = table.delta(c);
            if (!v.is_zero()) {
                nonzero = c;
                nonzero_value = std::move(v);
                break;
            }
        }
        if (nonzero) {
            last_nonzero = nonzero;
            last_value = nonzero_value;
            continue;
        }
        out.degree = n;
        r.values["degree"] = n;
        if (!f.oracle.is_null()) {
            for (const auto& c : tuples) {
                const auto ys = expand(c, probes);
                add_claim(r, "vanishing difference", iterated_delta_expr(f, zero, ys), zero);
            }
        }
        if (last_nonzero) {
            const auto ys = expand(*last_nonzero, probes);
            Json w = Json::array();
            for (const auto& y : ys) w.push_back(y.to_string());
            r.values["nonvanishing_increments"] = w;
            r.values["nonvanishing_value"] = last_value.to_string();
            if (!f.oracle.is_null()) add_claim(r, "nonvanishing difference", iterated_delta_expr(f, zero, ys), last_value);
        }
        r.verdict = Verdict::Pass;
        return out;
    }
    r.values["degree"] = "NO_BOUND_FOUND";
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("no vanishing difference up to the cap");
    return out;
}

namespace {

// A*_n(z) = Delta^n_z g(0) / n!, using only the n+1 points j*z.
FieldElement top_component(const Function& g, std::size_t n, const FieldElement& z) {
    const SpecPtr& spec = g.spec;
    FieldElement acc = FieldElement::zero(spec);
    for (std::size_t j = 0; j <= n; ++j) {
        mpz_class w;
        mpz_bin_uiui(w.get_mpz_t(), n, j);
        if ((n - j) % 2 == 1) w = -w;
        acc += FieldElement::rational(spec, mpq_class(w)) * g(FieldElement::integer(spec, static_cast<long>(j)) * z);
    }
    return acc / FieldElement::rational(spec, mpq_class(factorial(n)));
}

}  // namespace

std::vector<ComponentTable> extract_components(const Function& f, std::size_t top,
                                               const std::vector<FieldElement>& probes) {
    std::vector<ComponentTable> out;
    Function residual = f;
    for (std::size_t n = top + 1; n-- > 0;) {
        ComponentTable t;
        t.degree = n;
        t.probes = probes;
        for (const auto& y : probes) t.values.push_back(top_component(residual, n, y));
        out.push_back(std::move(t));
        Function prev = residual;
        residual.eval = [prev, n](const FieldElement& x) { return prev(x) - top_component(prev, n, x); };
        residual.oracle = Json();
        residual.label = "residual";
    }
    // The peeled residual vanishes by construction, so consistency means f really has degree <= top:
    // every (top+1)-fold difference over probe multisets must vanish, at 0 and at each probe.
    if (top + 1 > kMaxIncrements) return out;
    std::vector<FieldElement> bases{FieldElement::zero(f.spec)};
    bases.insert(bases.end(), probes.begin(), probes.end());
    for (const auto& ys : multiset_tuples(probes, top + 1)) {
        for (const auto& x : bases) {
            const FieldElement v = iterated_delta(f, x, ys);
            if (!v.is_zero()) {
                throw InconsistentPeeling("f is not of degree <= " + std::to_string(top) + ": a " +
                                          std::to_string(top + 1) + "-fold difference at " + x.to_string() +
                                          " is " + v.to_string());
            }
        }
    }
    return out;
}

ComponentTable extract_component(const Function& f, std::size_t n, std::size_t top,
                                 const std::vector<FieldElement>& probes) {
    if (n > top) throw InvalidSpec("component degree above the stated degree");
    for (auto& t : extract_components(f, top, probes)) {
        if (t.degree == n) return t;
    }
    throw InvalidSpec("unreachable component degree");
}

std::vector<std::vector<FieldElement>> multiset_tuples(const std::vector<FieldElement>& gens, std::size_t m) {
    std::vector<std::vector<FieldElement>> out;
    if (gens.empty()) return out;
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        std::vector<FieldElement> t;
        t.reserve(m);
        for (auto i : idx) t.push_back(gens[i]);
        out.push_back(std::move(t));
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == gens.size() - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < m; ++j) idx[j] = idx[pos - 1];
    }
    return out;
}

Report variety_rank_report(const Function& f, const std::vector<FieldElement>& translates,
                           const std::vector<FieldElement>& points, TranslateOp op) {
    Report r;
    r.operation = "variety_rank";
    r.field = field_json(*f.spec);
    r.values["function"] = f.label;
    r.values["operation"] = op == TranslateOp::Additive ? "add" : "mult";
    r.values["translates"] = probe_list(translates);
    r.values["points"] = probe_list(points);
    r.sample_description = "on-sample lower bound for the variety dimension";
    if (translates.empty() || points.size() < translates.size()) {
        r.verdict = Verdict::NotApplicable;
        r.notes.push_back("need at least one translate and no fewer points than translates");
        return r;
    }
    if (op == TranslateOp::Multiplicative) {
        for (const auto& g : translates) {
            if (g.is_zero()) {
                r.verdict = Verdict::NotApplicable;
                r.notes.push_back("multiplicative translates must be nonzero");
                return r;
            }
        }
    }
    Matrix m;
    std::vector<std::vector<Json>> rows;
    for (const auto& g : translates) {
        std::vector<FieldElement> row;
        std::vector<Json> jrow;
        for (const auto& h : points) {
            const FieldElement arg = op == TranslateOp::Additive ? h + g : h * g;
            row.push_back(f(arg));
            jrow.push_back(ox::call(f.oracle, op == TranslateOp::Additive ? ox::add(ox::lit(h), ox::lit(g))
                                                                         : ox::mul(ox::lit(h), ox::lit(g))));
        }
        m.push_back(std::move(row));
        rows.push_back(std::move(jrow));
    }
    const std::size_t rank = matrix_rank(m);
    r.values["rank"] = rank;
    r.verdict = Verdict::Pass;
    if (!f.oracle.is_null()) r.claims.push_back({"rank", ox::rank(std::move(rows)), std::to_string(rank)});
    return r;
}

std::size_t variety_rank(const Function& f, const std::vector<FieldElement>& translates,
                         const std::vector<FieldElement>& points, TranslateOp op) {
    const Report r = variety_rank_report(f, translates, points, op);
    if (!r.values.contains("rank")) throw InvalidSpec(r.notes.empty() ? "variety_rank precondition" : r.notes.front());
    return r.values["rank"].get<std::size_t>();
}

}  // namespace polcheck
