#include <chrono>
#include <set>
#include <sstream>

#include "naive_oracle.hpp"
#include "polcheck/dsl/session.hpp"

namespace polcheck::dsl {

namespace {

Json witness_json(const Witness& w) {
    Json j = Json::object();
    j["inputs"] = Json::array();
    for (const auto& x : w.inputs) j["inputs"].push_back(x.to_string());
    j["lhs"] = w.lhs.to_string();
    j["rhs"] = w.rhs.to_string();
    j["difference"] = w.difference.to_string();
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

std::string inputs_text(const Witness& w) {
    if (w.inputs.size() == 1) return w.inputs.front().to_string();
    std::string s = "(";
    for (std::size_t i = 0; i < w.inputs.size(); ++i) s += (i ? ", " : "") + w.inputs[i].to_string();
    return s + ")";
}

std::string witness_line(const Witness& w) {
    std::string s = "x = " + inputs_text(w) + ", lhs = " + w.lhs.to_string() + ", rhs = " + w.rhs.to_string() +
                    ", diff = " + w.difference.to_string();
    if (!w.note.empty()) s += "  (" + w.note + ")";
    return s;
}

std::string value_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + value_text(v[i]);
        return s;
    }
    return v.dump();
}

// Text reports stay readable; the JSON report carries every witness.
constexpr std::size_t kTextWitnessLimit = 8;

void print_witnesses(std::ostream& out, const std::vector<Witness>& ws, const std::string& indent) {
    for (std::size_t i = 0; i < ws.size() && i < kTextWitnessLimit; ++i) out << indent << witness_line(ws[i]) << "\n";
    if (ws.size() > kTextWitnessLimit) out << indent << "... " << ws.size() - kTextWitnessLimit << " more\n";
}

void oracle_check_report(const Report& r, std::size_t index, ReportDocument& doc) {
    const std::string where = "command " + std::to_string(index) + " (" + r.operation + ")";
    if (r.claims.empty() && r.witnesses.empty()) return;
    if (r.field.is_null()) {
        doc.oracle_failures.push_back(where + ": no field description");
        return;
    }
    for (const auto& c : r.claims) {
        ++doc.claims_checked;
        const auto res = naive::check_claim(r.field, Json{{"label", c.label}, {"expr", c.expr}, {"value", c.value}});
        if (!res.ok) doc.oracle_failures.push_back(where + " / " + c.label + ": " + res.detail);
    }
    if (r.verdict != Verdict::Refuted) return;
    auto check = [&](const Witness& w) {
        ++doc.claims_checked;
        const auto res =
            naive::check_witness(r.field, w.lhs.to_string(), w.rhs.to_string(), w.difference.to_string());
        if (!res.ok) doc.oracle_failures.push_back(where + " / witness " + inputs_text(w) + ": " + res.detail);
    };
    for (const auto& w : r.witnesses) check(w);
    for (const auto& cond : r.conditions) {
        if (cond.holds) continue;
        for (const auto& w : cond.witnesses) check(w);
    }
}

}  // namespace

int ReportDocument::exit_code() const {
    if (!oracle_failures.empty()) return 3;
    for (const auto& e : entries) {
        if (!e.report.ok()) return 1;
    }
    return 0;
}

ReportDocument run_session(const Session& s, const RunFlags& flags) {
    ReportDocument doc;
    doc.digest = session_digest(s.ast);
    doc.timing = flags.timing;
    doc.oracle_checked = flags.oracle_check;

    RunConfig& rc = doc.config;
    if (flags.seed) {
        rc.samples.seed = *flags.seed;
    } else if (s.options.seed) {
        rc.samples.seed = *s.options.seed;
    } else if (flags.env_seed) {
        rc.samples.seed = *flags.env_seed;
    }
    if (flags.samples) {
        rc.samples.count = *flags.samples;
    } else if (s.options.samples) {
        rc.samples.count = *s.options.samples;
    }
    if (s.options.height) rc.samples.max_height = *s.options.height;
    if (s.options.degree) rc.samples.max_degree = *s.options.degree;
    if (flags.max_arity) {
        rc.max_arity = *flags.max_arity;
    } else if (s.options.max_arity) {
        rc.max_arity = *s.options.max_arity;
    }
    rc.samples.validate();
    if (rc.max_arity < 1 || rc.max_arity > kHardArityLimit) {
        throw InvalidSpec("max_arity must lie in 1.." + std::to_string(kHardArityLimit));
    }

    for (std::size_t i = 0; i < s.commands.size(); ++i) {
        const Command& c = s.commands[i];
        Entry e;
        e.index = i + 1;
        e.command = c.text;
        e.loc = c.loc;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.report = c.run(rc);
        } catch (const std::exception& ex) {
            e.report = Report{};
            e.report.verdict = Verdict::Inconclusive;
            e.error = ex.what();
        }
        e.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (flags.oracle_check) oracle_check_report(e.report, e.index, doc);
        doc.entries.push_back(std::move(e));
    }
    return doc;
}

Json report_json(const Report& r) {
    Json j = Json::object();
    j["operation"] = r.operation;
    j["verdict"] = verdict_name(r.verdict);
    if (!r.sample_description.empty()) j["sample_description"] = r.sample_description;
    j["witnesses"] = Json::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_json(w));
    if (!r.conditions.empty()) {
        j["conditions"] = Json::array();
        for (const auto& c : r.conditions) {
            Json cj = {{"name", c.name}, {"holds", c.holds}};
            cj["witnesses"] = Json::array();
            for (const auto& w : c.witnesses) cj["witnesses"].push_back(witness_json(w));
            if (!c.note.empty()) cj["note"] = c.note;
            j["conditions"].push_back(cj);
        }
    }
    if (r.classification) {
        const auto& c = *r.classification;
        Json cj = Json::object();
        cj["case"] = c.case_tag;
        cj["f_at_1"] = c.f_at_1 ? Json(c.f_at_1->to_string()) : Json();
        cj["factors"] = c.factors;
        Json sc = Json::object();
        for (const auto& [k, v] : c.scalars) sc[k] = v.to_string();
        cj["scalars"] = sc;
        j["classification"] = cj;
    }
    j["values"] = r.values;
    j["notes"] = r.notes;
    return j;
}

std::string emit_json(const ReportDocument& doc) {
    Json j = Json::object();
    j["schema"] = "1";
    j["tool"] = "polcheck";
    j["version"] = doc.version;
    j["session_digest"] = doc.digest;
    j["seed"] = doc.config.samples.seed;
    j["samples"] = doc.config.samples.count;
    j["max_arity"] = doc.config.max_arity;
    j["entries"] = Json::array();
    std::size_t ok = 0;
    for (const auto& e : doc.entries) {
        Json ej = Json::object();
        ej["index"] = e.index;
        ej["line"] = e.loc.line;
        ej["command"] = e.command;
        const Json rj = report_json(e.report);
        for (const auto& [k, v] : rj.items()) ej[k] = v;
        if (!e.error.empty()) ej["error"] = e.error;
        if (doc.timing) ej["millis"] = e.millis;
        if (e.report.ok()) ++ok;
        j["entries"].push_back(ej);
    }
    if (doc.oracle_checked) {
        j["oracle"] = {{"claims_checked", doc.claims_checked}, {"failures", doc.oracle_failures}};
    }
    j["summary"] = {{"commands", doc.entries.size()}, {"ok", ok}, {"exit_code", doc.exit_code()}};
    return j.dump(2) + "\n";
}

std::string emit_text(const ReportDocument& doc) {
    std::ostringstream out;
    out << "polcheck " << doc.version << "  session " << doc.digest << "  seed " << doc.config.samples.seed
        << "  samples " << doc.config.samples.count << "  max_arity " << doc.config.max_arity << "\n";
    std::size_t ok = 0;
    for (const auto& e : doc.entries) {
        const Report& r = e.report;
        if (r.ok()) ++ok;
        out << "\n[" << e.index << "] line " << e.loc.line << ": " << e.command << "\n";
        out << "  verdict: " << verdict_name(r.verdict);
        if (doc.timing) out << "  (" << e.millis << " ms)";
        out << "\n";
        if (!e.error.empty()) out << "  error: " << e.error << "\n";
        if (!r.sample_description.empty()) out << "  sampled: " << r.sample_description << "\n";
        if (r.values.contains("generators")) out << "  generators: " << value_text(r.values["generators"]) << "\n";
        for (const auto& [k, v] : r.values.items()) {
            if (k != "generators") out << "  " << k << ": " << value_text(v) << "\n";
        }
        if (r.classification) {
            const auto& c = *r.classification;
            out << "  case: " << c.case_tag << "\n";
            if (c.f_at_1) out << "  f(1) = " << c.f_at_1->to_string() << "\n";
            if (!c.factors.empty()) out << "  factors: " << value_text(Json(c.factors)) << "\n";
            for (const auto& [k, v] : c.scalars) out << "  " << k << " = " << v.to_string() << "\n";
        }
        std::set<std::string> shown;
        for (const auto& c : r.conditions) {
            for (const auto& w : c.witnesses) shown.insert(witness_line(w));
        }
        for (const auto& c : r.conditions) {
            out << "  condition " << c.name << ": " << (c.holds ? "holds" : "fails") << "\n";
            if (!c.note.empty()) out << "    " << c.note << "\n";
            print_witnesses(out, c.witnesses, "    ");
        }
        std::vector<Witness> loose;
        for (const auto& w : r.witnesses) {
            if (!shown.count(witness_line(w))) loose.push_back(w);
        }
        print_witnesses(out, loose, "  ");
        for (const auto& n : r.notes) out << "  note: " << n << "\n";
    }
    out << "\n" << doc.entries.size() << " commands, " << ok << " ok";
    if (doc.oracle_checked) {
        out << "; oracle checked " << doc.claims_checked << " values, " << doc.oracle_failures.size() << " mismatches";
        for (const auto& f : doc.oracle_failures) out << "\n  oracle mismatch: " << f;
    }
    out << "\nexit code " << doc.exit_code() << "\n";
    return out.str();
}

}  // namespace polcheck::dsl
