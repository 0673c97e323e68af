#include "polcheck/maps/additive_map.hpp"

#include "polcheck/errors.hpp"
#include "polcheck/oracle_expr.hpp"

namespace polcheck {

struct AdditiveMap::Node {
    Kind kind = Kind::Identity;
    SpecPtr spec;
    std::map<std::string, FieldElement> images;
    // Endo: full substitution vector; Derivation: image per variable (zero when absent).
    std::vector<FieldElement> by_index;
    bool conjugate = false;
    FieldElement coeff;
    std::vector<AdditiveMap> children;
    std::string label;
};

AdditiveMap make_map(AdditiveMap::Node node) {
    return AdditiveMap(std::make_shared<const AdditiveMap::Node>(std::move(node)));
}

namespace {

const std::map<std::string, FieldElement> kNoImages;
const std::vector<AdditiveMap> kNoChildren;

void require_spec(const SpecPtr& spec, const FieldElement& e, const std::string& what) {
    if (!same_spec(spec, e.spec())) {
        throw SpecMismatch(what + " lies in " + e.spec()->name() + ", expected " + spec->name());
    }
}

void check_image_names(const SpecPtr& spec, const std::map<std::string, FieldElement>& images) {
    for (const auto& [name, img] : images) {
        if (spec->var_index(name) < 0) throw InvalidImage("'" + name + "' is not an indeterminate of " + spec->name());
        require_spec(spec, img, "image of " + name);
    }
}

}  // namespace

AdditiveMap AdditiveMap::identity(const SpecPtr& spec) {
    Node n;
    n.kind = Kind::Identity;
    n.spec = spec;
    return make_map(std::move(n));
}

AdditiveMap AdditiveMap::zero(const SpecPtr& spec) {
    Node n;
    n.kind = Kind::Zero;
    n.spec = spec;
    return make_map(std::move(n));
}

AdditiveMap::Kind AdditiveMap::kind() const noexcept { return node_->kind; }
const SpecPtr& AdditiveMap::domain_spec() const noexcept { return node_->spec; }

const std::map<std::string, FieldElement>& AdditiveMap::images() const {
    return node_->kind == Kind::Endo || node_->kind == Kind::Derivation ? node_->images : kNoImages;
}

bool AdditiveMap::conjugate_base() const { return node_->conjugate; }
const FieldElement& AdditiveMap::coefficient() const { return node_->coeff; }
const std::vector<AdditiveMap>& AdditiveMap::children() const { return node_->children; }
const std::string& AdditiveMap::label() const noexcept { return node_->label; }

AdditiveMap AdditiveMap::named(std::string label) const {
    Node n = *node_;
    n.label = std::move(label);
    return make_map(std::move(n));
}

AdditiveMap build_endomorphism(const SpecPtr& spec, const std::map<std::string, FieldElement>& images,
                               bool conjugate_base) {
    if (conjugate_base && !spec->has_sqrt()) {
        throw UnsupportedSpec("conjugation needs a quadratic coefficient field, not " + spec->name());
    }
    if (spec->nvars() == 0 && !images.empty()) {
        throw InvalidImage(spec->name() + " has no indeterminates; only id and conj are endomorphisms");
    }
    check_image_names(spec, images);
    AdditiveMap::Node n;
    n.kind = AdditiveMap::Kind::Endo;
    n.spec = spec;
    n.images = images;
    n.conjugate = conjugate_base;
    for (const auto& v : spec->vars()) {
        auto it = images.find(v);
        if (it == images.end()) {
            n.by_index.push_back(FieldElement::indeterminate(spec, v));
            continue;
        }
        if (it->second.is_constant()) {
            throw InvalidImage("image of " + v + " is the constant " + it->second.to_string() +
                               "; an endomorphism must send an indeterminate to a transcendental element");
        }
        n.by_index.push_back(it->second);
    }
    return make_map(std::move(n));
}

AdditiveMap build_derivation(const SpecPtr& spec, const std::map<std::string, FieldElement>& images) {
    if (spec->nvars() == 0) {
        throw UnsupportedSpec("only the zero derivation exists on " + spec->name() + "; use the zero map");
    }
    check_image_names(spec, images);
    AdditiveMap::Node n;
    n.kind = AdditiveMap::Kind::Derivation;
    n.spec = spec;
    n.images = images;
    for (const auto& v : spec->vars()) {
        auto it = images.find(v);
        n.by_index.push_back(it == images.end() ? FieldElement::zero(spec) : it->second);
    }
    return make_map(std::move(n));
}

AdditiveMap scale_map(const FieldElement& c, const AdditiveMap& inner) {
    require_spec(inner.domain_spec(), c, "scale coefficient");
    AdditiveMap::Node n;
    n.kind = AdditiveMap::Kind::Scale;
    n.spec = inner.domain_spec();
    n.coeff = c;
    n.children = {inner};
    return make_map(std::move(n));
}

AdditiveMap sum_map(std::vector<AdditiveMap> terms) {
    if (terms.empty()) throw InvalidSpec("sum of no maps");
    for (const auto& t : terms) {
        if (!same_spec(t.domain_spec(), terms.front().domain_spec())) {
            throw SpecMismatch("sum mixes maps on " + terms.front().domain_spec()->name() + " and " +
                               t.domain_spec()->name());
        }
    }
    AdditiveMap::Node n;
    n.kind = AdditiveMap::Kind::Sum;
    n.spec = terms.front().domain_spec();
    n.children = std::move(terms);
    return make_map(std::move(n));
}

AdditiveMap compose_map(const AdditiveMap& outer, const AdditiveMap& inner) {
    if (!same_spec(outer.domain_spec(), inner.domain_spec())) {
        throw SpecMismatch("cannot compose maps on " + outer.domain_spec()->name() + " and " +
                           inner.domain_spec()->name());
    }
    AdditiveMap::Node n;
    n.kind = AdditiveMap::Kind::Compose;
    n.spec = outer.domain_spec();
    n.children = {outer, inner};
    return make_map(std::move(n));
}

FieldElement AdditiveMap::operator()(const FieldElement& x) const {
    const Node& n = *node_;
    require_spec(n.spec, x, "map argument");
    switch (n.kind) {
        case Kind::Identity: return x;
        case Kind::Zero: return FieldElement::zero(n.spec);
        case Kind::Endo: {
            const FieldElement y = n.conjugate ? x.conjugate_coefficients() : x;
            if (n.images.empty() || y.is_constant()) return y;
            return y.substitute(n.by_index);
        }
        case Kind::Derivation: {
            // d(p/q) = sum_i (p_i q - p q_i) / q^2 * d(t_i)
            if (x.is_constant()) return FieldElement::zero(n.spec);
            const MPoly& p = x.numerator();
            const MPoly& q = x.denominator();
            const MPoly q2 = q * q;
            FieldElement acc = FieldElement::zero(n.spec);
            for (std::size_t i = 0; i < n.by_index.size(); ++i) {
                if (n.by_index[i].is_zero()) continue;
                MPoly num = p.partial_derivative(i) * q - p * q.partial_derivative(i);
                if (num.is_zero()) continue;
                acc += FieldElement::fraction(n.spec, std::move(num), q2) * n.by_index[i];
            }
            return acc;
        }
        case Kind::Scale: return n.coeff * n.children.front()(x);
        case Kind::Sum: {
            FieldElement acc = FieldElement::zero(n.spec);
            for (const auto& t : n.children) acc += t(x);
            return acc;
        }
        case Kind::Compose: return n.children[0](n.children[1](x));
    }
    return x;
}

FieldElement apply_map(const AdditiveMap& m, const FieldElement& x) { return m(x); }

Json AdditiveMap::descriptor() const {
    const Node& n = *node_;
    auto images_json = [&n] {
        Json j = Json::object();
        for (const auto& [k, v] : n.images) j[k] = v.to_string();
        return j;
    };
    switch (n.kind) {
        case Kind::Identity: return Json{{"kind", "identity"}};
        case Kind::Zero: return Json{{"kind", "zero"}};
        case Kind::Endo: return Json{{"kind", "endo"}, {"images", images_json()}, {"conjugate_base", n.conjugate}};
        case Kind::Derivation: return Json{{"kind", "derivation"}, {"images", images_json()}};
        case Kind::Scale:
            return Json{{"kind", "scale"}, {"c", n.coeff.to_string()}, {"inner", n.children.front().descriptor()}};
        case Kind::Sum: {
            Json terms = Json::array();
            for (const auto& t : n.children) terms.push_back(t.descriptor());
            return Json{{"kind", "sum"}, {"terms", terms}};
        }
        case Kind::Compose:
            return Json{{"kind", "compose"}, {"outer", n.children[0].descriptor()}, {"inner", n.children[1].descriptor()}};
    }
    return Json{};
}

std::string AdditiveMap::to_string() const {
    const Node& n = *node_;
    if (!n.label.empty()) return n.label;
    auto images_text = [&n](const char* head) {
        std::string s = head;
        s += "[";
        bool first = true;
        if (n.conjugate) {
            s += "conj";
            first = false;
        }
        for (const auto& [k, v] : n.images) {
            if (!first) s += ", ";
            s += k + "->" + v.to_string();
            first = false;
        }
        return s + "]";
    };
    switch (n.kind) {
        case Kind::Identity: return "id";
        case Kind::Zero: return "zero";
        case Kind::Endo:
            if (n.images.empty()) return n.conjugate ? "conj" : "id";
            return images_text("hom");
        case Kind::Derivation: return images_text("der");
        case Kind::Scale: return "(" + n.coeff.to_string() + ")*" + n.children.front().to_string();
        case Kind::Sum: {
            std::string s = "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) s += (i ? "+" : "") + n.children[i].to_string();
            return s + ")";
        }
        case Kind::Compose: return n.children[0].to_string() + "@" + n.children[1].to_string();
    }
    return "?";
}

std::string law_name(MapLaw law) {
    switch (law) {
        case MapLaw::Additive: return "additive";
        case MapLaw::Multiplicative: return "multiplicative";
        case MapLaw::Leibniz: return "leibniz";
    }
    return "?";
}

Report verify_map_laws(const AdditiveMap& m, MapLaw law,
                       const std::vector<std::pair<FieldElement, FieldElement>>& samples) {
    Report r;
    r.operation = "verify_map_laws";
    r.field = field_json(*m.domain_spec());
    r.values["law"] = law_name(law);
    r.values["map"] = m.to_string();
    r.sample_description = std::to_string(samples.size()) + " pairs";
    const Json md = m.descriptor();
    std::size_t checked = 0;
    for (const auto& [x, y] : samples) {
        FieldElement lhs, rhs;
        Json lhs_expr, rhs_expr;
        const Json jx = ox::lit(x), jy = ox::lit(y);
        try {
            switch (law) {
                case MapLaw::Additive:
                    lhs = m(x + y);
                    rhs = m(x) + m(y);
                    lhs_expr = ox::apply_map(md, ox::add(jx, jy));
                    rhs_expr = ox::add(ox::apply_map(md, jx), ox::apply_map(md, jy));
                    break;
                case MapLaw::Multiplicative:
                    lhs = m(x * y);
                    rhs = m(x) * m(y);
                    lhs_expr = ox::apply_map(md, ox::mul(jx, jy));
                    rhs_expr = ox::mul(ox::apply_map(md, jx), ox::apply_map(md, jy));
                    break;
                case MapLaw::Leibniz:
                    lhs = m(x * y);
                    rhs = m(x) * y + x * m(y);
                    lhs_expr = ox::apply_map(md, ox::mul(jx, jy));
                    rhs_expr = ox::add(ox::mul(ox::apply_map(md, jx), jy), ox::mul(jx, ox::apply_map(md, jy)));
                    break;
            }
        } catch (const DenominatorVanishes& e) {
            r.notes.push_back("pair (" + x.to_string() + ", " + y.to_string() + ") skipped: " + e.what());
            continue;
        }
        ++checked;
        add_claim(r, "lhs", std::move(lhs_expr), lhs);
        add_claim(r, "rhs", std::move(rhs_expr), rhs);
        if (!(lhs == rhs)) {
            r.verdict = Verdict::Refuted;
            r.witnesses.push_back(make_witness({x, y}, lhs, rhs));
            break;
        }
    }
    if (checked == 0) {
        r.verdict = Verdict::Inconclusive;
        r.notes.push_back("no pair could be evaluated");
    }
    r.values["pairs_checked"] = checked;
    return r;
}

}  // namespace polcheck
