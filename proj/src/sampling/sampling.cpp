#include "polcheck/sampling/sampling.hpp"

#include <functional>
#include <random>

#include "polcheck/errors.hpp"

namespace polcheck {

void SampleConfig::validate() const {
    if (count < 1) throw InvalidSpec("sample count must be at least 1");
    if (max_height < 1) throw InvalidSpec("sample height must be at least 1");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

class Draw {
   public:
    Draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : rng_(splitmix64(splitmix64(seed ^ splitmix64(stream)) + index)) {}

    // Uniform on [0, n) by rejection, so results match on every platform.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
        std::uint64_t v;
        do {
            v = rng_();
        } while (v >= limit);
        return v % n;
    }

    long in_range(std::uint64_t h) { return static_cast<long>(below(2 * h + 1)) - static_cast<long>(h); }
    long positive(std::uint64_t h) { return static_cast<long>(below(h)) + 1; }

   private:
    std::mt19937_64 rng_;
};

Scalar random_scalar_integer(Draw& d, const SpecPtr& spec, std::uint64_t h) {
    if (!spec->has_sqrt()) return Scalar(mpq_class(d.in_range(h)), 0);
    mpq_class a(d.in_range(h));
    mpq_class b(d.in_range(h));
    return Scalar(a, b, spec->radicand());
}

MPoly random_poly(Draw& d, const SpecPtr& spec, const SampleConfig& cfg) {
    const std::size_t nv = spec->nvars();
    std::vector<MPoly::Term> terms;
    Exponents e(nv, 0);
    // every exponent vector of total degree <= max_degree
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t var, std::size_t left) {
        if (var == nv) {
            Scalar c = random_scalar_integer(d, spec, cfg.max_height);
            if (!c.is_zero()) terms.push_back({e, c});
            return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
            e[var] = static_cast<std::uint32_t>(k);
            walk(var + 1, left - k);
        }
        e[var] = 0;
    };
    walk(0, cfg.max_degree);
    return MPoly::from_terms(nv, spec->radicand(), std::move(terms));
}

FieldElement draw_element(const SpecPtr& spec, const SampleConfig& cfg, Draw& d) {
    if (spec->nvars() == 0) {
        const long p = d.in_range(cfg.max_height);
        const long q = d.positive(cfg.max_height);
        FieldElement a = FieldElement::rational(spec, mpq_class(p, q));
        if (!spec->has_sqrt()) return a;
        const long p2 = d.in_range(cfg.max_height);
        const long q2 = d.positive(cfg.max_height);
        return a + FieldElement::rational(spec, mpq_class(p2, q2)) * FieldElement::sqrt_radicand(spec);
    }
    MPoly num = random_poly(d, spec, cfg);
    MPoly den;
    do {
        den = random_poly(d, spec, cfg);
    } while (den.is_zero());
    return FieldElement::fraction(spec, std::move(num), std::move(den));
}

}  // namespace

FieldElement random_element(const SpecPtr& spec, const SampleConfig& cfg, std::uint64_t index) {
    cfg.validate();
    Draw d(cfg.seed, 0, index);
    return draw_element(spec, cfg, d);
}

std::vector<FieldElement> sample_elements(const SpecPtr& spec, const SampleConfig& cfg) {
    std::vector<FieldElement> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) out.push_back(random_element(spec, cfg, i));
    return out;
}

std::vector<std::pair<FieldElement, FieldElement>> sample_pairs(const SpecPtr& spec, const SampleConfig& cfg) {
    cfg.validate();
    std::vector<std::pair<FieldElement, FieldElement>> out;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        Draw d(cfg.seed, 1, i);
        FieldElement a = draw_element(spec, cfg, d);
        FieldElement b = draw_element(spec, cfg, d);
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

std::vector<FieldElement> default_probes(const SpecPtr& spec) {
    const FieldElement one = FieldElement::one(spec);
    std::vector<FieldElement> out{one};
    if (spec->nvars() == 0 && !spec->has_sqrt()) {
        out.push_back(FieldElement::integer(spec, 2));
        out.push_back(FieldElement::rational(spec, mpq_class(-1, 3)));
        return out;
    }
    if (spec->has_sqrt()) {
        const FieldElement r = FieldElement::sqrt_radicand(spec);
        out.push_back(r);
        out.push_back(one + r);
    }
    for (const auto& v : spec->vars()) {
        const FieldElement t = FieldElement::indeterminate(spec, v);
        out.push_back(t);
        out.push_back(t + one);
        out.push_back(t * t);
        out.push_back(t - one);
    }
    return out;
}

}  // namespace polcheck
