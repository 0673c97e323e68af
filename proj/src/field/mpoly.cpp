#include "polcheck/field/mpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace polcheck {

namespace {

std::uint32_t degree_of(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const noexcept {
        return grlex_compare(a, b) > 0;
    }
};

using TermMap = std::map<Exponents, Scalar, GrlexGreater>;

MPoly from_map(std::size_t nvars, std::int64_t d, TermMap&& acc) {
    std::vector<MPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [exp, c] : acc) {
        if (!c.is_zero()) terms.push_back({exp, std::move(c)});
    }
    return MPoly::from_terms(nvars, d, std::move(terms));
}

}  // namespace

int grlex_compare(const Exponents& a, const Exponents& b) noexcept {
    const auto da = degree_of(a);
    const auto db = degree_of(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

MPoly MPoly::constant(std::size_t nvars, const Scalar& c) {
    MPoly p(nvars, c.radicand());
    if (!c.is_zero()) p.terms_.push_back({Exponents(nvars, 0), c});
    return p;
}

MPoly MPoly::variable(std::size_t nvars, std::int64_t d, std::size_t index) {
    MPoly p(nvars, d);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.terms_.push_back({std::move(e), Scalar(mpq_class(1), d)});
    return p;
}

MPoly MPoly::from_terms(std::size_t nvars, std::int64_t d, std::vector<Term> terms) {
    MPoly p(nvars, d);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.exp, b.exp) > 0; });
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else if (!t.coeff.is_zero()) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool MPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.front().exp) == 0);
}

Scalar MPoly::constant_term() const {
    if (!terms_.empty() && degree_of(terms_.back().exp) == 0) return terms_.back().coeff;
    return Scalar(d_);
}

std::uint32_t MPoly::total_degree() const noexcept {
    return terms_.empty() ? 0 : degree_of(terms_.front().exp);
}

std::uint32_t MPoly::degree_in(std::size_t var) const noexcept {
    std::uint32_t best = 0;
    for (const auto& t : terms_) best = std::max(best, t.exp[var]);
    return best;
}

MPoly MPoly::operator-() const {
    MPoly out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

void MPoly::add_sorted(const MPoly& o, bool negate) {
    if (d_ == 0) d_ = o.d_;
    if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        int cmp;
        if (i == terms_.end()) {
            cmp = -1;
        } else if (j == o.terms_.end()) {
            cmp = 1;
        } else {
            cmp = grlex_compare(i->exp, j->exp);
        }
        if (cmp > 0) {
            merged.push_back(std::move(*i++));
        } else if (cmp < 0) {
            merged.push_back({j->exp, negate ? -j->coeff : j->coeff});
            ++j;
        } else {
            Scalar c = negate ? i->coeff - j->coeff : i->coeff + j->coeff;
            if (!c.is_zero()) merged.push_back({std::move(i->exp), std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
}

MPoly& MPoly::operator+=(const MPoly& o) {
    add_sorted(o, false);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    add_sorted(o, true);
    return *this;
}

MPoly operator*(const MPoly& l, const MPoly& r) {
    const std::int64_t d = l.d_ != 0 ? l.d_ : r.d_;
    const std::size_t n = std::max(l.nvars_, r.nvars_);
    if (l.is_zero() || r.is_zero()) return MPoly(n, d);
    if (l.terms_.size() == 1 || r.terms_.size() == 1) {
        const MPoly& mono = l.terms_.size() == 1 ? l : r;
        const MPoly& other = l.terms_.size() == 1 ? r : l;
        const MPoly::Term& m = mono.terms_.front();
        MPoly out(n, d);
        out.terms_.reserve(other.terms_.size());
        for (const auto& t : other.terms_) {
            Exponents e = t.exp;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += m.exp[k];
            out.terms_.push_back({std::move(e), t.coeff * m.coeff});
        }
        return out;
    }
    TermMap acc;
    for (const auto& a : l.terms_) {
        for (const auto& b : r.terms_) {
            Exponents e = a.exp;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.exp[k];
            auto [it, inserted] = acc.try_emplace(std::move(e), Scalar(d));
            it->second += a.coeff * b.coeff;
        }
    }
    return from_map(n, d, std::move(acc));
}

MPoly MPoly::scaled(const Scalar& c) const {
    if (c.is_zero()) return MPoly(nvars_, d_);
    MPoly out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result = constant(nvars_, Scalar(mpq_class(1), d_));
    MPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

MPoly MPoly::conjugate_coefficients() const {
    MPoly out = *this;
    for (auto& t : out.terms_) t.coeff = t.coeff.conjugate();
    return out;
}

MPoly MPoly::partial_derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exp[var] == 0) continue;
        Exponents e = t.exp;
        const std::uint32_t k = e[var]--;
        out.push_back({std::move(e), t.coeff * Scalar(mpq_class(k), d_)});
    }
    return from_terms(nvars_, d_, std::move(out));
}

MPoly MPoly::monic() const {
    if (is_zero() || leading_coeff().is_one()) return *this;
    return scaled(leading_coeff().inverse());
}

MPoly exact_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw std::logic_error("exact_divide by zero polynomial");
    if (b.is_constant()) return a.scaled(b.leading_coeff().inverse());
    const auto& lead_exp = b.leading_exponents();
    const Scalar lead_inv = b.leading_coeff().inverse();
    std::vector<MPoly::Term> quotient;
    MPoly rem = a;
    while (!rem.is_zero()) {
        const auto& re = rem.leading_exponents();
        Exponents e(re.size());
        for (std::size_t k = 0; k < re.size(); ++k) {
            if (re[k] < lead_exp[k]) throw std::logic_error("exact_divide: not divisible");
            e[k] = re[k] - lead_exp[k];
        }
        MPoly::Term t{std::move(e), rem.leading_coeff() * lead_inv};
        MPoly step = MPoly::from_terms(a.nvars(), a.radicand(), {t});
        rem -= step * b;
        quotient.push_back(std::move(t));
    }
    return MPoly::from_terms(a.nvars(), a.radicand() != 0 ? a.radicand() : b.radicand(),
                             std::move(quotient));
}

namespace {

// Coefficient of var^k, as a polynomial not involving var.
MPoly coeff_in(const MPoly& p, std::size_t var, std::uint32_t k) {
    std::vector<MPoly::Term> out;
    for (const auto& t : p.terms()) {
        if (t.exp[var] != k) continue;
        Exponents e = t.exp;
        e[var] = 0;
        out.push_back({std::move(e), t.coeff});
    }
    return MPoly::from_terms(p.nvars(), p.radicand(), std::move(out));
}

MPoly var_power(const MPoly& like, std::size_t var, std::uint32_t k) {
    Exponents e(like.nvars(), 0);
    e[var] = k;
    return MPoly::from_terms(like.nvars(), like.radicand(),
                             {{std::move(e), Scalar(mpq_class(1), like.radicand())}});
}

MPoly one_like(const MPoly& like) {
    return MPoly::constant(like.nvars(), Scalar(mpq_class(1), like.radicand()));
}

MPoly content_in(const MPoly& p, std::size_t var) {
    MPoly g(p.nvars(), p.radicand());
    const std::uint32_t deg = p.degree_in(var);
    for (std::uint32_t k = 0; k <= deg; ++k) {
        MPoly c = coeff_in(p, var, k);
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return g;
    }
    return g;
}

MPoly primitive_in(const MPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    return exact_divide(p, content_in(p, var)).monic();
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
    const std::uint32_t db = b.degree_in(var);
    const MPoly lcb = coeff_in(b, var, db);
    MPoly r = a;
    while (!r.is_zero()) {
        const std::uint32_t dr = r.degree_in(var);
        if (dr < db) break;
        const MPoly lcr = coeff_in(r, var, dr);
        r = lcb * r - lcr * var_power(b, var, dr - db) * b;
    }
    return r;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return one_like(a);
    if (a == b) return a.monic();

    std::size_t var = a.nvars();
    for (std::size_t k = 0; k < a.nvars(); ++k) {
        if (a.involves(k) || b.involves(k)) {
            var = k;
            break;
        }
    }
    if (!a.involves(var)) return gcd(a, content_in(b, var));
    if (!b.involves(var)) return gcd(content_in(a, var), b);

    const MPoly ca = content_in(a, var);
    const MPoly cb = content_in(b, var);
    const MPoly c = gcd(ca, cb);
    MPoly p = exact_divide(a, ca);
    MPoly q = exact_divide(b, cb);
    if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
    q = q.monic();
    for (;;) {
        MPoly r = pseudo_remainder(p, q, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) {
            q = one_like(a);
            break;
        }
        p = std::move(q);
        q = primitive_in(r, var).monic();
    }
    return (c * primitive_in(q, var)).monic();
}

}  // namespace polcheck
