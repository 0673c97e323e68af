#include "naive_oracle.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace naive {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("oracle: " + what); }

// ---- numbers --------------------------------------------------------------------------------

bool zero(const Num& x) { return x.a == 0 && x.b == 0; }
Num nadd(const Num& x, const Num& y) { return {x.a + y.a, x.b + y.b, x.d}; }
Num nmul(const Num& x, const Num& y) { return {x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d}; }
Num ninv(const Num& x) {
    const mpq_class n = x.a * x.a - x.b * x.b * x.d;
    if (n == 0) bad("inverse of zero");
    return {x.a / n, -x.b / n, x.d};
}

// ---- polynomials ----------------------------------------------------------------------------

void put(Poly& p, const Mono& m, const Num& v) {
    auto it = p.find(m);
    if (it == p.end()) {
        if (!zero(v)) p.emplace(m, v);
        return;
    }
    it->second = nadd(it->second, v);
    if (zero(it->second)) p.erase(it);
}

Poly pconst(const Ctx& c, const Num& v) {
    Poly p;
    put(p, Mono(c.vars.size(), 0), v);
    return p;
}

Poly padd(const Poly& x, const Poly& y) {
    Poly r = x;
    for (const auto& [m, v] : y) put(r, m, v);
    return r;
}

Poly pscale(const Poly& x, const Num& s) {
    Poly r;
    for (const auto& [m, v] : x) put(r, m, nmul(v, s));
    return r;
}

Poly pmul(const Poly& x, const Poly& y) {
    Poly r;
    for (const auto& [m1, v1] : x) {
        for (const auto& [m2, v2] : y) {
            Mono m(m1.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            put(r, m, nmul(v1, v2));
        }
    }
    return r;
}

Poly ppow(const Ctx& c, const Poly& x, unsigned e) {
    Poly r = pconst(c, Num{1, 0, c.d});
    for (unsigned i = 0; i < e; ++i) r = pmul(r, x);
    return r;
}

bool is_const(const Poly& p) {
    for (const auto& [m, v] : p) {
        for (unsigned e : m) {
            if (e) return false;
        }
    }
    return true;
}

Poly pderiv(const Poly& p, std::size_t i) {
    Poly r;
    for (const auto& [m, v] : p) {
        if (m[i] == 0) continue;
        Mono n = m;
        --n[i];
        put(r, n, nmul(v, Num{mpq_class(m[i]), 0, v.d}));
    }
    return r;
}

// ---- rational functions ---------------------------------------------------------------------

Rat rconst(const Ctx& c, const Num& v) { return Rat{pconst(c, v), {}}; }
Rat rint(const Ctx& c, long v) { return rconst(c, Num{mpq_class(v), 0, c.d}); }

// Divides the denominator factor f^e into x, keeping the factor monic.
void add_den(Rat& x, const Poly& f, unsigned e) {
    if (f.empty()) bad("division by zero");
    const Num lc = f.rbegin()->second;
    const Num il = ninv(lc);
    for (unsigned i = 0; i < e; ++i) x.num = pscale(x.num, il);
    if (is_const(f)) return;
    x.den[pscale(f, il)] += e;
}

Poly expand(const Ctx& c, const std::map<Poly, unsigned>& den) {
    Poly r = pconst(c, Num{1, 0, c.d});
    for (const auto& [f, e] : den) r = pmul(r, ppow(c, f, e));
    return r;
}

Rat radd(const Ctx& c, const Rat& x, const Rat& y) {
    std::map<Poly, unsigned> l = x.den;
    for (const auto& [f, e] : y.den) l[f] = std::max(l[f], e);
    auto lift = [&](const Rat& z) {
        Poly n = z.num;
        for (const auto& [f, e] : l) {
            auto it = z.den.find(f);
            const unsigned have = it == z.den.end() ? 0 : it->second;
            n = pmul(n, ppow(c, f, e - have));
        }
        return n;
    };
    Rat r{padd(lift(x), lift(y)), l};
    if (r.num.empty()) r.den.clear();
    return r;
}

Rat rneg(const Ctx& c, const Rat& x) { return Rat{pscale(x.num, Num{-1, 0, c.d}), x.den}; }

Rat rmul(const Rat& x, const Rat& y) {
    Rat r{pmul(x.num, y.num), x.den};
    for (const auto& [f, e] : y.den) r.den[f] += e;
    if (r.num.empty()) r.den.clear();
    return r;
}

Rat rinv(const Ctx& c, const Rat& x) {
    if (x.num.empty()) bad("division by zero");
    Rat r{expand(c, x.den), {}};
    add_den(r, x.num, 1);
    return r;
}

Rat rsub(const Ctx& c, const Rat& x, const Rat& y) { return radd(c, x, rneg(c, y)); }
Rat rdiv(const Ctx& c, const Rat& x, const Rat& y) { return rmul(x, rinv(c, y)); }

Rat rpow(const Ctx& c, const Rat& x, long e) {
    Rat base = e < 0 ? rinv(c, x) : x;
    Rat r = rint(c, 1);
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r = rmul(r, base);
    return r;
}

bool rzero(const Rat& x) { return x.num.empty(); }

// Substitutes rational functions for the indeterminates of p, conjugating coefficients first if asked.
Rat psubst(const Ctx& c, const Poly& p, const std::vector<Rat>& images, bool conj) {
    Rat r = rint(c, 0);
    for (const auto& [m, v] : p) {
        Num coeff = conj ? Num{v.a, -v.b, v.d} : v;
        Rat t = rconst(c, coeff);
        for (std::size_t i = 0; i < m.size(); ++i) t = rmul(t, rpow(c, images[i], m[i]));
        r = radd(c, r, t);
    }
    return r;
}

Rat rsubst(const Ctx& c, const Rat& x, const std::vector<Rat>& images, bool conj) {
    Rat r = psubst(c, x.num, images, conj);
    for (const auto& [f, e] : x.den) r = rdiv(c, r, rpow(c, psubst(c, f, images, conj), e));
    return r;
}

// D(p) = sum_i dp/dt_i * D(t_i)
Rat pder(const Ctx& c, const Poly& p, const std::vector<Rat>& images) {
    Rat r = rint(c, 0);
    for (std::size_t i = 0; i < images.size(); ++i) r = radd(c, r, rmul(Rat{pderiv(p, i), {}}, images[i]));
    return r;
}

Rat rder(const Ctx& c, const Rat& x, const std::vector<Rat>& images) {
    // x = N / prod f^e, so D(x) = D(N)/den - x * sum e D(f)/f
    const Rat den_inv = rinv(c, Rat{expand(c, x.den), {}});
    Rat r = rmul(pder(c, x.num, images), den_inv);
    for (const auto& [f, e] : x.den) {
        const Rat term = rdiv(c, rmul(rint(c, static_cast<long>(e)), pder(c, f, images)), Rat{f, {}});
        r = rsub(c, r, rmul(x, term));
    }
    return r;
}

// ---- text -----------------------------------------------------------------------------------

class Parser {
   public:
    Parser(const Ctx& c, const std::string& s) : c_(c), s_(s) {}

    Rat run() {
        Rat r = expr();
        ws();
        if (i_ != s_.size()) bad("trailing text in '" + s_ + "'");
        return r;
    }

   private:
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char ch) {
        ws();
        if (i_ < s_.size() && s_[i_] == ch) {
            ++i_;
            return true;
        }
        return false;
    }
    Rat expr() {
        Rat r = term();
        for (;;) {
            if (eat('+')) {
                r = radd(c_, r, term());
            } else if (eat('-')) {
                r = rsub(c_, r, term());
            } else {
                return r;
            }
        }
    }
    Rat term() {
        Rat r = unary();
        for (;;) {
            if (eat('*')) {
                r = rmul(r, unary());
            } else if (eat('/')) {
                r = rdiv(c_, r, unary());
            } else {
                return r;
            }
        }
    }
    Rat unary() {
        if (eat('-')) return rneg(c_, unary());
        if (eat('+')) return unary();
        Rat b = atom();
        if (!eat('^')) return b;
        const bool paren = eat('(');
        const long e = integer(true).get_si();
        if (paren && !eat(')')) bad("expected ')'");
        return rpow(c_, b, e);
    }
    mpz_class integer(bool allow_sign) {
        ws();
        bool neg = false;
        if (allow_sign && i_ < s_.size() && s_[i_] == '-') {
            neg = true;
            ++i_;
        }
        const std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) bad("expected integer in '" + s_ + "'");
        mpz_class v(s_.substr(st, i_ - st));
        return neg ? mpz_class(-v) : v;
    }
    Rat atom() {
        ws();
        if (i_ >= s_.size()) bad("unexpected end of '" + s_ + "'");
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) return rconst(c_, Num{mpq_class(integer(false)), 0, c_.d});
        if (eat('(')) {
            Rat r = expr();
            if (!eat(')')) bad("expected ')'");
            return r;
        }
        const std::size_t st = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        const std::string name = s_.substr(st, i_ - st);
        if (name.empty()) bad("unexpected character in '" + s_ + "'");
        if (name == "sqrt") {
            if (!eat('(')) bad("expected '('");
            const mpz_class n = integer(true);
            if (!eat(')')) bad("expected ')'");
            return sqrt_of(n);
        }
        for (std::size_t k = 0; k < c_.vars.size(); ++k) {
            if (c_.vars[k] == name) {
                Mono m(c_.vars.size(), 0);
                m[k] = 1;
                Poly p;
                put(p, m, Num{1, 0, c_.d});
                return Rat{p, {}};
            }
        }
        bad("unknown name '" + name + "'");
    }
    Rat sqrt_of(const mpz_class& n) {
        if (n >= 0 && mpz_perfect_square_p(n.get_mpz_t())) return rconst(c_, Num{mpq_class(sqrt(n)), 0, c_.d});
        if (c_.d != 0 && n % c_.d == 0) {
            const mpz_class q = n / c_.d;
            if (q >= 0 && mpz_perfect_square_p(q.get_mpz_t())) return rconst(c_, Num{0, mpq_class(sqrt(q)), c_.d});
        }
        bad("sqrt(" + n.get_str() + ") outside the field");
    }

    const Ctx& c_;
    std::string s_;
    std::size_t i_ = 0;
};

// ---- maps and forms -------------------------------------------------------------------------

Rat apply_map(const Ctx& c, const Json& m, const Rat& x) {
    const std::string kind = m.at("kind");
    if (kind == "identity") return x;
    if (kind == "zero") return rint(c, 0);
    if (kind == "endo" || kind == "derivation") {
        std::vector<Rat> images;
        for (std::size_t i = 0; i < c.vars.size(); ++i) {
            Mono mono(c.vars.size(), 0);
            mono[i] = 1;
            Poly p;
            put(p, mono, Num{1, 0, c.d});
            const auto& im = m.at("images");
            if (im.contains(c.vars[i])) {
                images.push_back(parse(c, im.at(c.vars[i]).get<std::string>()));
            } else {
                images.push_back(kind == "endo" ? Rat{p, {}} : rint(c, 0));
            }
        }
        if (kind == "derivation") return rder(c, x, images);
        return rsubst(c, x, images, m.value("conjugate_base", false));
    }
    if (kind == "scale") return rmul(parse(c, m.at("c").get<std::string>()), apply_map(c, m.at("inner"), x));
    if (kind == "sum") {
        Rat r = rint(c, 0);
        for (const auto& t : m.at("terms")) r = radd(c, r, apply_map(c, t, x));
        return r;
    }
    if (kind == "compose") return apply_map(c, m.at("outer"), apply_map(c, m.at("inner"), x));
    bad("unknown map kind " + kind);
}

std::size_t arity(const Json& f) {
    const std::string kind = f.at("kind");
    if (kind == "constant") return 0;
    if (kind == "product_sym") return f.at("maps").size();
    if (kind == "map_of_product") return f.at("n").get<std::size_t>();
    if (kind == "lift") return arity(f.at("inner")) * f.at("k").get<std::size_t>();
    if (kind == "lincomb") return f.at("terms").empty() ? 0 : arity(f.at("terms")[0].at("form"));
    if (kind == "form_product") {
        std::size_t n = 0;
        for (const auto& g : f.at("factors")) n += arity(g);
        return n;
    }
    bad("unknown form kind " + kind);
}

Rat trace(const Ctx& c, const Json& f, const Rat& x) {
    const std::string kind = f.at("kind");
    if (kind == "constant") return parse(c, f.at("c").get<std::string>());
    if (kind == "product_sym") {
        Rat r = rint(c, 1);
        for (const auto& m : f.at("maps")) r = rmul(r, apply_map(c, m, x));
        return r;
    }
    if (kind == "map_of_product") return apply_map(c, f.at("map"), rpow(c, x, f.at("n").get<long>()));
    if (kind == "lift") return trace(c, f.at("inner"), rpow(c, x, f.at("k").get<long>()));
    if (kind == "lincomb") {
        Rat r = rint(c, 0);
        for (const auto& t : f.at("terms")) r = radd(c, r, rmul(parse(c, t.at("c").get<std::string>()), trace(c, t.at("form"), x)));
        return r;
    }
    if (kind == "form_product") {
        Rat r = rint(c, 1);
        for (const auto& g : f.at("factors")) r = rmul(r, trace(c, g, x));
        return r;
    }
    bad("unknown form kind " + kind);
}

// F(y_1..y_n) = 1/n! sum over subsets S of (-1)^(n-|S|) trace(sum_S y)
Rat form_value(const Ctx& c, const Json& f, const std::vector<Rat>& ys) {
    const std::size_t n = arity(f);
    if (ys.size() != n) bad("form arity mismatch");
    Rat total = rint(c, 0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Rat s = rint(c, 0);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                s = radd(c, s, ys[i]);
                ++k;
            }
        }
        Rat t = trace(c, f, s);
        total = (n - k) % 2 ? rsub(c, total, t) : radd(c, total, t);
    }
    long fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
    return rdiv(c, total, rint(c, fact));
}

using Env = std::map<std::string, Rat>;

Rat eval_in(const Ctx& c, const Json& e, const Env& env);

Rat call_fn(const Ctx& c, const Json& fn, const Rat& arg, const Env& env) {
    Env inner = env;
    inner[fn.at("param").get<std::string>()] = arg;
    return eval_in(c, fn.at("body"), inner);
}

Rat delta_rec(const Ctx& c, const Json& fn, const Rat& x, const std::vector<Rat>& ys, std::size_t from, const Env& env) {
    if (from == ys.size()) return call_fn(c, fn, x, env);
    return rsub(c, delta_rec(c, fn, radd(c, x, ys[from]), ys, from + 1, env), delta_rec(c, fn, x, ys, from + 1, env));
}

std::size_t rank_of(const Ctx& c, std::vector<std::vector<Rat>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        std::size_t p = r;
        while (p < m.size() && rzero(m[p][col])) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (rzero(m[i][col])) continue;
            const Rat f = rdiv(c, m[i][col], m[r][col]);
            for (std::size_t j = col; j < cols; ++j) m[i][j] = rsub(c, m[i][j], rmul(f, m[r][j]));
        }
        ++r;
    }
    return r;
}

Rat eval_in(const Ctx& c, const Json& e, const Env& env) {
    const std::string op = e.at("op");
    auto args = [&] {
        std::vector<Rat> out;
        for (const auto& a : e.at("args")) out.push_back(eval_in(c, a, env));
        return out;
    };
    if (op == "lit") return parse(c, e.at("v").get<std::string>());
    if (op == "var") {
        auto it = env.find(e.at("name").get<std::string>());
        if (it == env.end()) bad("unbound variable");
        return it->second;
    }
    if (op == "add") {
        Rat r = rint(c, 0);
        for (const auto& a : args()) r = radd(c, r, a);
        return r;
    }
    if (op == "mul") {
        Rat r = rint(c, 1);
        for (const auto& a : args()) r = rmul(r, a);
        return r;
    }
    if (op == "sub") {
        const auto a = args();
        return rsub(c, a.at(0), a.at(1));
    }
    if (op == "div") {
        const auto a = args();
        return rdiv(c, a.at(0), a.at(1));
    }
    if (op == "neg") return rneg(c, eval_in(c, e.at("arg"), env));
    if (op == "pow") return rpow(c, eval_in(c, e.at("arg"), env), e.at("exp").get<long>());
    if (op == "map") return apply_map(c, e.at("map"), eval_in(c, e.at("arg"), env));
    if (op == "form") return form_value(c, e.at("form"), args());
    if (op == "trace") return trace(c, e.at("form"), eval_in(c, e.at("arg"), env));
    if (op == "call") return call_fn(c, e.at("fn"), eval_in(c, e.at("arg"), env), env);
    if (op == "delta") {
        std::vector<Rat> ys;
        for (const auto& y : e.at("incs")) ys.push_back(eval_in(c, y, env));
        return delta_rec(c, e.at("fn"), eval_in(c, e.at("at"), env), ys, 0, env);
    }
    bad("unknown op " + op);
}

}  // namespace

Ctx Ctx::from_json(const Json& field) {
    Ctx c;
    c.d = field.at("radicand").get<long>();
    c.vars = field.at("vars").get<std::vector<std::string>>();
    return c;
}

Rat parse(const Ctx& c, const std::string& text) { return Parser(c, text).run(); }

bool equal(const Ctx& c, const Rat& x, const Rat& y) { return rzero(rsub(c, x, y)); }

std::string debug_text(const Ctx& c, const Rat& x) {
    auto poly = [&c](const Poly& p) {
        if (p.empty()) return std::string("0");
        std::string s;
        for (const auto& [m, v] : p) {
            s += (s.empty() ? "" : " + ") + std::string("(") + v.a.get_str();
            if (v.b != 0) s += " + " + v.b.get_str() + "*sqrt(" + std::to_string(v.d) + ")";
            s += ")";
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i]) s += "*" + c.vars[i] + "^" + std::to_string(m[i]);
            }
        }
        return s;
    };
    std::string s = poly(x.num);
    for (const auto& [f, e] : x.den) s += " / (" + poly(f) + ")^" + std::to_string(e);
    return s;
}

Rat eval(const Ctx& c, const Json& expr) { return eval_in(c, expr, {}); }

std::size_t rank(const Ctx& c, const Json& rows) {
    std::vector<std::vector<Rat>> m;
    for (const auto& row : rows) {
        std::vector<Rat> r;
        for (const auto& e : row) r.push_back(eval(c, e));
        m.push_back(std::move(r));
    }
    return rank_of(c, std::move(m));
}

ClaimResult check_claim(const Json& field, const Json& claim) {
    try {
        const Ctx c = Ctx::from_json(field);
        const Json& expr = claim.at("expr");
        const std::string value = claim.at("value");
        if (expr.at("op") == "rank") {
            const std::size_t r = rank(c, expr.at("rows"));
            if (std::to_string(r) == value) return {true, {}};
            return {false, "rank " + std::to_string(r) + " vs claimed " + value};
        }
        const Rat got = eval(c, expr);
        if (equal(c, got, parse(c, value))) return {true, {}};
        return {false, "oracle " + debug_text(c, got) + " vs claimed " + value};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

ClaimResult check_witness(const Json& field, const std::string& lhs, const std::string& rhs, const std::string& diff) {
    try {
        const Ctx c = Ctx::from_json(field);
        const Rat zero = parse(c, "0");
        const Rat d = parse(c, diff);
        if (equal(c, d, zero)) return {false, "witness difference is zero"};
        Json e = {{"op", "sub"}, {"args", Json::array({Json{{"op", "lit"}, {"v", lhs}}, Json{{"op", "lit"}, {"v", rhs}}})}};
        const Rat got = eval(c, e);
        if (!equal(c, got, d)) return {false, "lhs - rhs = " + debug_text(c, got) + " but witness says " + diff};
        return {true, {}};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

Tally check_reports(const Json& reports) {
    Tally t;
    std::function<void(const Json&)> walk = [&](const Json& j) {
        if (j.is_array()) {
            for (const auto& x : j) walk(x);
            return;
        }
        if (!j.is_object()) return;
        if (j.contains("claims") && j.contains("field")) {
            for (const auto& cl : j.at("claims")) {
                ++t.checked;
                const ClaimResult r = check_claim(j.at("field"), cl);
                if (!r.ok) t.failures.push_back(j.value("operation", std::string("?")) + " / " + cl.value("label", std::string("?")) + ": " + r.detail);
            }
            return;
        }
        for (const auto& [k, v] : j.items()) walk(v);
    };
    walk(reports);
    return t;
}

}  // namespace naive
