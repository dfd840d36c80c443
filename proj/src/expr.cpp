#include "goldfish/expr.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace goldfish {

// ---------------------------------------------------------------------------
// tree nodes

struct expr::node {
    enum class kind { rational, sum, product, power, expfn };

    kind k = kind::rational;
    rational_fn rat;              // kind::rational
    std::vector<expr> kids;       // sum, product
    expr base;                    // power, expfn argument
    long exponent = 0;            // power

    explicit node(rational_fn r) : k(kind::rational), rat(std::move(r)) {}
    node(kind kk, std::vector<expr> children) : k(kk), kids(std::move(children)) {}
    node(kind kk, expr b, long e) : k(kk), base(std::move(b)), exponent(e) {}
};

namespace {

using node_kind = expr::node::kind;

const rational_fn& as_rat(const expr& e) { return e.rational(); }

}  // namespace

expr expr::from_rational(rational_fn r) {
    return expr(std::make_shared<node>(std::move(r)));
}

expr expr::integer(context_ptr ctx, long v) {
    return from_rational(rational_fn(polynomial(std::move(ctx), gint(v))));
}

expr expr::rational_const(context_ptr ctx, long num, long den) {
    return from_rational(
        rational_fn(polynomial(ctx, gint(num)), polynomial(ctx, gint(den))));
}

expr expr::constant(context_ptr ctx, const gint& c) {
    return from_rational(rational_fn(polynomial(std::move(ctx), c)));
}

expr expr::imaginary_unit(context_ptr ctx) { return constant(std::move(ctx), gint::unit_i()); }

expr expr::variable(context_ptr ctx, int idx) {
    return from_rational(rational_fn::variable(std::move(ctx), idx));
}

expr expr::variable(const context_ptr& ctx, const std::string& name) {
    return variable(ctx, ctx->index_of(name));
}

expr expr::exponential(const expr& arg) {
    if (arg.is_rational() && arg.rational().is_zero())
        return integer(arg.ctx(), 1);
    return expr(std::make_shared<node>(node_kind::expfn, arg, 0));
}

const context_ptr& expr::ctx() const {
    const node* n = node_.get();
    while (true) {
        switch (n->k) {
            case node_kind::rational: return n->rat.ctx();
            case node_kind::sum:
            case node_kind::product: n = n->kids.front().node_.get(); break;
            case node_kind::power:
            case node_kind::expfn: n = n->base.node_.get(); break;
        }
    }
}

bool expr::is_rational() const { return node_ && node_->k == node_kind::rational; }

const rational_fn& expr::rational() const {
    if (!is_rational()) throw error("expression is not in the rational fragment");
    return node_->rat;
}

// ---------------------------------------------------------------------------
// arithmetic with flattening; the rational fragment stays exactly canonical

expr make_sum(std::vector<expr> kids) {
    std::vector<expr> flat;
    rational_fn racc;
    bool have_rat = false;
    for (auto& k : kids) {
        if (k.is_rational()) {
            racc = have_rat ? racc + k.rational() : k.rational();
            have_rat = true;
        } else if (k.node_->k == node_kind::sum) {
            for (const auto& kk : k.node_->kids) {
                if (kk.is_rational()) {
                    racc = have_rat ? racc + kk.rational() : kk.rational();
                    have_rat = true;
                } else {
                    flat.push_back(kk);
                }
            }
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (flat.empty()) return expr::from_rational(have_rat ? racc : rational_fn());
    if (have_rat && !racc.is_zero()) flat.push_back(expr::from_rational(racc));
    if (flat.size() == 1) return flat.front();
    return expr(std::make_shared<expr::node>(node_kind::sum, std::move(flat)));
}

expr make_product(std::vector<expr> kids) {
    std::vector<expr> flat;
    rational_fn racc;
    bool have_rat = false;
    for (auto& k : kids) {
        if (k.is_rational()) {
            racc = have_rat ? racc * k.rational() : k.rational();
            have_rat = true;
            if (racc.is_zero()) return expr::from_rational(racc);
        } else if (k.node_->k == node_kind::product) {
            for (const auto& kk : k.node_->kids) {
                if (kk.is_rational()) {
                    racc = have_rat ? racc * kk.rational() : kk.rational();
                    have_rat = true;
                } else {
                    flat.push_back(kk);
                }
            }
            if (have_rat && racc.is_zero()) return expr::from_rational(racc);
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (flat.empty()) return expr::from_rational(have_rat ? racc : rational_fn());
    if (have_rat && !(racc.is_constant() && racc.num().is_one() && racc.den().is_one()))
        flat.push_back(expr::from_rational(racc));
    if (flat.size() == 1) return flat.front();
    return expr(std::make_shared<expr::node>(node_kind::product, std::move(flat)));
}

expr operator+(const expr& a, const expr& b) {
    if (a.is_rational() && b.is_rational())
        return expr::from_rational(a.rational() + b.rational());
    return make_sum({a, b});
}

expr operator-(const expr& a) {
    if (a.is_rational()) return expr::from_rational(-a.rational());
    return make_product({expr::integer(a.ctx(), -1), a});
}

expr operator-(const expr& a, const expr& b) { return a + (-b); }

expr operator*(const expr& a, const expr& b) {
    if (a.is_rational() && b.is_rational())
        return expr::from_rational(a.rational() * b.rational());
    return make_product({a, b});
}

expr operator/(const expr& a, const expr& b) {
    if (a.is_rational() && b.is_rational())
        return expr::from_rational(a.rational() / b.rational());
    return a * b.pow(-1);
}

expr expr::pow(long e) const {
    if (is_rational()) return from_rational(rational().pow(e));
    if (e == 0) return integer(ctx(), 1);
    if (e == 1) return *this;
    if (node_->k == node_kind::expfn)
        return exponential(integer(ctx(), e) * node_->base);
    if (node_->k == node_kind::power)
        return node_->base.pow(node_->exponent * e);
    return expr(std::make_shared<node>(node_kind::power, *this, e));
}

bool operator==(const expr& a, const expr& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    return (a - b).is_zero();
}

// ---------------------------------------------------------------------------
// calculus

expr expr::derivative(int var) const {
    switch (node_->k) {
        case node_kind::rational: return from_rational(node_->rat.derivative(var));
        case node_kind::sum: {
            std::vector<expr> kids;
            kids.reserve(node_->kids.size());
            for (const auto& k : node_->kids) kids.push_back(k.derivative(var));
            return make_sum(std::move(kids));
        }
        case node_kind::product: {
            std::vector<expr> terms;
            for (std::size_t i = 0; i < node_->kids.size(); ++i) {
                std::vector<expr> factors = node_->kids;
                factors[i] = factors[i].derivative(var);
                terms.push_back(make_product(std::move(factors)));
            }
            return make_sum(std::move(terms));
        }
        case node_kind::power: {
            const expr& b = node_->base;
            return integer(ctx(), node_->exponent) * b.pow(node_->exponent - 1) *
                   b.derivative(var);
        }
        case node_kind::expfn:
            return node_->base.derivative(var) * *this;
    }
    throw error("unreachable");
}

expr expr::derivative(const std::string& name) const { return derivative(ctx()->index_of(name)); }

expr expr::substitute(const std::map<int, expr>& bindings) const {
    bool all_rational = true;
    for (const auto& [v, e] : bindings)
        if (!e.is_rational()) all_rational = false;
    switch (node_->k) {
        case node_kind::rational: {
            if (all_rational) {
                std::map<int, rational_fn> rb;
                for (const auto& [v, e] : bindings) rb.emplace(v, e.rational());
                return from_rational(node_->rat.substitute(rb));
            }
            // rebuild the polynomial pair through expr arithmetic
            auto lift = [&](const polynomial& p) {
                expr acc = integer(p.ctx(), 0);
                for (const auto& [m, c] : p.terms()) {
                    expr term = constant(p.ctx(), c);
                    for (const auto& [v, e] : m.entries()) {
                        auto it = bindings.find(v);
                        expr base = it != bindings.end() ? it->second : variable(p.ctx(), v);
                        term = term * base.pow(static_cast<long>(e));
                    }
                    acc = acc + term;
                }
                return acc;
            };
            return lift(node_->rat.num()) / lift(node_->rat.den());
        }
        case node_kind::sum: {
            std::vector<expr> kids;
            for (const auto& k : node_->kids) kids.push_back(k.substitute(bindings));
            return make_sum(std::move(kids));
        }
        case node_kind::product: {
            std::vector<expr> kids;
            for (const auto& k : node_->kids) kids.push_back(k.substitute(bindings));
            return make_product(std::move(kids));
        }
        case node_kind::power:
            return node_->base.substitute(bindings).pow(node_->exponent);
        case node_kind::expfn:
            return exponential(node_->base.substitute(bindings));
    }
    throw error("unreachable");
}

expr expr::substitute(const std::map<std::string, expr>& bindings) const {
    std::map<int, expr> by_index;
    for (const auto& [name, e] : bindings) by_index.emplace(ctx()->index_of(name), e);
    return substitute(by_index);
}

// ---------------------------------------------------------------------------
// structure queries

std::uint32_t expr::degree(int var) const {
    switch (node_->k) {
        case node_kind::rational: return node_->rat.degree(var);
        case node_kind::sum:
        case node_kind::product: {
            std::uint32_t d = 0;
            for (const auto& k : node_->kids) d = std::max(d, k.degree(var));
            return d;
        }
        case node_kind::power:
            return node_->base.degree(var) * static_cast<std::uint32_t>(
                       std::abs(node_->exponent));
        case node_kind::expfn: return node_->base.degree(var);
    }
    throw error("unreachable");
}

bool expr::depends_on(int var) const {
    switch (node_->k) {
        case node_kind::rational: return node_->rat.depends_on(var);
        case node_kind::sum:
        case node_kind::product: {
            for (const auto& k : node_->kids)
                if (k.depends_on(var)) return true;
            return false;
        }
        case node_kind::power:
        case node_kind::expfn: return node_->base.depends_on(var);
    }
    throw error("unreachable");
}

std::set<int> expr::support() const {
    std::set<int> out;
    for (int v = 0; v < ctx()->size(); ++v)
        if (depends_on(v)) out.insert(v);
    return out;
}

// ---------------------------------------------------------------------------
// numeric evaluation

std::complex<double> expr::eval_indexed(const std::vector<std::complex<double>>& point,
                                        double singular_tol) const {
    switch (node_->k) {
        case node_kind::rational: return node_->rat.eval(point, singular_tol);
        case node_kind::sum: {
            std::complex<double> acc(0.0);
            for (const auto& k : node_->kids) acc += k.eval_indexed(point, singular_tol);
            return acc;
        }
        case node_kind::product: {
            std::complex<double> acc(1.0);
            for (const auto& k : node_->kids) acc *= k.eval_indexed(point, singular_tol);
            return acc;
        }
        case node_kind::power: {
            const std::complex<double> b = node_->base.eval_indexed(point, singular_tol);
            if (node_->exponent < 0 && std::abs(b) <= singular_tol)
                throw singular_point_error(node_->base.str());
            return std::pow(b, static_cast<double>(node_->exponent));
        }
        case node_kind::expfn:
            return std::exp(node_->base.eval_indexed(point, singular_tol));
    }
    throw error("unreachable");
}

std::complex<double> expr::eval(const std::map<std::string, std::complex<double>>& point,
                                double singular_tol) const {
    const context_ptr& c = ctx();
    std::vector<std::complex<double>> indexed(static_cast<std::size_t>(c->size()),
                                              std::complex<double>(0.0));
    std::vector<bool> bound(static_cast<std::size_t>(c->size()), false);
    for (const auto& [name, z] : point) {
        const int idx = c->index_of(name);
        indexed[static_cast<std::size_t>(idx)] = z;
        bound[static_cast<std::size_t>(idx)] = true;
    }
    for (int v : support())
        if (!bound[static_cast<std::size_t>(v)])
            throw error("unbound variable in numeric evaluation: " + c->name(v));
    return eval_indexed(indexed, singular_tol);
}

// ---------------------------------------------------------------------------
// zero testing

bool expr::is_zero() const {
    if (is_rational()) return node_->rat.is_zero();

    // Sampling fallback for exp-bearing expressions: 8 random rational points,
    // coordinates p/q with p,q in [-97,97], resampled near singularities.
    std::mt19937 rng(0x90c0ffee);
    std::uniform_int_distribution<int> num_dist(-97, 97);
    std::uniform_int_distribution<int> den_dist(1, 97);
    const std::set<int> vars = support();
    const int nvars = ctx()->size();

    int good = 0, attempts = 0;
    while (good < 8) {
        if (++attempts > 512) throw inconclusive_zero_error();
        std::vector<std::complex<double>> point(static_cast<std::size_t>(nvars));
        for (int v : vars)
            point[static_cast<std::size_t>(v)] =
                std::complex<double>(static_cast<double>(num_dist(rng)) / den_dist(rng), 0.0);
        try {
            const std::complex<double> val = eval_indexed(point, 1e-6);
            if (std::abs(val) > 1e-9) return false;
            ++good;
        } catch (const singular_point_error&) {
            continue;  // resample
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string monomial_to_string(const monomial& m, const context& ctx) {
    std::string s;
    for (const auto& [v, e] : m.entries()) {
        if (!s.empty()) s += "*";
        s += ctx.name(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

// sign-split coefficient rendering: returns {negative?, printed |coeff|}
std::pair<bool, std::string> coeff_to_string(const gint& c, bool with_monomial) {
    const bool neg = c.re != 0 ? c.re < 0 : c.im < 0;
    const gint a = neg ? -c : c;
    std::string s;
    if (a.im == 0) {
        if (!(a.re == 1 && with_monomial)) s = a.re.str();
    } else if (a.re == 0) {
        s = a.im == 1 ? "i" : a.im.str() + "*i";
    } else {
        s = "(" + a.re.str();
        if (a.im > 0)
            s += " + " + (a.im == 1 ? std::string("i") : a.im.str() + "*i");
        else
            s += " - " + (a.im == -1 ? std::string("i") : (-a.im).str() + "*i");
        s += ")";
    }
    return {neg, s};
}

}  // namespace

std::string poly_to_string(const polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const std::string mono = monomial_to_string(it->first, *p.ctx());
        auto [neg, coeff] = coeff_to_string(it->second, !mono.empty());
        std::string term;
        if (coeff.empty())
            term = mono.empty() ? "1" : mono;
        else
            term = mono.empty() ? coeff : coeff + "*" + mono;
        if (first) {
            out = (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

std::string to_string(const rational_fn& r) {
    if (r.den().is_one()) return poly_to_string(r.num());
    return "(" + poly_to_string(r.num()) + ")/(" + poly_to_string(r.den()) + ")";
}

namespace {

bool needs_parens_in_product(const expr& e) {
    if (!e.is_rational()) return false;  // products/powers/exp print atomically
    const rational_fn& r = e.rational();
    if (!r.den().is_one()) return true;
    if (r.num().terms().size() > 1) return true;
    if (r.num().is_zero()) return false;
    auto [neg, s] = coeff_to_string(r.num().terms().begin()->second, false);
    return neg;
}

}  // namespace

std::string expr::str() const {
    switch (node_->k) {
        case node_kind::rational: return to_string(node_->rat);
        case node_kind::sum: {
            std::string out;
            for (std::size_t i = 0; i < node_->kids.size(); ++i) {
                if (i) out += " + ";
                out += node_->kids[i].str();
            }
            return out;
        }
        case node_kind::product: {
            std::string out;
            for (std::size_t i = 0; i < node_->kids.size(); ++i) {
                if (i) out += "*";
                const expr& k = node_->kids[i];
                const bool wrap = needs_parens_in_product(k) ||
                                  (!k.is_rational() && k.node_->k == node_kind::sum);
                out += wrap ? "(" + k.str() + ")" : k.str();
            }
            return out;
        }
        case node_kind::power: {
            const std::string b = "(" + node_->base.str() + ")";
            return node_->exponent < 0
                       ? b + "^(" + std::to_string(node_->exponent) + ")"
                       : b + "^" + std::to_string(node_->exponent);
        }
        case node_kind::expfn: return "exp(" + node_->base.str() + ")";
    }
    throw error("unreachable");
}

// ---------------------------------------------------------------------------
// parser: precedence-climbing recursive descent over the ASCII grammar

namespace {

class parser {
public:
    parser(const std::string& text, context_ptr ctx) : text_(text), ctx_(std::move(ctx)) {}

    expr run() {
        expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "'", pos_);
    }

    expr parse_sum() {
        expr acc = parse_term();
        while (true) {
            if (accept('+'))
                acc = acc + parse_term();
            else if (accept('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    expr parse_term() {
        expr acc = parse_unary();
        while (true) {
            if (accept('*'))
                acc = acc * parse_unary();
            else if (accept('/'))
                acc = acc / parse_unary();
            else
                return acc;
        }
    }

    expr parse_unary() {
        if (accept('-')) return -parse_unary();
        return parse_power();
    }

    expr parse_power() {
        expr base = parse_atom();
        if (accept('^')) return base.pow(parse_exponent());
        return base;
    }

    long parse_exponent() {
        skip_ws();
        bool parens = accept('(');
        bool neg = accept('-');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw parse_error("expected integer exponent", pos_);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        if (parens) expect(')');
        return neg ? -v : v;
    }

    expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            bigint v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = v * 10 + (text_[pos_++] - '0');
            return expr::constant(ctx_, gint(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string name = text_.substr(start, pos_ - start);
            if (name == "i") return expr::imaginary_unit(ctx_);
            if (name == "exp") {
                expect('(');
                expr arg = parse_sum();
                expect(')');
                return expr::exponential(arg);
            }
            if (!ctx_->has(name)) throw parse_error("unknown identifier '" + name + "'", start);
            return expr::variable(ctx_, ctx_->index_of(name));
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    context_ptr ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

expr parse_expr(const std::string& text, const context_ptr& ctx) {
    return parser(text, ctx).run();
}

}  // namespace goldfish
