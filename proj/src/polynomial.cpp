#include "goldfish/polynomial.hpp"

#include <algorithm>

namespace goldfish {

monomial operator*(const monomial& a, const monomial& b) {
    std::vector<monomial::entry> out;
    out.reserve(a.e_.size() + b.e_.size());
    auto ia = a.e_.begin(), ib = b.e_.begin();
    while (ia != a.e_.end() || ib != b.e_.end()) {
        if (ib == b.e_.end() || (ia != a.e_.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.e_.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return monomial(std::move(out));
}

monomial operator/(const monomial& a, const monomial& b) {
    std::vector<monomial::entry> out;
    auto ia = a.e_.begin();
    for (const auto& [v, e] : b.e_) {
        while (ia != a.e_.end() && ia->first < v) out.push_back(*ia++);
        if (ia == a.e_.end() || ia->first != v || ia->second < e)
            throw error("monomial division is not exact");
        if (ia->second > e) out.emplace_back(v, ia->second - e);
        ++ia;
    }
    while (ia != a.e_.end()) out.push_back(*ia++);
    return monomial(std::move(out));
}

bool monomial::divides(const monomial& other) const {
    for (const auto& [v, e] : e_)
        if (other.exponent(v) < e) return false;
    return true;
}

bool lex_less(const monomial& a, const monomial& b) {
    auto ia = a.e_.begin(), ib = b.e_.begin();
    while (ia != a.e_.end() || ib != b.e_.end()) {
        int va = ia == a.e_.end() ? INT32_MAX : ia->first;
        int vb = ib == b.e_.end() ? INT32_MAX : ib->first;
        int v = std::min(va, vb);
        std::uint32_t ea = va == v ? ia->second : 0;
        std::uint32_t eb = vb == v ? ib->second : 0;
        if (ea != eb) return ea < eb;
        if (va == v) ++ia;
        if (vb == v) ++ib;
    }
    return false;
}

polynomial::polynomial(context_ptr ctx, const gint& c) : ctx_(std::move(ctx)) {
    if (!c.is_zero()) terms_.emplace(monomial(), c);
}

polynomial polynomial::variable(context_ptr ctx, int idx, std::uint32_t exp) {
    polynomial p(std::move(ctx));
    p.terms_.emplace(monomial::var(idx, exp), gint(1));
    return p;
}

gint polynomial::constant_value() const {
    if (terms_.empty()) return gint(0);
    return terms_.begin()->second;
}

const monomial& polynomial::leading_monomial() const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const gint& polynomial::leading_coefficient() const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    return terms_.rbegin()->second;
}

std::uint32_t polynomial::degree(int var) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

std::uint32_t polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int polynomial::top_variable() const {
    int top = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.entries()) top = std::max(top, v);
    return top;
}

void polynomial::add_term(const monomial& m, const gint& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

polynomial operator+(const polynomial& a, const polynomial& b) {
    polynomial out = a;
    out += b;
    return out;
}

polynomial& polynomial::operator+=(const polynomial& b) {
    if (!ctx_) ctx_ = b.ctx_;
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

polynomial& polynomial::operator-=(const polynomial& b) {
    if (!ctx_) ctx_ = b.ctx_;
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
}

polynomial operator-(const polynomial& a, const polynomial& b) {
    polynomial out = a;
    out -= b;
    return out;
}

polynomial operator-(const polynomial& a) {
    polynomial out(a.ctx_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
}

polynomial operator*(const polynomial& a, const polynomial& b) {
    polynomial out(a.ctx_ ? a.ctx_ : b.ctx_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

polynomial polynomial::pow(std::uint32_t e) const {
    polynomial result(ctx_, gint(1));
    polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        base = (e >>= 1) ? base * base : base;
    }
    return result;
}

polynomial polynomial::derivative(int var) const {
    polynomial out(ctx_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        if (e == 0) continue;
        out.add_term(m / monomial::var(var), c * gint(static_cast<long>(e)));
    }
    return out;
}

std::vector<polynomial> polynomial::collect(int var) const {
    std::vector<polynomial> out(degree(var) + 1, polynomial(ctx_));
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        out[e].add_term(e ? m / monomial::var(var, e) : m, c);
    }
    return out;
}

polynomial polynomial::assemble(context_ptr ctx, int var, const std::vector<polynomial>& coeffs) {
    polynomial out(ctx);
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        const monomial vm = monomial::var(var, static_cast<std::uint32_t>(d));
        for (const auto& [m, c] : coeffs[d].terms()) out.add_term(m * vm, c);
    }
    return out;
}

gint polynomial::content() const {
    gint g(0);
    for (const auto& [m, c] : terms_) {
        g = ggcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

polynomial polynomial::divide_content(const gint& c) const {
    polynomial out(ctx_);
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, gdiv_exact(k, c));
    return out;
}

std::complex<double> polynomial::eval(const std::vector<std::complex<double>>& point) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        std::complex<double> term = c.to_complex();
        for (const auto& [v, e] : m.entries()) {
            std::complex<double> p(1.0, 0.0);
            const std::complex<double>& z = point.at(static_cast<std::size_t>(v));
            for (std::uint32_t k = 0; k < e; ++k) p *= z;
            term *= p;
        }
        acc += term;
    }
    return acc;
}

bool try_div_exact(const polynomial& a, const polynomial& b, polynomial& quot) {
    if (b.is_zero()) throw error("polynomial division by zero");
    polynomial rem = a;
    polynomial q(a.ctx_ ? a.ctx_ : b.ctx_);
    const monomial& lmb = b.leading_monomial();
    const gint& lcb = b.leading_coefficient();
    while (!rem.is_zero()) {
        const monomial& lmr = rem.leading_monomial();
        if (!lmb.divides(lmr) || !gdivides(lcb, rem.leading_coefficient())) return false;
        monomial qm = lmr / lmb;
        gint qc = gdiv_exact(rem.leading_coefficient(), lcb);
        polynomial qterm(q.ctx());
        qterm.add_term(qm, qc);
        q += qterm;
        rem -= qterm * b;
    }
    quot = std::move(q);
    return true;
}

polynomial div_exact(const polynomial& a, const polynomial& b) {
    polynomial q;
    if (!try_div_exact(a, b, q)) throw error("polynomial division is not exact");
    return q;
}

polynomial canonical_unit_normalize(const polynomial& p, gint* unit_out) {
    if (p.is_zero()) {
        if (unit_out) *unit_out = gint(1);
        return p;
    }
    const gint u = canonical_unit(p.leading_coefficient());
    if (unit_out) *unit_out = u;
    if (u.is_one()) return p;
    return p * polynomial(p.ctx(), u);
}

namespace {

// content of p viewed as univariate in `var` (gcd of the coefficient polys)
polynomial content_wrt(const polynomial& p, int var) {
    polynomial g(p.ctx());
    for (const auto& c : p.collect(var)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

// pseudo-remainder of a by b w.r.t. var, scaled so that
// lc(b)^(deg a - deg b + 1) * a = q*b + r holds exactly
polynomial prem(const polynomial& a, const polynomial& b, int var) {
    const context_ptr& ctx = a.ctx() ? a.ctx() : b.ctx();
    std::vector<polynomial> r = a.collect(var);
    const std::vector<polynomial> d = b.collect(var);
    const std::size_t db = d.size() - 1;
    const polynomial& lb = d.back();
    auto deg_of = [](const std::vector<polynomial>& c) -> long {
        long k = static_cast<long>(c.size()) - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)].is_zero()) --k;
        return k;
    };
    long dr = deg_of(r);
    long e = dr - static_cast<long>(db) + 1;
    while (dr >= static_cast<long>(db) && dr >= 0) {
        const polynomial lr = r[static_cast<std::size_t>(dr)];
        // r = lb*r - lr * var^(dr-db) * b
        for (auto& c : r) c = c * lb;
        for (std::size_t k = 0; k <= db; ++k)
            r[static_cast<std::size_t>(dr - static_cast<long>(db)) + k] -= lr * d[k];
        --e;
        dr = deg_of(r);
    }
    polynomial rem = polynomial::assemble(ctx, var, r);
    for (long k = 0; k < e; ++k) rem = rem * lb;
    return rem;
}

// subresultant PRS on primitive inputs, both of positive degree in var
polynomial subresultant_prs(polynomial a, polynomial b, int var) {
    if (a.degree(var) < b.degree(var)) std::swap(a, b);
    polynomial g(a.ctx(), gint(1));
    polynomial h(a.ctx(), gint(1));
    while (true) {
        const long delta = static_cast<long>(a.degree(var)) - static_cast<long>(b.degree(var));
        polynomial r = prem(a, b, var);
        if (r.is_zero()) return b;
        if (r.degree(var) == 0) {
            // nontrivial constant (in var) remainder: primitive parts coprime
            return polynomial(a.ctx(), gint(1));
        }
        a = b;
        polynomial divisor = g;
        for (long k = 0; k < delta; ++k) divisor = divisor * h;
        b = div_exact(r, divisor);
        g = a.collect(var).back();
        if (delta > 0) {
            polynomial gd = g;
            for (long k = 1; k < delta; ++k) gd = gd * g;
            polynomial hd(a.ctx(), gint(1));
            for (long k = 1; k < delta; ++k) hd = hd * h;
            h = div_exact(gd, hd);
        }
    }
}

}  // namespace

polynomial poly_gcd(const polynomial& a, const polynomial& b) {
    if (a.is_zero()) return canonical_unit_normalize(b);
    if (b.is_zero()) return canonical_unit_normalize(a);
    const context_ptr ctx = a.ctx() ? a.ctx() : b.ctx();

    if (a.is_constant() || b.is_constant()) {
        gint g = ggcd(a.content(), b.content());
        return polynomial(ctx, g);
    }

    const int var = std::max(a.top_variable(), b.top_variable());
    if (a.degree(var) == 0) return poly_gcd(content_wrt(b, var), a);
    if (b.degree(var) == 0) return poly_gcd(content_wrt(a, var), b);

    const polynomial ca = content_wrt(a, var);
    const polynomial cb = content_wrt(b, var);
    const polynomial pa = div_exact(a, ca);
    const polynomial pb = div_exact(b, cb);
    const polynomial cg = poly_gcd(ca, cb);

    polynomial raw = subresultant_prs(pa, pb, var);
    // strip the content the PRS may have accumulated
    raw = div_exact(raw, content_wrt(raw, var));
    return canonical_unit_normalize(raw * cg);
}

}  // namespace goldfish
