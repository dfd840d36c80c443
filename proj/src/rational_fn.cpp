#include "goldfish/rational_fn.hpp"

#include <string>

namespace goldfish {

std::string poly_to_string(const polynomial& p);  // defined in expr.cpp

rational_fn::rational_fn(polynomial num) : num_(std::move(num)), den_(num_.ctx(), gint(1)) {}

rational_fn::rational_fn(polynomial num, polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw zero_division_error();
    if (!num_.ctx() && den_.ctx()) num_ = polynomial(den_.ctx());
    reduce();
}

void rational_fn::reduce() {
    if (num_.is_zero()) {
        den_ = polynomial(den_.ctx(), gint(1));
        return;
    }
    if (!den_.is_one()) {
        const polynomial g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = div_exact(num_, g);
            den_ = div_exact(den_, g);
        }
    }
    gint unit(1);
    den_ = canonical_unit_normalize(den_, &unit);
    if (!unit.is_one()) num_ = num_ * polynomial(num_.ctx(), unit);
}

rational_fn operator+(const rational_fn& a, const rational_fn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return rational_fn(a.num_ + b.num_, a.den_);
    if (a.den_.is_one() && b.den_.is_one()) return rational_fn(a.num_ + b.num_);
    return rational_fn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

rational_fn operator-(const rational_fn& a, const rational_fn& b) { return a + (-b); }

rational_fn operator-(const rational_fn& a) {
    rational_fn out = a;
    out.num_ = -out.num_;
    return out;
}

rational_fn operator*(const rational_fn& a, const rational_fn& b) {
    if (a.is_zero() || b.is_zero())
        return rational_fn(polynomial(a.ctx() ? a.ctx() : b.ctx()));
    if (a.den_.is_one() && b.den_.is_one()) return rational_fn(a.num_ * b.num_);
    // cross-reduce first to keep the big gcd cheap
    const polynomial g1 = poly_gcd(a.num_, b.den_);
    const polynomial g2 = poly_gcd(b.num_, a.den_);
    const polynomial n1 = g1.is_one() ? a.num_ : div_exact(a.num_, g1);
    const polynomial d2 = g1.is_one() ? b.den_ : div_exact(b.den_, g1);
    const polynomial n2 = g2.is_one() ? b.num_ : div_exact(b.num_, g2);
    const polynomial d1 = g2.is_one() ? a.den_ : div_exact(a.den_, g2);
    return rational_fn(n1 * n2, d1 * d2);
}

rational_fn operator/(const rational_fn& a, const rational_fn& b) {
    if (b.is_zero()) throw zero_division_error();
    return a * rational_fn(b.den_, b.num_);
}

rational_fn rational_fn::pow(long e) const {
    if (e == 0) return rational_fn(polynomial(ctx(), gint(1)));
    const bool invert = e < 0;
    std::uint32_t k = static_cast<std::uint32_t>(invert ? -e : e);
    rational_fn base = invert ? rational_fn(den_, num_) : *this;
    return rational_fn(base.num_.pow(k), base.den_.pow(k));
}

rational_fn rational_fn::derivative(int var) const {
    if (den_.is_one()) return rational_fn(num_.derivative(var));
    if (!num_.depends_on(var) && !den_.depends_on(var))
        return rational_fn(polynomial(ctx()));
    // (n'd - nd')/d^2
    return rational_fn(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                       den_ * den_);
}

rational_fn substitute(const polynomial& p, const std::map<int, rational_fn>& bindings) {
    const context_ptr& ctx = p.ctx();
    rational_fn acc(polynomial(ctx));
    // cache powers per bound variable
    std::map<int, std::vector<rational_fn>> powers;
    for (const auto& [m, c] : p.terms()) {
        rational_fn term(polynomial(ctx, c));
        monomial untouched;
        for (const auto& [v, e] : m.entries()) {
            auto bound = bindings.find(v);
            if (bound == bindings.end()) {
                untouched = untouched * monomial::var(v, e);
                continue;
            }
            auto& cache = powers[v];
            if (cache.empty()) cache.push_back(rational_fn(polynomial(ctx, gint(1))));
            while (cache.size() <= e) cache.push_back(cache.back() * bound->second);
            term = term * cache[e];
        }
        if (!untouched.is_unit()) {
            polynomial mono(ctx);
            mono.add_term(untouched, gint(1));
            term = term * rational_fn(mono);
        }
        acc = acc + term;
    }
    return acc;
}

rational_fn rational_fn::substitute(const std::map<int, rational_fn>& bindings) const {
    bool touched = false;
    for (const auto& [v, r] : bindings)
        if (depends_on(v)) {
            touched = true;
            break;
        }
    if (!touched) return *this;
    const rational_fn n = goldfish::substitute(num_, bindings);
    const rational_fn d = goldfish::substitute(den_, bindings);
    if (d.is_zero()) throw zero_division_error();
    return n / d;
}

std::complex<double> rational_fn::eval(const std::vector<std::complex<double>>& point,
                                       double singular_tol) const {
    const std::complex<double> d = den_.eval(point);
    if (std::abs(d) <= singular_tol) throw singular_point_error(poly_to_string(den_));
    return num_.eval(point) / d;
}

}  // namespace goldfish
