#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "goldfish/gaussian_int.hpp"

namespace goldfish {

// Exponent vector stored sparsely as (variable index, exponent) pairs sorted
// by variable index; exponents are strictly positive.
class monomial {
public:
    using entry = std::pair<int, std::uint32_t>;

    monomial() = default;
    explicit monomial(std::vector<entry> e) : e_(std::move(e)) {}

    static monomial var(int idx, std::uint32_t exp = 1) {
        if (exp == 0) return {};
        return monomial({{idx, exp}});
    }

    bool is_unit() const { return e_.empty(); }
    const std::vector<entry>& entries() const { return e_; }

    std::uint32_t exponent(int idx) const {
        for (const auto& [v, e] : e_)
            if (v == idx) return e;
        return 0;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [v, e] : e_) d += e;
        return d;
    }

    bool depends_on(int idx) const { return exponent(idx) > 0; }

    friend monomial operator*(const monomial& a, const monomial& b);

    // componentwise a/b; throws if some exponent of b exceeds a's
    friend monomial operator/(const monomial& a, const monomial& b);

    bool divides(const monomial& other) const;

    friend bool operator==(const monomial& a, const monomial& b) { return a.e_ == b.e_; }

    // lexicographic order w.r.t. the context's variable order: the monomial
    // with the higher exponent in the earliest differing variable is greater
    friend bool lex_less(const monomial& a, const monomial& b);

private:
    std::vector<entry> e_;
};

struct monomial_less {
    bool operator()(const monomial& a, const monomial& b) const { return lex_less(a, b); }
};

// Sparse multivariate polynomial over the Gaussian integers, terms kept in
// ascending lex order (leading term at rbegin).
class polynomial {
public:
    using term_map = std::map<monomial, gint, monomial_less>;

    polynomial() = default;
    explicit polynomial(context_ptr ctx) : ctx_(std::move(ctx)) {}
    polynomial(context_ptr ctx, const gint& c);

    static polynomial variable(context_ptr ctx, int idx, std::uint32_t exp = 1);

    const context_ptr& ctx() const { return ctx_; }
    const term_map& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit()); }
    gint constant_value() const;  // requires is_constant()
    bool is_one() const { return is_constant() && constant_value().is_one(); }

    const monomial& leading_monomial() const;
    const gint& leading_coefficient() const;

    std::uint32_t degree(int var) const;
    std::uint32_t total_degree() const;
    bool depends_on(int var) const { return degree(var) > 0; }
    // largest variable index that occurs, or -1 for constants
    int top_variable() const;

    void add_term(const monomial& m, const gint& c);

    friend polynomial operator+(const polynomial& a, const polynomial& b);
    friend polynomial operator-(const polynomial& a, const polynomial& b);
    friend polynomial operator-(const polynomial& a);
    friend polynomial operator*(const polynomial& a, const polynomial& b);
    polynomial& operator+=(const polynomial& b);
    polynomial& operator-=(const polynomial& b);

    friend bool operator==(const polynomial& a, const polynomial& b) {
        return a.terms_ == b.terms_;
    }

    polynomial pow(std::uint32_t e) const;
    polynomial derivative(int var) const;

    // coefficients of powers of `var`: result[d] = coefficient polynomial of var^d
    std::vector<polynomial> collect(int var) const;
    // rebuild from a collect()-style vector
    static polynomial assemble(context_ptr ctx, int var, const std::vector<polynomial>& coeffs);

    // gcd of all coefficients, canonical associate (zero for the zero poly)
    gint content() const;
    polynomial divide_content(const gint& c) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    // exact multivariate division; throws when not divisible
    friend polynomial div_exact(const polynomial& a, const polynomial& b);
    friend bool try_div_exact(const polynomial& a, const polynomial& b, polynomial& quot);

    friend polynomial poly_gcd(const polynomial& a, const polynomial& b);

private:
    context_ptr ctx_;
    term_map terms_;
};

polynomial poly_gcd(const polynomial& a, const polynomial& b);

// multiply by the unit making the leading coefficient canonical
polynomial canonical_unit_normalize(const polynomial& p, gint* unit_out = nullptr);

}  // namespace goldfish
