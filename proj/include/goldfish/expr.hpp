#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "goldfish/rational_fn.hpp"

namespace goldfish {

struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct inconclusive_zero_error : error {
    inconclusive_zero_error()
        : error("zero test inconclusive: sampling could not avoid singularities") {}
};

// Immutable symbolic expression. The rational fragment (everything built from
// integers, i, variables, + - * / ^) lives in canonical numerator/denominator
// form; exp(...) stays an opaque leaf and only supports differentiation,
// substitution and numeric evaluation. All operations are pure.
class expr {
public:
    expr() = default;

    static expr from_rational(rational_fn r);
    static expr integer(context_ptr ctx, long v);
    static expr rational_const(context_ptr ctx, long num, long den);
    static expr constant(context_ptr ctx, const gint& c);
    static expr imaginary_unit(context_ptr ctx);
    static expr variable(context_ptr ctx, int idx);
    static expr variable(const context_ptr& ctx, const std::string& name);
    static expr exponential(const expr& arg);

    bool valid() const { return static_cast<bool>(node_); }
    const context_ptr& ctx() const;

    bool is_rational() const;
    const rational_fn& rational() const;  // requires is_rational()

    friend expr operator+(const expr& a, const expr& b);
    friend expr operator-(const expr& a, const expr& b);
    friend expr operator-(const expr& a);
    friend expr operator*(const expr& a, const expr& b);
    friend expr operator/(const expr& a, const expr& b);
    expr pow(long e) const;

    // canonical equality on the rational fragment
    friend bool operator==(const expr& a, const expr& b);
    friend bool operator!=(const expr& a, const expr& b) { return !(a == b); }

    expr derivative(int var) const;
    expr derivative(const std::string& name) const;

    expr substitute(const std::map<int, expr>& bindings) const;
    expr substitute(const std::map<std::string, expr>& bindings) const;

    // exact for rational expressions; random-point sampling fallback when an
    // exp leaf is present (throws inconclusive_zero_error if sampling fails)
    bool is_zero() const;

    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point,
                              double singular_tol = 1e-12) const;
    std::complex<double> eval_indexed(const std::vector<std::complex<double>>& point,
                                      double singular_tol = 1e-12) const;

    std::uint32_t degree(int var) const;
    bool depends_on(int var) const;
    std::set<int> support() const;

    std::string str() const;

    struct node;
    using node_ptr = std::shared_ptr<const node>;

private:
    explicit expr(node_ptr n) : node_(std::move(n)) {}
    node_ptr node_;

    friend expr make_sum(std::vector<expr> kids);
    friend expr make_product(std::vector<expr> kids);
};

std::string poly_to_string(const polynomial& p);
std::string to_string(const rational_fn& r);

// Parses the ASCII expression grammar: integers, declared identifiers, the
// reserved names "i", "E0" and "exp", operators + - * / ^ and parentheses.
expr parse_expr(const std::string& text, const context_ptr& ctx);

}  // namespace goldfish
