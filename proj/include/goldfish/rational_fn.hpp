#pragma once

#include <map>
#include <optional>

#include "goldfish/polynomial.hpp"

namespace goldfish {

struct zero_division_error : error {
    zero_division_error() : error("division by the zero polynomial") {}
};

struct singular_point_error : error {
    explicit singular_point_error(const std::string& den)
        : error("evaluation at a singular point of denominator " + den) {}
};

// Rational function in canonical form: numerator and denominator are coprime
// Gaussian-integer polynomials, the denominator is nonzero and its leading
// coefficient is the canonical associate (re > 0, im >= 0). Zero is 0/1.
// Equality of canonical pairs is equality of rational functions.
class rational_fn {
public:
    rational_fn() = default;
    explicit rational_fn(polynomial num);
    rational_fn(polynomial num, polynomial den);

    static rational_fn constant(context_ptr ctx, const gint& c) {
        return rational_fn(polynomial(std::move(ctx), c));
    }
    static rational_fn variable(context_ptr ctx, int idx) {
        return rational_fn(polynomial::variable(std::move(ctx), idx));
    }

    const polynomial& num() const { return num_; }
    const polynomial& den() const { return den_; }
    const context_ptr& ctx() const { return num_.ctx(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }

    friend rational_fn operator+(const rational_fn& a, const rational_fn& b);
    friend rational_fn operator-(const rational_fn& a, const rational_fn& b);
    friend rational_fn operator-(const rational_fn& a);
    friend rational_fn operator*(const rational_fn& a, const rational_fn& b);
    friend rational_fn operator/(const rational_fn& a, const rational_fn& b);
    friend bool operator==(const rational_fn& a, const rational_fn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    rational_fn pow(long e) const;
    rational_fn derivative(int var) const;

    // simultaneous substitution; unbound variables stay themselves
    rational_fn substitute(const std::map<int, rational_fn>& bindings) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& point,
                              double singular_tol = 1e-12) const;

    std::uint32_t degree(int var) const { return std::max(num_.degree(var), den_.degree(var)); }
    bool depends_on(int var) const { return num_.depends_on(var) || den_.depends_on(var); }

private:
    void reduce();

    polynomial num_, den_;
};

// substitution applied to a bare polynomial (result is rational in general)
rational_fn substitute(const polynomial& p, const std::map<int, rational_fn>& bindings);

}  // namespace goldfish
