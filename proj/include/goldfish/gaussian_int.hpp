#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "goldfish/context.hpp"

namespace goldfish {

using bigint = boost::multiprecision::cpp_int;

// Exact Gaussian integer a + b*i. Carrying the imaginary unit in the
// coefficient ring keeps canonical forms decidable for every expression the
// Schroedinger layer produces (the paper-facing coefficients mix i and E0).
struct gint {
    bigint re, im;

    gint() = default;
    gint(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    gint(bigint r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    gint(bigint r, bigint i) : re(std::move(r)), im(std::move(i)) {}

    static gint unit_i() { return gint(0, 1); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    gint conj() const { return {re, -im}; }
    bigint norm() const { return re * re + im * im; }

    friend gint operator+(const gint& a, const gint& b) { return {a.re + b.re, a.im + b.im}; }
    friend gint operator-(const gint& a, const gint& b) { return {a.re - b.re, a.im - b.im}; }
    friend gint operator-(const gint& a) { return {-a.re, -a.im}; }
    friend gint operator*(const gint& a, const gint& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const gint& a, const gint& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const gint& a, const gint& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
};

// Quotient rounded to the nearest Gaussian integer; the remainder a - q*b has
// norm at most norm(b)/2, which is what makes the Euclidean gcd terminate.
gint gdiv_round(const gint& a, const gint& b);

// Exact quotient; throws when b does not divide a.
gint gdiv_exact(const gint& a, const gint& b);

bool gdivides(const gint& b, const gint& a);

// gcd normalized to the canonical associate (re > 0, im >= 0).
gint ggcd(gint a, gint b);

// The unit u in {1,-1,i,-i} for which u*z is the canonical associate.
gint canonical_unit(const gint& z);

bool is_canonical(const gint& z);

std::string to_string(const gint& z);

}  // namespace goldfish
