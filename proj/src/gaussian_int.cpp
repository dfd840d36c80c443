#include "goldfish/gaussian_int.hpp"

namespace goldfish {

namespace {

// round(2n / 2d) to nearest, ties toward +infinity; exact integer arithmetic.
bigint round_div(const bigint& n, const bigint& d) {
    bigint two_n = 2 * n, q;
    bigint dd = d;
    if (dd < 0) {
        two_n = -two_n;
        dd = -dd;
    }
    // floor((2n + d) / (2d))
    bigint num = two_n + dd;
    q = num / (2 * dd);
    if (num < 0 && num % (2 * dd) != 0) q -= 1;
    return q;
}

}  // namespace

gint gdiv_round(const gint& a, const gint& b) {
    if (b.is_zero()) throw error("gaussian division by zero");
    const gint num = a * b.conj();
    const bigint den = b.norm();
    return {round_div(num.re, den), round_div(num.im, den)};
}

gint gdiv_exact(const gint& a, const gint& b) {
    if (b.is_zero()) throw error("gaussian division by zero");
    const gint num = a * b.conj();
    const bigint den = b.norm();
    if (num.re % den != 0 || num.im % den != 0)
        throw error("gaussian division is not exact");
    return {num.re / den, num.im / den};
}

bool gdivides(const gint& b, const gint& a) {
    if (b.is_zero()) return a.is_zero();
    const gint num = a * b.conj();
    const bigint den = b.norm();
    return num.re % den == 0 && num.im % den == 0;
}

gint ggcd(gint a, gint b) {
    while (!b.is_zero()) {
        const gint q = gdiv_round(a, b);
        const gint r = a - q * b;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return canonical_unit(a) * a;
}

bool is_canonical(const gint& z) { return z.re > 0 && z.im >= 0; }

gint canonical_unit(const gint& z) {
    if (z.is_zero()) return gint(1);
    gint u(1);
    gint w = z;
    for (int k = 0; k < 4; ++k) {
        if (is_canonical(w)) return u;
        w = gint::unit_i() * w;
        u = gint::unit_i() * u;
    }
    throw error("no canonical associate");  // unreachable
}

std::string to_string(const gint& z) {
    if (z.im == 0) return z.re.str();
    if (z.re == 0) {
        if (z.im == 1) return "i";
        if (z.im == -1) return "-i";
        return z.im.str() + "*i";
    }
    std::string s = "(" + z.re.str();
    if (z.im > 0)
        s += " + " + (z.im == 1 ? std::string() : z.im.str() + "*") + "i";
    else
        s += " - " + (z.im == -1 ? std::string() : (-z.im).str() + "*") + "i";
    return s + ")";
}

}  // namespace goldfish
