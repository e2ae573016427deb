#include "ccb/algebra.hpp"

#include <algorithm>

namespace ccb {

// a + b*sqrt(d) = a + sgn(b)*sqrt(b^2 d), so one scaled sqrt bound
// gives error < 2^-prec directly.
Rat AlgNum::lower(unsigned prec) const {
    if (is_rational()) return a;
    Rat s = b * b * d;
    return b > 0 ? Rat(a + sqrt_lower(s, prec)) : Rat(a - sqrt_upper(s, prec));
}

Rat AlgNum::upper(unsigned prec) const {
    if (is_rational()) return a;
    Rat s = b * b * d;
    return b > 0 ? Rat(a + sqrt_upper(s, prec)) : Rat(a - sqrt_lower(s, prec));
}

int quad_sign_at(const Rat& A, const Rat& B, const Rat& C, const AlgNum& x) {
    // A(a^2 + b^2 d) + Ba + C  +  b(2Aa + B) sqrt(d)
    Rat p = A * (x.a * x.a + x.b * x.b * x.d) + B * x.a + C;
    Rat q = x.b * (2 * A * x.a + B);
    return radical_sign(p, q, x.d);
}

std::vector<AlgNum> quad_roots(const Rat& A, const Rat& B, const Rat& C) {
    std::vector<AlgNum> roots;
    if (A == 0) {
        if (B != 0) roots.emplace_back(Rat(-C / B));
        return roots;
    }
    Rat disc = B * B - 4 * A * C;
    if (disc < 0) return roots;
    Rat h = -B / (2 * A);
    if (disc == 0) {
        roots.emplace_back(h);
        return roots;
    }
    Rat w = 1 / (2 * A);
    roots.emplace_back(h, -abs(w), disc);
    roots.emplace_back(h, abs(w), disc);
    return roots;
}

Rat rational_between(const AlgNum& x, const AlgNum& y) {
    if (!(x.cmp(y) < 0)) throw std::invalid_argument("rational_between needs x < y");
    for (unsigned prec = 1;; prec *= 2) {
        Rat u = x.upper(prec), l = y.lower(prec);
        if (u < l) return (u + l) / 2;
    }
}

}  // namespace ccb
