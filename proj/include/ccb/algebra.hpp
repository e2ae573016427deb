#pragma once

#include <optional>
#include <vector>

#include "ccb/formal.hpp"
#include "ccb/rational.hpp"

namespace ccb {

// A real of the form a + b*sqrt(d) with rational a,b and d >= 0.
// Closed under the operations the cover bookkeeping needs: comparison
// with rationals and with values over a different radicand, and exact
// sign evaluation of rational quadratics.
struct AlgNum {
    Rat a, b, d;

    AlgNum() : a(0), b(0), d(0) {}
    explicit AlgNum(Rat r) : a(std::move(r)), b(0), d(0) {}
    AlgNum(Rat a_, Rat b_, Rat d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
        if (d < 0) throw std::invalid_argument("negative radicand");
        if (d == 0) b = 0;
    }

    bool is_rational() const { return b == 0 || d == 0; }

    int cmp(const Rat& r) const { return radical_sign(a - r, b, d); }
    int cmp(const AlgNum& o) const {
        return radical_sign2(a - o.a, b, d, -o.b, o.d);
    }
    bool operator<(const AlgNum& o) const { return cmp(o) < 0; }
    bool operator==(const AlgNum& o) const { return cmp(o) == 0; }

    // Rational bounds with error < 2^-prec.
    Rat lower(unsigned prec) const;
    Rat upper(unsigned prec) const;
};

// Sign of A*x^2 + B*x + C at x = value; exact.
int quad_sign_at(const Rat& A, const Rat& B, const Rat& C, const AlgNum& x);

// Real roots of A*x^2 + B*x + C in ascending order (0, 1 or 2 of them;
// a double root is reported once; the zero polynomial yields none).
std::vector<AlgNum> quad_roots(const Rat& A, const Rat& B, const Rat& C);

// A rational strictly between x and y (requires x < y).
Rat rational_between(const AlgNum& x, const AlgNum& y);

}  // namespace ccb
