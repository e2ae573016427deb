#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ccb/nat.hpp"

namespace ccb {

// Exact rationals. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as canonicalize() is called after raw
// construction; all arithmetic operators preserve canonical form.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_of(const Nat& num, const Nat& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" with optional sign.
inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Power of two as a rational: pow2(-k) = 2^-k.
inline Rat pow2(long e) {
    Rat q;
    if (e >= 0) {
        mpz_class n = 1;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
        q = Rat(n);
    } else {
        mpz_class d = 1;
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-e));
        q = Rat(1, d);
        q.canonicalize();
    }
    return q;
}

// A point of Q^n.
struct Point {
    std::vector<Rat> coords;

    Point() = default;
    explicit Point(std::vector<Rat> c) : coords(std::move(c)) {}
    Point(Rat x, Rat y) : coords{std::move(x), std::move(y)} {}

    std::size_t dim() const { return coords.size(); }
    const Rat& operator[](std::size_t i) const { return coords[i]; }
    Rat& operator[](std::size_t i) { return coords[i]; }

    bool operator==(const Point& o) const { return coords == o.coords; }
};

inline Point operator-(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
    return r;
}

inline Point operator+(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
    return r;
}

inline Rat dot(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

// Squared Euclidean distance; exact.
inline Rat dist2(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Rat d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Linear interpolation a + t*(b-a) at rational t; exact.
inline Point lerp(const Point& a, const Point& b, const Rat& t) {
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] += t * (b[i] - a[i]);
    return r;
}

// Rational lower/upper bounds for sqrt(q), q >= 0, with error < 2^-prec.
Rat sqrt_lower(const Rat& q, unsigned prec);
Rat sqrt_upper(const Rat& q, unsigned prec);

}  // namespace ccb
