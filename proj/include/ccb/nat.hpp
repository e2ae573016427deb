#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccb {

// Natural numbers are arbitrary-precision integers (always >= 0 here).
using Nat = mpz_class;

// Cantor pairing pi(a,b) = (a+b)(a+b+1)/2 + b and its inverse.
inline Nat pair(const Nat& a, const Nat& b) {
    Nat s = a + b;
    return s * (s + 1) / 2 + b;
}

inline std::pair<Nat, Nat> unpair(const Nat& z) {
    // w = floor((sqrt(8z+1)-1)/2), then b = z - w(w+1)/2, a = w - b.
    Nat d = 8 * z + 1;
    Nat r = sqrt(d);
    Nat w = (r - 1) / 2;
    Nat t = w * (w + 1) / 2;
    Nat b = z - t;
    Nat a = w - b;
    return {a, b};
}

inline Nat nat_of(unsigned long v) { return Nat(v); }

inline std::string nat_str(const Nat& n) { return n.get_str(); }

inline Nat nat_parse(const std::string& s) {
    Nat n;
    if (n.set_str(s, 10) != 0 || n < 0)
        throw std::invalid_argument("not a natural number: " + s);
    return n;
}

}  // namespace ccb
