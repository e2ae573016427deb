#pragma once

#include <vector>

#include "ccb/ambient.hpp"

namespace ccb {

// --- Exact signs of radical expressions ---------------------------------

// Sign of a + b*sqrt(d), d >= 0. Decided by sign analysis and one squaring.
int radical_sign(const Rat& a, const Rat& b, const Rat& d);

// Sign of a + b*sqrt(u) + c*sqrt(v), u,v >= 0. Two squarings.
int radical_sign2(const Rat& a, const Rat& b, const Rat& u, const Rat& c,
                  const Rat& v);

// sqrt(radicand) + offset, compared exactly against rationals.
struct DistanceExpr {
    Rat radicand;  // nonnegative
    Rat offset;

    // sign of (sqrt(radicand) + offset - t)
    int cmp(const Rat& t) const {
        return radical_sign(offset - t, Rat(1), radicand);
    }
    bool lt(const Rat& t) const { return cmp(t) < 0; }
    bool gt(const Rat& t) const { return cmp(t) > 0; }
};

// d(a,b) as a DistanceExpr with zero offset.
inline DistanceExpr dist_expr(const Point& a, const Point& b) {
    return DistanceExpr{dist2(a, b), Rat(0)};
}

// --- Formal predicates (all exact, total, fuel-free) --------------------

// fdiam(j) < t, where fdiam = max pairwise center distance + 2 max radius.
bool fdiam_lt(const SetCode& j, const Rat& t);

// Outward-rounded rational upper bound of fdiam(j), error < 2^-prec.
Rat fdiam_upper(const SetCode& j, unsigned prec);

// Ball-ball: d(center,center') > r + r', strictly.
bool formally_disjoint(const Ball& a, const Ball& b);
// Ball vs every member of a code.
bool formally_disjoint(const Ball& a, const SetCode& j);
// Every member pair.
bool formally_disjoint(const SetCode& a, const SetCode& b);

// I_ball formally contained in B(a,m): d(center, a) + r < m.
bool formally_contained(const Ball& ball, const Point& a, const Rat& m);
// Every member of j formally contained in B(a,m). Errors on m <= 0.
bool formally_contained(const SetCode& j, const Point& a, const Rat& m);

// --- Formal chains ------------------------------------------------------

// H_l as a sequence of rational open sets; kept decoded (see SetCode).
struct FormalChain {
    std::vector<SetCode> links;

    FormalChain() = default;
    explicit FormalChain(std::vector<SetCode> ls) : links(std::move(ls)) {}
    // From a chain code: entries of l are set codes.
    explicit FormalChain(const SetCode& l);

    std::size_t size() const { return links.size(); }
    std::size_t bar() const { return links.size() - 1; }

    // The chain code l with ((l)_0,...,(l)_bar) = the link codes.
    // Exponential in length; call only for short chains.
    SetCode as_code() const;

    // Union of the member sets of links p..q as one code.
    SetCode union_range(std::size_t p, std::size_t q) const;
};

// Non-adjacent links pairwise formally disjoint. One- and two-link
// sequences are vacuously chains.
bool is_formal_chain(const FormalChain& h);
bool is_formal_chain(const SetCode& l);

// fmesh(l) < t: every link has fdiam < t.
bool fmesh_lt(const FormalChain& h, const Rat& t);
bool fmesh_lt(const SetCode& l, const Rat& t);

// J_j and H_l formally disjoint (every link).
bool formally_disjoint(const SetCode& j, const FormalChain& h);
// I_ball and H_l^{p<=q} formally disjoint.
bool formally_disjoint(const Ball& b, const FormalChain& h, std::size_t p,
                       std::size_t q);

// H^{p<=q} formally contained in B(a,m).
bool chain_formally_contained(const FormalChain& h, std::size_t p,
                              std::size_t q, const Point& a, const Rat& m);

}  // namespace ccb
