#pragma once

#include "ccb/fixture.hpp"
#include "ccb/presentations.hpp"

namespace ccb {

// Candidate tuple for the ray conditions (1)-(8). The chain stands for
// H_ell (kept decoded), u for the code J_u absorbing the noise part.
struct RayTuple {
    unsigned long n = 0, k = 0, m = 0, p = 0;
    FormalChain chain;
    SetCode u;
};

// Candidate tuple for the line conditions (1)-(10).
struct LineTuple {
    unsigned long n = 0, k = 0, m = 0, p = 0, q = 0, e = 0;
    FormalChain chain;
    SetCode u;
};

// A certified tuple plus everything needed to replay the checks.
struct Witness {
    bool line = false;
    unsigned long n = 0, k = 0, m = 0, p = 0, q = 0, e = 0;
    FormalChain chain;
    SetCode u;
    unsigned fuel = 0;           // oracle fuel at certification
    unsigned long stage = 0;     // dovetail stage that produced the tuple
    std::vector<SetCode> links;  // the certified segment H^{0<=p} / H^{p<=q}
};

// Ray conditions: (1) H_ell formal chain; (2) J_u, H_ell formally
// disjoint; (3) f(0) in J_{(ell)_0}; (4) S cap closed B(a,n) inside
// union H^{0<=p} cup J_u; (5) likewise with m and the full chain;
// (6) H^{0<=p} formally contained in B(a,m); (7) p < bar(ell), m >= 1;
// (8) fmesh < 2^-k. Formal conditions exactly, oracle/point conditions
// at the given fuel; monotone in fuel.
SemiDec ray_certify(const RayTuple& t, const PresentedSet& S,
                    const ComputablePointSeq& endpoint, const Point& a,
                    unsigned fuel);

// Line conditions: (1) formal chain; (2) chain vs J_u formally disjoint;
// (3) S cap closed B(a,n) inside union H^{p<=q} cup J_u; (4) likewise with
// m and the full chain; (5) H^{p<=q} formally contained in B(a,m);
// (6) p < e < q < bar(ell), m >= 1; (7) fmesh < 2^-(k+k0+3); (8) I_A vs
// H^{e<=bar} formally disjoint; (9) I_B vs H^{0<=e}; (10) I_C vs J_u.
SemiDec line_certify(const LineTuple& t, const PresentedSet& S,
                     const AnchorHint& hint, unsigned fuel);

// Rational anchor with d(a, f(0)) < 1: endpoint to precision 2^-2,
// snapped to the 1/4 grid.
Point anchor_from_endpoint(const ComputablePointSeq& endpoint);

// Stage-s candidate generation: dyadic-grid chains threaded along the
// oracle's not-certified-empty cells (BFS levels become links), u from a
// coarse dyadic cover of the leftover regions. Deterministic.
std::vector<RayTuple> propose_ray_candidates(const PresentedSet& S,
                                             const ComputablePointSeq& endpoint,
                                             const Point& a, unsigned long n,
                                             unsigned long k,
                                             unsigned long stage,
                                             unsigned fuel);
std::vector<LineTuple> propose_line_candidates(const PresentedSet& S,
                                               const AnchorHint& hint,
                                               unsigned long n, unsigned long k,
                                               unsigned long stage,
                                               unsigned fuel);

// Raw-numeral candidates (every tuple component <= stage), the paper's
// enumerate-all-of-N reading; only for tiny smoke tests.
std::vector<RayTuple> naive_ray_candidates(unsigned long n, unsigned long k,
                                           unsigned long stage);

struct SearchConfig {
    unsigned long step_cap = 64;  // dovetail steps before giving up
    unsigned workers = 1;         // parallel tuple evaluation; unobservable
    bool naive = false;           // raw-numeral candidates instead of dyadic
};

// Dovetails (stage, fuel) = unpair(t) in canonical order and returns the
// first certified Witness; deterministic for any worker count.
// Throws "search budget exhausted" past the step cap.
// With workers > 1 the presentation's callbacks must be thread-safe.
Witness ray_search(const PresentedSet& S, const ComputablePointSeq& endpoint,
                   unsigned long n, unsigned long k,
                   const SearchConfig& cfg = {});
Witness line_search(const PresentedSet& S, const AnchorHint& hint,
                    unsigned long n, unsigned long k,
                    const SearchConfig& cfg = {});

}  // namespace ccb
