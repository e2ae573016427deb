#pragma once

#include "ccb/enumerate.hpp"

namespace ccb {

// Outcome of one independent cross-check. `fail` always carries a
// concrete counterexample that re-running the single exact check
// reproduces; `undecided-at-cap` only arises on enclosure fixtures.
struct Verdict {
    std::string check;    // "cover" | "stream"
    std::string fixture;  // fixture name
    unsigned long n = 0, k = 0, budget = 0;
    std::string result;  // "pass" | "fail" | "undecided-at-cap"
    std::string reason;  // empty on pass
    std::optional<Ball> counterexample;

    bool passed() const { return result == "pass"; }
};

// One JSON line, no trailing newline.
std::string verdict_json(const Verdict& v);

// Exactly re-checks a drawn cover against the fixture geometry: every
// link meets the curve, the links cover curve-part intersect closed
// B(a,n), every link is below the mesh bound (2^-k for rays,
// 2^-(k+k0+3) for lines), and — when the witness carries its full
// chain — the ordering, containment and anchor-disjointness conclusions
// replayed ball-by-ball. Uses only exact rational arithmetic on decoded
// balls; none of the certification code is trusted.
Verdict verify_cover(const CertifiedCover& c, const Fixture& fx);

// Soundness and completeness of an enumeration run: every emission must
// exactly meet the fixture (curve or noise), and every index of
// `witness_list` must appear among the emissions. `budget` is recorded
// for the report only.
Verdict verify_stream(const std::vector<BallIndex>& emissions,
                      const Fixture& fx,
                      const std::vector<BallIndex>& witness_list,
                      unsigned long budget);

// All canonical indices below `limit` whose ball still meets the curve
// part after shrinking its radius by `slack` (noise excluded). These are
// the committed completeness targets for enumeration runs.
std::vector<BallIndex> slack_witness_list(const Fixture& fx,
                                          unsigned long limit = 5000,
                                          const Rat& slack = rat(1, 8));

// --- fault injection (acceptance harness) -------------------------------

// Copy of `c` with every ball of one link translated by `offset`.
CertifiedCover translate_link(CertifiedCover c, std::size_t link,
                              const Point& offset);

// Copy of `c` with one link removed.
CertifiedCover drop_link(CertifiedCover c, std::size_t link);

}  // namespace ccb
