#pragma once

#include <functional>
#include <set>

#include "ccb/formal.hpp"
#include "ccb/geometry.hpp"

namespace ccb {

// Monotone fuel-bounded semi-decision: Yes is final, Unknown may improve
// with more fuel.
enum class SemiDec { Yes, Unknown };

// Oracle presentation of a closed set S: a fuel-bounded semi-decider for
// "closed I_i intersected with S is contained in J_j" and its anchored
// variant over closed balls B(a,n). Both must be monotone in fuel, sound,
// and complete in the limit.
struct PresentedSet {
    std::function<SemiDec(const BallIndex&, const SetCode&, unsigned)>
        covers_query;
    std::function<SemiDec(const Point&, unsigned long, const SetCode&, unsigned)>
        ball_anchor_query;
    bool nonempty_hint = true;
};

inline SemiDec covers(const PresentedSet& S, const BallIndex& i,
                      const SetCode& j, unsigned fuel) {
    return S.covers_query(i, j, fuel);
}

// Yes iff some witness code j <= fuel has covers(i,j) = Yes and J_j
// formally disjoint from I_i (which forces the intersection empty).
SemiDec intersect_empty(const PresentedSet& S, const BallIndex& i,
                        unsigned fuel);

// Dyadic-subdivision semi-decider: every sub-box (depth <= fuel) of the
// first ball's bounding box that meets all the closed `musts` balls must
// lie strictly inside some member ball of j.
SemiDec boxes_in_code(const std::vector<Ball>& musts, const SetCode& j,
                      unsigned fuel);

// Semi-decides closure(I_i) subset of J_j by subdivision.
SemiDec closed_ball_in_code(const BallIndex& i, const SetCode& j,
                            unsigned fuel);

// Co-c.e. presentation: total enumeration of balls exhausting the complement.
struct CoCePresentation {
    std::function<BallIndex(const Nat&)> complement_enum;
};

PresentedSet from_coce(CoCePresentation P);

// Semi-computable-compact presentation: cov enumerates exactly the codes j
// with S subset of J_j (S compact).
PresentedSet from_semicompact(std::function<SetCode(const Nat&)> cov,
                              bool nonempty = true);

// Exact presentation of a finite set of rational points (e.g. the
// boundary of a compact 1-manifold fixture); fuel is ignored.
PresentedSet finite_point_presentation(std::vector<Point> pts);

// A point given by fast-converging rational approximations:
// d(approx(k), x) < 2^-k.
struct ComputablePointSeq {
    std::function<Point(unsigned)> approx;
};

inline ComputablePointSeq constant_point(Point p) {
    return ComputablePointSeq{[p](unsigned) { return p; }};
}

// Yes iff some member ball provably contains the point at some
// approximation stage s <= fuel: d(approx(s), center) + 2^-s < radius.
SemiDec point_in_code(const ComputablePointSeq& x, const SetCode& j,
                      unsigned fuel);

// Pull-based deterministic stream of balls certified disjoint from S,
// in canonical dovetail order over (index, fuel).
class ComplementEnum {
  public:
    explicit ComplementEnum(PresentedSet S) : S_(std::move(S)) {}

    // Blocks until the next emission; deterministic.
    BallIndex next();

  private:
    PresentedSet S_;
    Nat t_ = 0;
    std::set<Nat> emitted_;
};

// For a singleton S = {x} with x in closed B(a,n): a point within 2^-k of
// x. Does not terminate if S is not a singleton inside the anchor.
Point point_from_singleton(const PresentedSet& S, const Point& a,
                           unsigned long n, unsigned k);

}  // namespace ccb
