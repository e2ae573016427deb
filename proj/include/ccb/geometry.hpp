#pragma once

#include <optional>
#include <vector>

#include "ccb/algebra.hpp"
#include "ccb/rational.hpp"

namespace ccb {

// Quadratic A t^2 + B t + C with exact sign evaluation.
struct Quad {
    Rat A, B, C;

    int sign_at(const Rat& t) const { return sgn(Rat(A * t * t + B * t + C)); }
    int sign_at(const AlgNum& t) const { return quad_sign_at(A, B, C, t); }
    std::vector<AlgNum> roots() const { return quad_roots(A, B, C); }
};

// A curve piece with a rational parameterization on [lo, hi] (hi absent
// for an infinite segment tail):
//   seg: f(t) = p0 + t (p1 - p0)
//   arc: f(t) = center + (sx R (1-t^2), 2 R t) / (1+t^2), |t| <= 1
// The arc chart has its pole at center + (-sx R, 0), which a |t| <= 1 arc
// never reaches; circles are pre-split into quadrant arcs.
struct CurvePiece {
    enum class Kind { seg, arc };
    Kind kind = Kind::seg;

    Point p0, p1;  // seg
    Point center;  // arc
    Rat R;
    int sx = 1;

    Rat lo;
    std::optional<Rat> hi;  // absent: [lo, infinity)

    Rat margin;  // > 0: enclosure piece, decisions keep this slack
    std::size_t component = 0;

    bool unbounded() const { return !hi.has_value(); }
    Point at(const Rat& t) const;

    // q with q(t) < 0 iff f(t) lies in the open ball B(c,r) (<= 0: closed).
    Quad ball_quad(const Point& c, const Rat& r) const;

    // Exact on-piece test for a rational point; returns its parameter.
    std::optional<Rat> param_of(const Point& x) const;

    bool param_in_range(const AlgNum& t) const;
};

CurvePiece make_seg(Point a, Point b);               // t in [0,1]
CurvePiece make_ray_tail(Point from, Point dir);     // t in [0,inf)
// Arc in the given chart; t0 < t1, both in [-1,1].
CurvePiece make_arc(Point center, Rat R, int sx, Rat t0, Rat t1);
// A full circle as four quadrant arcs.
std::vector<CurvePiece> circle_pieces(const Point& center, const Rat& R);

// exists t in piece range (clipped to [lo,hi] if given) with q(t) < 0
// (strict) or <= 0.
bool quad_negative_somewhere(const Quad& q, const CurvePiece& pc, bool strict);
// q(t) > 0 for all t in the piece range.
bool quad_positive_everywhere(const Quad& q, const CurvePiece& pc);

// Does the piece meet the ball (open or closed)? Exact.
bool piece_meets_ball(const CurvePiece& pc, const Point& c, const Rat& r,
                      bool closed);
// Every point of the piece at distance > bound from c? Exact (bound >= 0).
bool piece_dist_gt(const CurvePiece& pc, const Point& c, const Rat& bound);

// Candidate-point cover decision on one piece. Looks for a parameter in
// [lo,hi] (intersected with the piece range) satisfying constraint <= 0
// (if given) but no cover < 0. Returns such a parameter if one exists;
// nullopt means the constrained piece portion is covered.
struct CoverQuery {
    const CurvePiece* piece = nullptr;
    std::optional<Rat> lo, hi;          // extra clipping of the piece range
    std::optional<Quad> constraint;     // membership: constraint(t) <= 0
    std::vector<Quad> covers;           // covered: some cover(t) < 0
};
std::optional<AlgNum> uncovered_param(const CoverQuery& q);

// --- Axis-aligned boxes (for 2-D subdivision deciders) ------------------

struct Box {
    std::vector<Rat> lo, hi;

    std::size_t dim() const { return lo.size(); }
};

Box bounding_box(const Point& c, const Rat& r);
std::vector<Box> split_box(const Box& b);  // 2^n halves
// min_{x in box} d(x,c) <= r (closed ball meets box)? Exact.
bool box_meets_closed_ball(const Box& b, const Point& c, const Rat& r);
// max corner distance < r (box strictly inside the open ball)? Exact.
bool box_inside_open_ball(const Box& b, const Point& c, const Rat& r);

}  // namespace ccb
