#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ccb/formal.hpp"
#include "ccb/geometry.hpp"
#include "ccb/presentations.hpp"

namespace ccb {

// A closed noise ball of the fixture's F part.
struct NoiseBall {
    Point center;
    Rat radius;
};

// Exact anchor data for line fixtures: balls around f(-delta), f(delta),
// f(0), with 2^-k0 separating them from the wrong half-curve / from F.
struct AnchorHint {
    Point a;
    Rat delta;
    unsigned k0 = 0;
    Ball A, B, C;
};

struct Component {
    enum class Type { polyline, circle };
    enum class Mode { ray, line, segment, closed };

    Type type = Type::polyline;
    Mode mode = Mode::segment;

    std::vector<Point> vertices;        // polyline
    std::optional<Point> head, tail;    // infinite directions (line/ray)
    Point center;                       // circle
    Rat radius;
    Rat margin;  // > 0: enclosure component, decisions keep this slack
};

struct Fixture {
    std::string name, kind;
    std::vector<Component> components;
    std::vector<NoiseBall> noise;
    std::optional<AnchorHint> hint;

    std::vector<CurvePiece> pieces;  // compiled; piece.component set

    const Component& primary() const { return components.front(); }
    Point ray_endpoint() const;  // primary polyline's first vertex
};

// JSON I/O; all numbers exact "p/q" strings; load validates noise
// disjointness and (when present) the anchor hint, hard-erroring on both.
Fixture load_fixture(const std::string& path);
Fixture fixture_from_json(const std::string& text);
std::string fixture_to_json(const Fixture& fx);

// --- Exact decisions ----------------------------------------------------

// Does the open (closed) ball B(c,r) meet the fixture? `component` < 0
// means all components; noise balls are included only when asked.
// Enclosure components throw "undecided at cap" inside their margin.
bool exact_intersects(const Fixture& fx, const Point& c, const Rat& r,
                      bool closed, long component = -1,
                      bool include_noise = true);

// Is the rational point on the fixture curve (or in its noise)?
bool exact_point_on(const Fixture& fx, const Point& x,
                    bool include_noise = true);

// curve-part(fixture) intersect closed B(a,n) subset of the union of the
// open balls? Exact for exact components; enclosure components decide
// conservatively and throw "undecided at cap" inside the margin.
// On failure an uncovered curve point (to 2^-20) lands in *counterexample.
bool exact_cover_check(const Fixture& fx, const Point& a, const Rat& n,
                       const std::vector<Ball>& balls, long component = -1,
                       Point* counterexample = nullptr);

// Oracle presentation of curve-union-noise per the presentation contract.
PresentedSet fixture_presentation(const Fixture& fx);

// --- Component parameterization and the constructive chain builder -----

// Piecewise-rational parameterization of one component. Forward pieces
// cover s in [i, i+1] (last one [m-1, inf) for an infinite tail); a line's
// other half is s <= 0 via `back`; circles wrap at s = 4.
struct ComponentParam {
    std::vector<CurvePiece> fwd;
    std::vector<int> dir;  // +-1 per fwd piece; empty means all forward
    std::optional<CurvePiece> back;
    bool circular = false;
    Rat margin;

    Point at(const Rat& s) const;
    // (piece, local lo, local hi) fragments covering [s0, s1], s0 <= s1.
    std::vector<std::tuple<const CurvePiece*, Rat, Rat>> portions(
        const Rat& s0, const Rat& s1) const;
    // Rational upper bound on diam f([s0,s1]).
    Rat diam_upper(const Rat& s0, const Rat& s1) const;
};

ComponentParam component_param(const Fixture& fx, std::size_t comp);

// Constructive chain cover of f([s0,s1]) at mesh epsilon: every link
// fdiam < epsilon, all balls meet their subarc and are centered on it,
// each subarc covered by its link, non-adjacent links formally disjoint.
// Throws if epsilon <= 0 or the arc self-approaches.
FormalChain chain_for_arc(const ComponentParam& f, const Rat& s0,
                          const Rat& s1, const Rat& epsilon);

// Cover enumerator for a compact component (segment polyline or circle):
// cov(k) is a code of balls at scale ~2^-min(k,cap) covering it, every
// member centered on the curve. Suitable for from_semicompact.
std::function<SetCode(const Nat&)> fixture_cover_enum(const Fixture& fx,
                                                      std::size_t comp,
                                                      unsigned cap = 8);

}  // namespace ccb
