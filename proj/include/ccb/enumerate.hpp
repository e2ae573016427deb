#pragma once

#include "ccb/chain.hpp"

namespace ccb {

// A drawn cover: the certified chain segment whose links all meet the
// target set and jointly cover set intersect closed B(a,n), each link
// below the mesh bound for k.
struct CertifiedCover {
    Point a;
    unsigned long n = 0, k = 0;
    std::vector<SetCode> links;
    Witness witness;
};

CertifiedCover draw_ray(const PresentedSet& S,
                        const ComputablePointSeq& endpoint, unsigned long n,
                        unsigned long k, const SearchConfig& cfg = {});
CertifiedCover draw_line(const PresentedSet& S, const AnchorHint& hint,
                         unsigned long n, unsigned long k,
                         const SearchConfig& cfg = {});

// Deterministic stream of ball indices provably meeting the target set.
// Round r runs the witness search for (n,k) = unpair(r) and extends the
// scanned index range by one chunk; index i is emitted once some witness
// link is formally contained in I_i. Sound at every budget; every index
// whose ball strictly meets the set is emitted in the limit.
class IntersectStream {
  public:
    using SearchFn =
        std::function<Witness(unsigned long n, unsigned long k)>;

    explicit IntersectStream(SearchFn search, std::size_t chunk = 5000);
    IntersectStream(IntersectStream&&) noexcept;
    IntersectStream& operator=(IntersectStream&&) noexcept;
    ~IntersectStream();

    // Next emission, advancing rounds as needed but never past round_cap
    // total rounds; nullopt when the cap is reached without a new emission.
    std::optional<BallIndex> next(unsigned long round_cap);

    unsigned long rounds_run() const { return round_; }

  private:
    struct Digest;  // per-witness spatial index over its links

    void run_round();

    SearchFn search_;
    std::size_t chunk_;
    unsigned long round_ = 0;
    std::vector<Digest> digests_;
    struct Pending {
        Nat index;
        Ball ball;
    };
    std::vector<Pending> pending_;
    std::set<Nat> emitted_;
    std::vector<BallIndex> queue_;  // discovered, not yet handed out
    std::size_t queue_pos_ = 0;
};

// Stream over a fixture presentation in ray or line mode.
IntersectStream intersect_stream_ray(const PresentedSet& S,
                                     const ComputablePointSeq& endpoint,
                                     const SearchConfig& cfg = {});
IntersectStream intersect_stream_line(const PresentedSet& S,
                                      const AnchorHint& hint,
                                      const SearchConfig& cfg = {});

// Semi-decider for "K subset of J_j" where K is the compact component of
// M covered by the isolating closed balls (which must miss the rest of
// M): Yes iff covers(M, i_t, j) answers Yes for every isolating index.
// Yields a semi-computable-compact presentation of K.
std::function<SemiDec(const SetCode&, unsigned)> compact_component_cover(
    const PresentedSet& M, const std::vector<BallIndex>& isolating);

// With closure(I_isolating) meeting the boundary set in exactly one point
// x, returns a point within 2^-k of x by composing the component cover of
// the boundary presentation with the singleton locator. Does not
// terminate when the precondition fails.
Point boundary_point(const PresentedSet& M, const PresentedSet& boundary,
                     const BallIndex& isolating, unsigned k);

// --- serialization ------------------------------------------------------

// CSV: '#' metadata lines (anchor, n, k, mode), then a header row and one
// row per link ball: link_ordinal, ball_index, center "p/q;p/q",
// radius "p/q".
std::string cover_to_csv(const CertifiedCover& c);
CertifiedCover cover_from_csv(const std::string& text);

// Human-inspection rendering: link balls as circles, plus the fixture
// curve when given.
std::string cover_to_svg(const CertifiedCover& c, const Fixture* fx = nullptr);

}  // namespace ccb
