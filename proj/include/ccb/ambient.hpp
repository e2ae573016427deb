#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ccb/nat.hpp"
#include "ccb/rational.hpp"

namespace ccb {

// Ambient dimension of the Euclidean space R^n the engine works in.
// Global configuration, default 2.
std::size_t ambient_dim();
void set_ambient_dim(std::size_t n);

// --- Fixed enumerations -------------------------------------------------
//
// ratQ:  0 -> 0, 2k+1 -> +(a+1)/(b+1), 2k+2 -> -(a+1)/(b+1), (a,b)=unpair(k).
// qpos:  k -> (a+1)/(b+1), (a,b)=unpair(k); image is the positive rationals.
// alpha: dense sequence in Q^n by iterated unpairing into n ratQ coordinates.

Rat rat_enum(const Nat& k);
Nat rat_enum_index(const Rat& q);  // canonical preimage (lowest terms)

Rat qpos_enum(const Nat& k);
Nat qpos_enum_index(const Rat& q);  // q > 0 required

Point alpha_point(const Nat& m);            // in ambient_dim() coordinates
Nat alpha_index(const Point& p);            // canonical preimage

// --- Ball indices -------------------------------------------------------

// Index of an open/closed rational ball: i decodes via (t1,t2)=unpair(i)
// to center alpha_point(t1) and radius qpos_enum(t2) > 0.
struct BallIndex {
    Nat index;

    BallIndex() : index(0) {}
    explicit BallIndex(Nat i) : index(std::move(i)) {}

    bool operator==(const BallIndex& o) const { return index == o.index; }
    bool operator<(const BallIndex& o) const { return index < o.index; }
};

struct Ball {
    Point center;
    Rat radius;
};

Ball decode_ball(const BallIndex& i);
BallIndex ball_index(const Point& center, const Rat& radius);  // canonical

// --- Sequence / set codes ----------------------------------------------
//
// A code j names the nonempty finite sequence ((j)_0,...,(j)_jbar) via
// j = pair(n, fold) where fold right-folds the entries with pair.
// [j] is the set of entries; J_j is the union of the balls they index.
//
// Folded codes grow exponentially in sequence length, so a SetCode holds
// the decoded sequence and materializes the numeral only on demand.

class SetCode {
  public:
    SetCode() : entries_{Nat(0)} {}
    explicit SetCode(const Nat& code);           // decode
    explicit SetCode(std::vector<Nat> entries);  // must be nonempty

    const std::vector<Nat>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    // overline{j}: last valid position.
    std::size_t bar() const { return entries_.size() - 1; }

    // Set of entries [j], deduplicated and sorted.
    std::vector<Nat> entry_set() const;

    // The numeral for this sequence. Cheap for short sequences only.
    Nat code() const;

    bool operator==(const SetCode& o) const { return entries_ == o.entries_; }

  private:
    std::vector<Nat> entries_;
};

Nat encode_seq(const std::vector<Nat>& entries);
std::vector<Nat> decode_seq(const Nat& code);

// Code with [result] = S (entries in sorted order). Errors on empty S.
SetCode encode_finite_set(const std::vector<Nat>& members);

// Member balls of J_j, in entry order (duplicates removed, sorted).
std::vector<Ball> member_balls(const SetCode& j);

// zeta(l,p,q): a code for the union of the set codes (l)_p .. (l)_q,
// where l is a sequence of set codes (a chain code). Errors unless
// p <= q <= l.bar().
SetCode union_code(const SetCode& l, std::size_t p, std::size_t q);

// Exact membership x in J_j.
bool point_in_J(const Point& x, const SetCode& j);

}  // namespace ccb
