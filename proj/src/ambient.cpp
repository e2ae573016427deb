#include "ccb/ambient.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccb {

namespace {
std::size_t g_dim = 2;
}

std::size_t ambient_dim() { return g_dim; }

void set_ambient_dim(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ambient dimension must be >= 1");
    g_dim = n;
}

Rat sqrt_lower(const Rat& q, unsigned prec) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    // floor(sqrt(num*den * 4^prec)) / (den * 2^prec)
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class scaled = num * den;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2ul * prec);
    mpz_class r = sqrt(scaled);
    mpz_class d = den;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), prec);
    Rat out(r, d);
    out.canonicalize();
    return out;
}

Rat sqrt_upper(const Rat& q, unsigned prec) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class scaled = num * den;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2ul * prec);
    mpz_class r = sqrt(scaled);
    if (r * r != scaled) r += 1;
    mpz_class d = den;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), prec);
    Rat out(r, d);
    out.canonicalize();
    return out;
}

Rat rat_enum(const Nat& k) {
    if (k == 0) return Rat(0);
    Nat m = (k - 1) / 2;
    auto [a, b] = unpair(m);
    Rat q = rat_of(a + 1, b + 1);
    bool negative = (k % 2 == 0);
    return negative ? Rat(-q) : q;
}

Nat rat_enum_index(const Rat& q) {
    if (q == 0) return Nat(0);
    Nat num = abs(q.get_num());
    Nat den = q.get_den();
    Nat m = pair(num - 1, den - 1);
    return q > 0 ? 2 * m + 1 : 2 * m + 2;
}

Rat qpos_enum(const Nat& k) {
    auto [a, b] = unpair(k);
    return rat_of(a + 1, b + 1);
}

Nat qpos_enum_index(const Rat& q) {
    if (q <= 0) throw std::invalid_argument("qpos index needs a positive rational");
    return pair(Nat(q.get_num() - 1), Nat(q.get_den() - 1));
}

Point alpha_point(const Nat& m) {
    std::size_t n = ambient_dim();
    std::vector<Rat> coords;
    coords.reserve(n);
    Nat rest = m;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        auto [u, v] = unpair(rest);
        coords.push_back(rat_enum(u));
        rest = v;
    }
    coords.push_back(rat_enum(rest));
    return Point(std::move(coords));
}

Nat alpha_index(const Point& p) {
    if (p.dim() != ambient_dim())
        throw std::invalid_argument("point dimension mismatch");
    Nat idx = rat_enum_index(p[p.dim() - 1]);
    for (std::size_t c = p.dim() - 1; c-- > 0;)
        idx = pair(rat_enum_index(p[c]), idx);
    return idx;
}

Ball decode_ball(const BallIndex& i) {
    auto [t1, t2] = unpair(i.index);
    return Ball{alpha_point(t1), qpos_enum(t2)};
}

BallIndex ball_index(const Point& center, const Rat& radius) {
    return BallIndex(pair(alpha_index(center), qpos_enum_index(radius)));
}

SetCode::SetCode(const Nat& code) : entries_(decode_seq(code)) {}

SetCode::SetCode(std::vector<Nat> entries) : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("empty code forbidden");
}

std::vector<Nat> SetCode::entry_set() const {
    std::vector<Nat> s = entries_;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Nat SetCode::code() const { return encode_seq(entries_); }

Nat encode_seq(const std::vector<Nat>& entries) {
    if (entries.empty()) throw std::invalid_argument("empty code forbidden");
    Nat fold = entries.back();
    for (std::size_t i = entries.size() - 1; i-- > 0;)
        fold = pair(entries[i], fold);
    return pair(Nat(entries.size() - 1), fold);
}

std::vector<Nat> decode_seq(const Nat& code) {
    auto [n, fold] = unpair(code);
    if (n.fits_ulong_p() == 0)
        throw std::invalid_argument("sequence code too long to decode");
    unsigned long len = n.get_ui() + 1;
    std::vector<Nat> entries;
    entries.reserve(len);
    Nat rest = fold;
    for (unsigned long i = 0; i + 1 < len; ++i) {
        auto [head, tail] = unpair(rest);
        entries.push_back(head);
        rest = tail;
    }
    entries.push_back(rest);
    return entries;
}

SetCode encode_finite_set(const std::vector<Nat>& members) {
    if (members.empty()) throw std::invalid_argument("empty code forbidden");
    std::vector<Nat> s = members;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return SetCode(std::move(s));
}

std::vector<Ball> member_balls(const SetCode& j) {
    std::vector<Ball> out;
    for (const Nat& i : j.entry_set()) out.push_back(decode_ball(BallIndex(i)));
    return out;
}

SetCode union_code(const SetCode& l, std::size_t p, std::size_t q) {
    if (p > q || q > l.bar())
        throw std::invalid_argument("empty/invalid segment");
    std::vector<Nat> members;
    for (std::size_t i = p; i <= q; ++i) {
        SetCode link(l.entries()[i]);
        for (const Nat& e : link.entry_set()) members.push_back(e);
    }
    return encode_finite_set(members);
}

bool point_in_J(const Point& x, const SetCode& j) {
    for (const Ball& b : member_balls(j))
        if (dist2(x, b.center) < b.radius * b.radius) return true;
    return false;
}

}  // namespace ccb
