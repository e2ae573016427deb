#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccb/ambient.hpp"

using namespace ccb;

TEST_CASE("cantor pairing round trips") {
    CHECK(pair(0, 0) == 0);
    CHECK(pair(0, 5) == 20);
    CHECK(pair(1, 8) == 53);
    for (unsigned long z = 0; z < 5000; ++z) {
        auto [a, b] = unpair(Nat(z));
        CHECK(pair(a, b) == z);
    }
}

TEST_CASE("rational enumeration") {
    CHECK(rat_enum(0) == 0);
    CHECK(rat_enum(1) == 1);   // k=1: m=0, (0,0) -> +1/1
    CHECK(rat_enum(2) == -1);  // k=2: m=0 -> -1/1
    for (unsigned long k = 0; k < 2000; ++k) {
        Rat q = rat_enum(k);
        CHECK(rat_enum(rat_enum_index(q)) == q);
    }
    CHECK(qpos_enum(0) == 1);
    CHECK(qpos_enum(2) == rat(1, 2));
    for (unsigned long k = 0; k < 2000; ++k) {
        Rat q = qpos_enum(k);
        CHECK(q > 0);
        CHECK(qpos_enum(qpos_enum_index(q)) == q);
    }
}

TEST_CASE("alpha is a point enumeration with canonical preimages") {
    CHECK(alpha_point(0) == Point(rat(0), rat(0)));
    for (unsigned long m = 0; m < 2000; ++m) {
        Point p = alpha_point(m);
        REQUIRE(p.dim() == 2);
        CHECK(alpha_point(alpha_index(p)) == p);
    }
}

TEST_CASE("ball decoding") {
    Ball b0 = decode_ball(BallIndex(0));
    CHECK(b0.center == Point(rat(0), rat(0)));
    CHECK(b0.radius == 1);

    Ball b = decode_ball(BallIndex(pair(0, 2)));
    CHECK(b.center == Point(rat(0), rat(0)));
    CHECK(b.radius == rat(1, 2));

    for (unsigned long i = 0; i < 2000; ++i) {
        Ball x = decode_ball(BallIndex(i));
        CHECK(x.radius > 0);
        BallIndex back = ball_index(x.center, x.radius);
        Ball y = decode_ball(back);
        CHECK(y.center == x.center);
        CHECK(y.radius == x.radius);
    }
}

TEST_CASE("sequence codes") {
    CHECK(encode_seq({Nat(5)}) == 20);
    SetCode j(Nat(20));
    REQUIRE(j.length() == 1);
    CHECK(j.entries()[0] == 5);
    CHECK(j.bar() == 0);

    Nat c = encode_seq({Nat(1), Nat(2)});
    CHECK(c == 53);
    SetCode j2(c);
    REQUIRE(j2.length() == 2);
    CHECK(j2.entries()[0] == 1);
    CHECK(j2.entries()[1] == 2);

    for (unsigned long v = 0; v <= 10000; ++v) {
        SetCode s((Nat(v)));
        CHECK(s.code() == v);
    }
}

TEST_CASE("encode_finite_set is canonical") {
    CHECK(encode_finite_set({Nat(5)}).code() == 20);
    SetCode j = encode_finite_set({Nat(2), Nat(1)});
    REQUIRE(j.length() == 2);
    CHECK(j.entries()[0] == 1);
    CHECK(j.entries()[1] == 2);
    CHECK_THROWS_WITH(encode_finite_set({}), "empty code forbidden");

    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        std::vector<Nat> s;
        int n = 1 + rng() % 6;
        for (int i = 0; i < n; ++i) s.push_back(Nat(rng() % 51));
        SetCode code = encode_finite_set(s);
        std::vector<Nat> back = code.entry_set();
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        CHECK(back == s);
    }
}

TEST_CASE("union_code matches pointwise membership") {
    // l codes the sequence (j1, j2) of set codes.
    SetCode j1 = encode_finite_set({Nat(0), Nat(3)});
    SetCode j2 = encode_finite_set({Nat(5), Nat(9)});
    SetCode l(std::vector<Nat>{j1.code(), j2.code()});

    SetCode u0 = union_code(l, 0, 0);
    CHECK(u0.entry_set() == j1.entry_set());

    SetCode u = union_code(l, 0, 1);
    std::vector<Nat> want{Nat(0), Nat(3), Nat(5), Nat(9)};
    CHECK(u.entry_set() == want);

    CHECK_THROWS_WITH(union_code(l, 1, 0), "empty/invalid segment");
    CHECK_THROWS_WITH(union_code(l, 0, 2), "empty/invalid segment");

    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        Rat x = rat((int)(rng() % 41) - 20, 1 + rng() % 7);
        Rat y = rat((int)(rng() % 41) - 20, 1 + rng() % 7);
        Point p(x, y);
        bool in_union = point_in_J(p, u);
        bool in_some = point_in_J(p, j1) || point_in_J(p, j2);
        CHECK(in_union == in_some);
    }
}

TEST_CASE("sqrt bounds bracket tightly") {
    for (int v = 0; v < 40; ++v) {
        Rat q = rat(v, 3);
        for (unsigned prec : {2u, 8u, 20u}) {
            Rat lo = sqrt_lower(q, prec), hi = sqrt_upper(q, prec);
            CHECK(lo * lo <= q);
            CHECK(hi * hi >= q);
            CHECK(hi - lo <= pow2(-(long)prec) * 2);
        }
    }
    CHECK(sqrt_lower(rat(4), 10) == 2);
    CHECK(sqrt_upper(rat(4), 10) == 2);
}
