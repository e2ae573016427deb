#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccb/algebra.hpp"

using namespace ccb;

TEST_CASE("quad_roots") {
    auto r = quad_roots(rat(1), rat(0), rat(-2));  // x^2 = 2
    REQUIRE(r.size() == 2);
    CHECK(r[0].cmp(rat(0)) < 0);
    CHECK(r[1].cmp(rat(0)) > 0);
    CHECK(r[1].cmp(rat(7, 5)) > 0);
    CHECK(r[1].cmp(rat(3, 2)) < 0);
    CHECK(r[0] < r[1]);

    auto dbl = quad_roots(rat(1), rat(-2), rat(1));  // (x-1)^2
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0].cmp(rat(1)) == 0);

    CHECK(quad_roots(rat(1), rat(0), rat(1)).empty());
    auto lin = quad_roots(rat(0), rat(2), rat(-3));
    REQUIRE(lin.size() == 1);
    CHECK(lin[0].cmp(rat(3, 2)) == 0);
    CHECK(quad_roots(rat(0), rat(0), rat(0)).empty());
}

TEST_CASE("roots satisfy the quadratic exactly") {
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        Rat A = rat((int)(rng() % 11) - 5, 1 + rng() % 3);
        Rat B = rat((int)(rng() % 11) - 5, 1 + rng() % 3);
        Rat C = rat((int)(rng() % 11) - 5, 1 + rng() % 3);
        for (const AlgNum& x : quad_roots(A, B, C)) {
            CHECK(quad_sign_at(A, B, C, x) == 0);
            // the sign flips (or stays, at a double root) across the root
            Rat lo = x.lower(20) - rat(1, 1000);
            Rat hi = x.upper(20) + rat(1, 1000);
            int sl = quad_sign_at(A, B, C, AlgNum(lo));
            int sh = quad_sign_at(A, B, C, AlgNum(hi));
            if (quad_roots(A, B, C).size() == 2) CHECK(sl * sh <= 0);
        }
    }
}

TEST_CASE("cross-field comparison") {
    AlgNum s2(rat(0), rat(1), rat(2));
    AlgNum s3(rat(0), rat(1), rat(3));
    CHECK(s2 < s3);
    CHECK(s2.cmp(s2) == 0);
    AlgNum one_plus_s2(rat(1), rat(1), rat(2));
    AlgNum s6(rat(0), rat(1), rat(6));  // 2.449 > 2.414
    CHECK(one_plus_s2 < s6);
    AlgNum s8(rat(0), rat(1), rat(8));
    AlgNum two_s2(rat(0), rat(2), rat(2));
    CHECK(s8 == two_s2);
}

TEST_CASE("bounds and rational_between") {
    AlgNum s2(rat(0), rat(1), rat(2));
    for (unsigned p : {1u, 5u, 30u}) {
        Rat lo = s2.lower(p), hi = s2.upper(p);
        CHECK(lo * lo < 2);
        CHECK(hi * hi > 2);
        CHECK(hi - lo <= pow2(-(long)p) * 2);
    }
    Rat m = rational_between(s2, AlgNum(rat(3, 2)));
    CHECK(m * m > 2);
    CHECK(m < rat(3, 2));

    Rat m2 = rational_between(AlgNum(rat(0), rat(-1), rat(2)), s2);
    CHECK(m2 * m2 < 2);
    CHECK_THROWS(rational_between(s2, s2));

    std::mt19937 rng(9);
    for (int t = 0; t < 100; ++t) {
        AlgNum x(rat((int)(rng() % 9) - 4), rat((int)(rng() % 7) - 3), rat(rng() % 8));
        AlgNum y(rat((int)(rng() % 9) - 4), rat((int)(rng() % 7) - 3), rat(rng() % 8));
        int c = x.cmp(y);
        if (c == 0) continue;
        const AlgNum& a = c < 0 ? x : y;
        const AlgNum& b = c < 0 ? y : x;
        Rat mid = rational_between(a, b);
        CHECK(a.cmp(mid) < 0);
        CHECK(b.cmp(mid) > 0);
    }
}
