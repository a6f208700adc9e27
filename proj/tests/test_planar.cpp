#include <catch2/catch_amalgamated.hpp>

#include "arcframe/planar.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace arcframe;
using namespace arcframe::planar;

namespace {

// Independent oracle: all fixed-point-free involutions on 2n points, filtered
// for the non-crossing condition, sorted lexicographically.
std::vector<Matching> brute_force_matchings(int n) {
    std::vector<Matching> out;
    std::vector<int> perm(2 * n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> pair(2 * n, -1);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == 2 * n) {
            Matching m{n, pair};
            if (noncrossing_ok(m)) out.push_back(m);
            return;
        }
        if (pair[i] >= 0) {
            self(self, i + 1);
            return;
        }
        for (int j = i + 1; j < 2 * n; ++j) {
            if (pair[j] >= 0) continue;
            pair[i] = j;
            pair[j] = i;
            self(self, i + 1);
            pair[i] = pair[j] = -1;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

long long catalan(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

// Oracle circle count via explicit walk on the two matchings.
int walk_circles(const Matching& a, const Matching& b) {
    std::vector<bool> used(2 * a.n, false);
    int count = 0;
    for (int s = 0; s < 2 * a.n; ++s) {
        if (used[s]) continue;
        ++count;
        int x = s;
        bool use_a = true;
        do {
            used[x] = true;
            x = use_a ? a.pair[x] : b.pair[x];
            use_a = !use_a;
        } while (x != s || !use_a);
    }
    return count;
}

SliceWord cupcap_loop() {
    SliceWord w;
    w.left_pts = 0;
    w.right_pts = 0;
    w.slices = {Slice{SliceKind::Cup, 0, 0}, Slice{SliceKind::Cap, 0, 0}};
    return w;
}

}  // namespace

TEST_CASE("enumerate_matchings small cases") {
    auto m1 = enumerate_matchings(1);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0] == matching_from_pairs(1, {{1, 2}}));

    auto m2 = enumerate_matchings(2);
    REQUIRE(m2.size() == 2);
    CHECK(m2[0] == matching_from_pairs(2, {{1, 2}, {3, 4}}));
    CHECK(m2[1] == matching_from_pairs(2, {{1, 4}, {2, 3}}));

    CHECK(enumerate_matchings(3).size() == 5);
    CHECK(enumerate_matchings(0).size() == 1);
}

TEST_CASE("enumerate_matchings matches brute force and Catalan up to n=7") {
    for (int n = 0; n <= 7; ++n) {
        auto fast = enumerate_matchings(n);
        CHECK((long long)fast.size() == catalan(n));
        if (n <= 5) {
            auto slow = brute_force_matchings(n);
            CHECK(fast == slow);
        }
        for (auto& m : fast) {
            CHECK(involution_ok(m));
            CHECK(noncrossing_ok(m));
        }
        CHECK(std::adjacent_find(fast.begin(), fast.end()) == fast.end());
    }
}

TEST_CASE("circles basics") {
    auto a = matching_from_pairs(2, {{1, 2}, {3, 4}});
    auto b = matching_from_pairs(2, {{1, 4}, {2, 3}});
    CHECK(circles(a, a).size() == 2);
    CHECK(circles(b, a).size() == 1);
    CHECK(circles(b, b).size() == 2);
    Matching empty{0, {}};
    CHECK(circles(empty, empty).size() == 0);

    auto one = circles(b, a);
    REQUIRE(one.size() == 1);
    CHECK(one.circles[0].points == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("circle count properties over all pairs, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto ms = enumerate_matchings(n);
        for (auto& a : ms) {
            CHECK(circles(a, a).size() == n);
            for (auto& b : ms) {
                int k = circles(a, b).size();
                CHECK(k >= 1);
                CHECK(k <= n);
                CHECK(k == circles(b, a).size());
                CHECK(k == walk_circles(a, b));
            }
        }
    }
}

TEST_CASE("circles_with_tangle") {
    auto a = matching_from_pairs(2, {{1, 2}, {3, 4}});
    auto b = matching_from_pairs(2, {{1, 4}, {2, 3}});
    SECTION("identity tangle agrees with circles()") {
        for (auto& x : {a, b})
            for (auto& y : {a, b})
                CHECK(circles_with_tangle(x, identity_word(4), y).size() == circles(x, y).size());
    }
    SECTION("free loop as a (0,0) tangle") {
        Matching empty{0, {}};
        auto cs = circles_with_tangle(empty, cupcap_loop(), empty);
        REQUIRE(cs.size() == 1);
        CHECK(cs.circles[0].points.empty());
    }
    SECTION("cap-cup (2,2) tangle between single-arc matchings") {
        auto u = matching_from_pairs(1, {{1, 2}});
        SliceWord t;
        t.left_pts = 2;
        t.right_pts = 2;
        t.slices = {Slice{SliceKind::Cap, 0, 0}, Slice{SliceKind::Cup, 0, 0}};
        auto cs = circles_with_tangle(u, t, u);
        REQUIRE(cs.size() == 2);
        CHECK(cs.circles[0].points == std::vector<int>{0, 1});
        CHECK(cs.circles[1].points == std::vector<int>{2, 3});
    }
    SECTION("boundary mismatch is rejected") {
        auto u = matching_from_pairs(1, {{1, 2}});
        CHECK_THROWS_AS(circles_with_tangle(u, identity_word(4), a), DomainError);
    }
}

TEST_CASE("compose") {
    SECTION("identity is neutral") {
        SliceWord t;
        t.left_pts = 2;
        t.right_pts = 2;
        t.slices = {Slice{SliceKind::Cap, 0, 0}, Slice{SliceKind::Cup, 0, 0}};
        CHECK(compose(identity_word(2), t) == normalize(t));
        CHECK(compose(t, identity_word(2)) == normalize(t));
    }
    SECTION("cup then cap gives a free loop") {
        SliceWord cup;
        cup.left_pts = 0;
        cup.right_pts = 2;
        cup.slices = {Slice{SliceKind::Cup, 0, 0}};
        SliceWord cap;
        cap.left_pts = 2;
        cap.right_pts = 0;
        cap.slices = {Slice{SliceKind::Cap, 0, 0}};
        auto w = compose(cup, cap);
        CHECK(w.left_pts == 0);
        CHECK(w.right_pts == 0);
        CHECK(w.slices.empty());
        CHECK(w.closed_loops == 1);
    }
    SECTION("two (2,2) factors reproduce the cap-cup word") {
        SliceWord capw;
        capw.left_pts = 2;
        capw.right_pts = 2;
        capw.slices = {Slice{SliceKind::Cap, 0, 0}, Slice{SliceKind::Cup, 0, 0}};
        auto half1 = SliceWord{2, 2, {Slice{SliceKind::Cap, 0, 0}, Slice{SliceKind::Cup, 0, 0}}, 0};
        CHECK(compose(half1, identity_word(2)) == normalize(capw));
    }
    SECTION("boundary mismatch is rejected") {
        CHECK_THROWS_AS(compose(identity_word(2), identity_word(4)), DomainError);
    }
}

TEST_CASE("compose associativity up to normalization on random flat words") {
    std::mt19937 rng(20240817);
    auto random_flat = [&](int left) {
        SliceWord w;
        w.left_pts = left;
        int cur = left;
        int len = (int)(rng() % 6);
        for (int i = 0; i < len; ++i) {
            bool can_cap = cur >= 2;
            bool do_cup = !can_cap || (rng() % 2 == 0);
            if (do_cup) {
                w.slices.push_back(Slice{SliceKind::Cup, (int)(rng() % (cur + 1)), 0});
                cur += 2;
            } else {
                w.slices.push_back(Slice{SliceKind::Cap, (int)(rng() % (cur - 1)), 0});
                cur -= 2;
            }
        }
        w.right_pts = cur;
        return w;
    };
    int tried = 0;
    while (tried < 200) {
        auto a = random_flat(2 * (int)(rng() % 3));
        auto b = random_flat(a.right_pts);
        auto c = random_flat(b.right_pts);
        ++tried;
        auto lhs = normalize(compose(compose(a, b), c));
        auto rhs = normalize(compose(a, compose(b, c)));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("normalize is idempotent and preserves circle data") {
    std::mt19937 rng(7);
    for (int it = 0; it < 100; ++it) {
        SliceWord w;
        w.left_pts = 2 * (int)(rng() % 3);
        int cur = w.left_pts;
        for (int i = 0; i < (int)(rng() % 8); ++i) {
            bool can_cap = cur >= 2;
            if (!can_cap || rng() % 2 == 0) {
                w.slices.push_back(Slice{SliceKind::Cup, (int)(rng() % (cur + 1)), 0});
                cur += 2;
            } else {
                w.slices.push_back(Slice{SliceKind::Cap, (int)(rng() % (cur - 1)), 0});
                cur -= 2;
            }
        }
        w.right_pts = cur;
        auto nw = normalize(w);
        CHECK(normalize(nw) == nw);
        if (w.left_pts == 0 && w.right_pts == 0) continue;
        auto ms_l = enumerate_matchings(w.left_pts / 2);
        auto ms_r = enumerate_matchings(w.right_pts / 2);
        for (auto& a : ms_l)
            for (auto& b : ms_r) CHECK(circles_with_tangle(a, w, b) == circles_with_tangle(a, nw, b));
    }
}

TEST_CASE("resolve") {
    SliceWord one_crossing;
    one_crossing.left_pts = 2;
    one_crossing.right_pts = 2;
    one_crossing.slices = {Slice{SliceKind::Cross, 0, 1}};

    SECTION("no crossings, empty bits") {
        auto t = identity_word(2);
        CHECK(resolve(t, {}) == t);
    }
    SECTION("0-resolution gives the identity tangle") {
        auto r = resolve(one_crossing, {0});
        CHECK(normalize(r) == normalize(identity_word(2)));
    }
    SECTION("1-resolution gives cap then cup") {
        auto r = resolve(one_crossing, {1});
        SliceWord capcup{2, 2, {Slice{SliceKind::Cap, 0, 0}, Slice{SliceKind::Cup, 0, 0}}, 0};
        CHECK(normalize(r) == normalize(capcup));
    }
    SECTION("length mismatch rejected") {
        CHECK_THROWS_AS(resolve(one_crossing, {}), DomainError);
        CHECK_THROWS_AS(resolve(one_crossing, {0, 1}), DomainError);
    }
}

TEST_CASE("slice word validation") {
    SliceWord bad;
    bad.left_pts = 2;
    bad.right_pts = 2;
    bad.slices = {Slice{SliceKind::Cap, 1, 0}};
    CHECK_THROWS_AS(validate(bad), DomainError);

    SliceWord dup;
    dup.left_pts = 4;
    dup.right_pts = 4;
    dup.slices = {Slice{SliceKind::Cross, 0, 1}, Slice{SliceKind::Cross, 1, 1}};
    CHECK_THROWS_AS(validate(dup), DomainError);
}
