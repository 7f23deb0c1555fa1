#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mori/lattice_fan.hpp"

#include <set>

using namespace mori;

TEST_CASE("validate_fan: examples") {
    Fan f = validate_fan({{1, 0}, {1, 2}, {-1, 0}, {-1, -2}});
    CHECK(f.size() == 4);
    auto mults = f.multiplicities();
    for (const auto& m : mults) CHECK(m == 2);

    Fan p2 = fan_p2();
    for (const auto& m : p2.multiplicities()) CHECK(m == 1);
    CHECK(p2.is_smooth());

    CHECK_THROWS_AS(validate_fan({{1, 0}, {-1, 0}}), DomainError);
}

TEST_CASE("validate_fan: sorting and normalization") {
    // unsorted, non-primitive input; first ray fixes the starting point
    Fan f = validate_fan({{2, 0}, {-1, -1}, {0, 3}});
    CHECK(f.ray(0) == IVec2(1, 0));
    CHECK(f.ray(1) == IVec2(0, 1));
    CHECK(f.ray(2) == IVec2(-1, -1));
}

TEST_CASE("validate_fan: error codes") {
    try {
        validate_fan({{1, 0}, {2, 0}, {0, 1}});
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.code() == "duplicate_ray");
    }
    try {
        validate_fan({{1, 0}, {0, 1}, {1, 1}});  // all in one quadrant
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.code() == "not_complete");
    }
    try {
        validate_fan({{1, 0}, {0, 1}, {-1, 0}});  // half plane, det((-1,0),(1,0)) = 0
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.code() == "not_complete");
    }
}

TEST_CASE("every nonzero vector lies in exactly one half-open cone") {
    Fan f = validate_fan({{1, 0}, {1, 2}, {-1, 0}, {-1, -2}});
    // deterministic sweep of directions
    for (long x = -7; x <= 7; ++x) {
        for (long y = -7; y <= 7; ++y) {
            if (x == 0 && y == 0) continue;
            int count = 0;
            IVec2 v(x, y);
            for (int i = 0; i < f.size(); ++i) {
                if (det(f.ray(i), v) >= 0 && det(v, f.ray(f.next(i))) > 0) ++count;
            }
            CHECK(count == 1);
            CHECK(f.cone_containing(v) >= 0);
        }
    }
}

// Independent oracle for the subdivision rule: enumerate all primitive points
// w = alpha u + beta v with alpha, beta > 0 and alpha + beta <= 1 directly.
static std::vector<IVec2> subdivision_candidates(const IVec2& u, const IVec2& v) {
    Int m = det(u, v);
    std::vector<IVec2> out;
    for (long x = -50; x <= 50; ++x)
        for (long y = -50; y <= 50; ++y) {
            IVec2 w(x, y);
            if (w.is_zero() || gcd(abs(w.x), abs(w.y)) != 1) continue;
            Rat a(det(w, v), m), b(det(u, w), m);
            if (a > 0 && b > 0 && a + b <= 1) out.push_back(w);
        }
    return out;
}

TEST_CASE("subdivide_to_smooth") {
    SUBCASE("P2 is already smooth") {
        auto s = subdivide_to_smooth(fan_p2());
        CHECK(s.inserted.empty());
        CHECK(s.smooth.size() == 3);
    }
    SUBCASE("multiplicity-2 cone splits at (1,1)") {
        // oracle: (1,1) is the unique candidate minimizing alpha + beta
        auto cands = subdivision_candidates(IVec2(1, 0), IVec2(1, 2));
        REQUIRE(cands.size() == 1);
        CHECK(cands[0] == IVec2(1, 1));

        Fan f = validate_fan({{1, 0}, {1, 2}, {-1, 0}, {-1, -2}});
        auto s = subdivide_to_smooth(f);
        CHECK(s.smooth.is_smooth());
        CHECK(s.smooth.find_ray(IVec2(1, 1)) >= 0);
        // original rays survive
        for (const auto& r : f.rays()) CHECK(s.smooth.find_ray(r) >= 0);
    }
    SUBCASE("the degree-n cone point resolves with one ray of square -n") {
        for (long n = 2; n <= 6; ++n) {
            Fan f = validate_fan({{1, 0}, {0, 1}, {-1, -n}});
            auto s = subdivide_to_smooth(f);
            CHECK(s.smooth.is_smooth());
            REQUIRE(s.inserted.size() == 1);
            CHECK(s.inserted[0] == IVec2(0, -1));
        }
    }
    SUBCASE("chain cones split along (1,k)") {
        // <(1,0),(1,n)> and <(-1,0),(-1,-n)> each need n-1 insertions, the
        // two remaining cones of the example-1 fan are cone points: 2n total
        for (long n = 2; n <= 6; ++n) {
            Fan f = fan_example1(n);
            auto s = subdivide_to_smooth(f);
            CHECK(s.smooth.is_smooth());
            CHECK((long)s.inserted.size() == 2 * n);
            for (long k = 1; k < n; ++k) {
                CHECK(s.smooth.find_ray(IVec2(1, k)) >= 0);
                CHECK(s.smooth.find_ray(IVec2(-1, -k)) >= 0);
            }
        }
    }
    SUBCASE("removing inserted rays in reverse order reconstructs the fan") {
        Fan f = validate_fan({{1, 0}, {1, 2}, {0, 1}, {-1, -1}});
        auto s = subdivide_to_smooth(f);
        Fan cur = s.smooth;
        for (auto it = s.inserted.rbegin(); it != s.inserted.rend(); ++it) {
            int idx = cur.find_ray(*it);
            REQUIRE(idx >= 0);
            cur = *remove_ray(cur, idx).target;
        }
        CHECK(cur == f);
    }
}

TEST_CASE("remove_ray") {
    SUBCASE("example 2: removing (1,2) gives P2") {
        Fan f = fan_example2(2);
        int j = f.find_ray(IVec2(1, 2));
        FanMap m = remove_ray(f, j);
        REQUIRE(m.target.has_value());
        CHECK(fan_isomorphic(*m.target, fan_p2()).has_value());
    }
    SUBCASE("example 2: removing (0,1) gives the P(1,1,2) pattern") {
        Fan f = fan_example2(2);
        FanMap m = remove_ray(f, f.find_ray(IVec2(0, 1)));
        auto w = weight_vector(*m.target);
        REQUIRE(w.size() == 3);
        CHECK(w[0] == 1);
        CHECK(w[1] == 1);
        CHECK(w[2] == 2);
    }
    SUBCASE("weights (1, n-1, n) for general n") {
        for (long n = 3; n <= 5; ++n) {
            Fan f = fan_example2(n);
            FanMap m = remove_ray(f, f.find_ray(IVec2(0, 1)));
            auto w = weight_vector(*m.target);
            CHECK(w[0] == 1);
            CHECK(w[1] == n - 1);
            CHECK(w[2] == n);
        }
    }
    SUBCASE("P2 rays cannot be removed") {
        try {
            remove_ray(fan_p2(), 0);
            CHECK(false);
        } catch (const DomainError& e) {
            CHECK(e.code() == "too_few_rays");
        }
    }
    SUBCASE("non-convex removal rejected") {
        Fan f = fan_example1(2);  // neighbors of every ray are opposite
        try {
            remove_ray(f, 1);
            CHECK(false);
        } catch (const DomainError& e) {
            CHECK(e.code() == "ray_not_contractible");
        }
    }
    SUBCASE("removal order over a set does not matter") {
        Fan f = validate_fan({{1, 0}, {2, 1}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}});
        int a = f.find_ray(IVec2(2, 1));
        int b = f.find_ray(IVec2(1, 1));
        Fan t1 = *remove_ray(*remove_ray(f, a).target,
                             remove_ray(f, a).target->find_ray(IVec2(1, 1))).target;
        Fan t2 = *remove_ray(*remove_ray(f, b).target,
                             remove_ray(f, b).target->find_ray(IVec2(2, 1))).target;
        CHECK(t1 == t2);
    }
}

TEST_CASE("project_fan") {
    SUBCASE("example 1 projections") {
        Fan f = fan_example1(2);
        FanMap m = project_fan(f, IVec2(0, 1));
        CHECK(m.zero_rays.size() == 2);
        std::set<int> zs(m.zero_rays.begin(), m.zero_rays.end());
        CHECK(zs.count(f.find_ray(IVec2(1, 0))) == 1);
        CHECK(zs.count(f.find_ray(IVec2(-1, 0))) == 1);

        FanMap m2 = project_fan(f, IVec2(2, -1));
        CHECK(m2.zero_rays.size() == 2);
    }
    SUBCASE("P2 has no fibration") {
        try {
            project_fan(fan_p2(), IVec2(0, 1));
            CHECK(false);
        } catch (const DomainError& e) {
            CHECK(e.code() == "not_fibration");
        }
    }
    SUBCASE("degenerate form rejected") {
        Fan f = fan_p1xp1();
        CHECK_THROWS_AS(project_fan(f, IVec2(0, 0)), DomainError);
        FanMap m = project_fan(f, IVec2(1, 0));
        CHECK(m.positive_rays.size() == 1);
        CHECK(m.negative_rays.size() == 1);
    }
}

TEST_CASE("fan_isomorphic") {
    SUBCASE("identity") {
        auto m = fan_isomorphic(fan_p2(), fan_p2());
        REQUIRE(m.has_value());
    }
    SUBCASE("P2 in another basis") {
        Fan p2 = fan_p2();
        Fan g = validate_fan({{0, 1}, {-1, 0}, {1, -1}});
        auto m = fan_isomorphic(p2, g);
        REQUIRE(m.has_value());
        CHECK(abs(m->det()) == 1);
        // the matrix really maps ray set to ray set
        for (const auto& r : p2.rays()) CHECK(g.find_ray(m->apply(r)) >= 0);
    }
    SUBCASE("example 1 is not P1 x P1") {
        CHECK(!fan_isomorphic(fan_example1(2), fan_p1xp1()).has_value());
        CHECK(!fan_isomorphic(fan_example1(3), fan_p1xp1()).has_value());
    }
    SUBCASE("invariance under a unimodular change of basis") {
        Mat2 u{Int(2), Int(1), Int(1), Int(1)};  // det 1
        Fan f = fan_example2(3);
        std::vector<IVec2> moved;
        for (const auto& r : f.rays()) moved.push_back(u.apply(r));
        Fan g = validate_fan(moved);
        auto m = fan_isomorphic(f, g);
        REQUIRE(m.has_value());
        auto back = fan_isomorphic(g, f);
        REQUIRE(back.has_value());
    }
    SUBCASE("reflection counts as isomorphism") {
        // mirrored P1 x P1 with swapped axes is the same fan set
        Fan g = validate_fan({{0, 1}, {1, 0}, {0, -1}, {-1, 0}});
        CHECK(fan_isomorphic(fan_p1xp1(), g).has_value());
    }
}

TEST_CASE("fan text round trip") {
    Fan f = fan_example3(3);
    std::string text = "# a comment\n" + f.to_text();
    Fan g = Fan::from_text(text);
    CHECK(f == g);
    CHECK_THROWS_AS(Fan::from_text("ray 1\n"), DomainError);
    CHECK_THROWS_AS(Fan::from_text("cone 1 2\n"), DomainError);
}
