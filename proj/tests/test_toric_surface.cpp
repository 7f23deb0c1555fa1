#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mori/toric_surface.hpp"

using namespace mori;

static TDivisor div_of(const ToricSurface& x, std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    REQUIRE((int)v.size() == x.rays());
    return TDivisor(v);
}

// the principal divisor div(chi^u) has coefficients <u, v_i>
static TDivisor principal(const ToricSurface& x, const IVec2& u) {
    TDivisor d = TDivisor::zero(x.rays());
    for (int i = 0; i < x.rays(); ++i) d[i] = Rat(dot(u, x.fan().ray(i)));
    return d;
}

TEST_CASE("canonical divisor") {
    ToricSurface p2(fan_p2());
    TDivisor k = canonical_divisor(p2);
    for (int i = 0; i < 3; ++i) CHECK(k[i] == -1);
    ToricSurface x(fan_example1(2));
    CHECK(canonical_divisor(x).size() == 4);
}

TEST_CASE("intersection numbers on P2") {
    ToricSurface p2(fan_p2());
    TDivisor d1 = TDivisor::unit(3, 0);
    // adjacent line classes meet in one point
    CHECK(intersect(p2, d1, 1) == 1);
    // cross-check through linear equivalence: D1 ~ D2 ~ D3, (line)^2 = 1
    CHECK(intersect(p2, d1, 0) == 1);
    CHECK(intersect(p2, d1, 2) == 1);
    // K . C = -3 on every line
    TDivisor k = canonical_divisor(p2);
    for (int j = 0; j < 3; ++j) CHECK(intersect(p2, k, j) == -3);
    // zero divisor
    for (int j = 0; j < 3; ++j) CHECK(intersect(p2, TDivisor::zero(3), j) == 0);
}

TEST_CASE("self-intersections") {
    ToricSurface f1(fan_f1());
    int e = f1.fan().find_ray(IVec2(1, 1));
    CHECK(self_intersection(f1, e) == -1);

    ToricSurface w(Fan::validate({{1, 0}, {0, 1}, {-1, -2}}));  // P(1,1,2) pattern
    int j = w.fan().find_ray(IVec2(0, 1));
    CHECK(self_intersection(w, j) == 2);
    // the two curves through the singular point have square 1/2
    CHECK(self_intersection(w, w.fan().find_ray(IVec2(1, 0))) == Rat(1, 2));
    CHECK(self_intersection(w, w.fan().find_ray(IVec2(-1, -2))) == Rat(1, 2));
}

TEST_CASE("sign of C^2 equals -sign of det(prev, next)") {
    std::vector<Fan> fans = {fan_p2(), fan_f1(), fan_example1(2), fan_example2(3),
                             fan_example3(4)};
    for (const auto& f : fans) {
        ToricSurface x(f);
        for (int j = 0; j < f.size(); ++j) {
            Int d = det(f.ray(f.prev(j)), f.ray(f.next(j)));
            Rat c2 = self_intersection(x, j);
            if (d > 0) CHECK(c2 < 0);
            if (d == 0) CHECK(c2 == 0);
            if (d < 0) CHECK(c2 > 0);
        }
    }
}

TEST_CASE("adjunction on curves missing the singular points") {
    // if both cones at ray j are smooth, C_j is a smooth rational curve and
    // K.C + C^2 = -2 exactly
    std::vector<Fan> fans = {fan_p2(), fan_f1(), fan_example2(2), fan_example2(5)};
    for (const auto& f : fans) {
        ToricSurface x(f);
        TDivisor k = canonical_divisor(x);
        for (int j = 0; j < f.size(); ++j) {
            if (f.cone(f.prev(j)).mult == 1 && f.cone(j).mult == 1) {
                CHECK(intersect(x, k, j) + self_intersection(x, j) == -2);
            }
        }
    }
}

TEST_CASE("linear equivalence invariance and symmetry") {
    ToricSurface x(fan_example2(3));
    TDivisor d = div_of(x, {2, -1, 3, 5});
    for (int j = 0; j < x.rays(); ++j) {
        CHECK(intersect(x, d + principal(x, IVec2(1, 0)), j) == intersect(x, d, j));
        CHECK(intersect(x, d + principal(x, IVec2(-2, 7)), j) == intersect(x, d, j));
    }
    for (int i = 0; i < x.rays(); ++i)
        for (int j = 0; j < x.rays(); ++j) {
            if (i == j) continue;
            CHECK(intersect(x, TDivisor::unit(x.rays(), i), j) ==
                  intersect(x, TDivisor::unit(x.rays(), j), i));
        }
}

TEST_CASE("resolution independence") {
    // insert a non-minimal extra ray by hand; intersection numbers agree
    Fan f = fan_example3(2);
    ToricSurface x(f);
    std::vector<IVec2> rays = f.rays();
    rays.push_back(IVec2(1, 1));  // inside cone <(1,0),(1,2)>
    Fan g = Fan::validate(rays);
    ToricSurface y(g);
    // divisor on g pulled from f's K: support-function extension
    TDivisor kf = canonical_divisor(x);
    TDivisor kg = TDivisor::zero(g.size());
    for (int i = 0; i < g.size(); ++i) {
        int oi = f.find_ray(g.ray(i));
        if (oi >= 0) {
            kg[i] = kf[oi];
        } else {
            // (1,1) = 1/2 (1,0) + 1/2 (1,2)
            kg[i] = Rat(-1);
        }
    }
    for (int j = 0; j < f.size(); ++j) {
        int gj = g.find_ray(f.ray(j));
        CHECK(intersect(y, kg, gj) == intersect(x, kf, j));
    }
}

TEST_CASE("numerical classes") {
    ToricSurface p2(fan_p2());
    CHECK(numerical_class(p2, TDivisor::unit(3, 0)) == numerical_class(p2, TDivisor::unit(3, 2)));
    CHECK((int)numerical_class(p2, TDivisor::unit(3, 0)).size() == 1);

    ToricSurface x(fan_example1(2));
    auto z = numerical_class(x, principal(x, IVec2(1, 0)));
    for (const auto& v : z) CHECK(v == 0);
    int d1 = x.fan().find_ray(IVec2(1, 0));
    int d3 = x.fan().find_ray(IVec2(-1, 0));
    CHECK(numerical_class(x, TDivisor::unit(4, d1)) == numerical_class(x, TDivisor::unit(4, d3)));
}

TEST_CASE("nef tests") {
    ToricSurface p2(fan_p2());
    CHECK(is_nef(p2, TDivisor::unit(3, 0)).nef);
    TDivisor mk = canonical_divisor(p2) * Rat(-1);
    CHECK(is_nef(p2, mk).nef);
    CHECK(is_ample(p2, mk));

    ToricSurface f1(fan_f1());
    int e = f1.fan().find_ray(IVec2(1, 1));
    auto r = is_nef(f1, TDivisor::unit(4, e));
    CHECK(!r.nef);
    REQUIRE(r.violating.size() == 1);
    CHECK(r.violating[0] == e);
}

TEST_CASE("ample divisor construction") {
    std::vector<Fan> fans = {fan_p2(), fan_p1xp1(), fan_f1(), fan_example1(2),
                             fan_example2(2), fan_example3(5),
                             Fan::validate({{1, 0}, {3, 2}, {0, 1}, {-2, 1}, {-1, -3}})};
    for (const auto& f : fans) {
        ToricSurface x(f);
        TDivisor a = ample_divisor(x);
        CHECK(is_ample(x, a));
        for (const auto& c : a.c) CHECK(c > 0);
    }
}

TEST_CASE("effective representation") {
    ToricSurface p2(fan_p2());
    SUBCASE("already effective") {
        TDivisor d = div_of(p2, {1, 2, 0});
        auto r = effective_representation(p2, d);
        REQUIRE(r.has_value());
        CHECK(r->effective());
        CHECK(numerical_class(p2, *r) == numerical_class(p2, d));
    }
    SUBCASE("line class with a negative coefficient") {
        TDivisor d = div_of(p2, {-1, 1, 1});
        auto r = effective_representation(p2, d);
        REQUIRE(r.has_value());
        CHECK(r->effective());
        CHECK(numerical_class(p2, *r) == numerical_class(p2, d));
    }
    SUBCASE("K is not effective") {
        CHECK(!effective_representation(p2, canonical_divisor(p2)).has_value());
        CHECK(!is_pseudo_effective(p2, canonical_divisor(p2)));
    }
}

TEST_CASE("pushforward and pullback along contractions") {
    ToricSurface x(fan_example2(2));
    int j = x.fan().find_ray(IVec2(1, 2));
    Contraction f = contract_rays(x, {j});
    CHECK(f.relative_picard_rank() == 1);
    CHECK(f.reduced.picard_rank() == x.picard_rank() - 1);

    TDivisor d = div_of(x, {1, 5, 2, 3});
    TDivisor push = pushforward(f, d);
    CHECK(push.size() == 3);
    TDivisor pull = pullback(f, push);
    CHECK(pull.size() == 4);
    // pullback agrees with pushforward where defined
    for (int i = 0, k = 0; i < x.rays(); ++i) {
        if (i == j) continue;
        CHECK(pull[i] == push[k++]);
    }
    // pullbacks intersect trivially with the contracted curve
    CHECK(intersect(x, pull, j) == 0);
}

TEST_CASE("ample_model_of_nef") {
    SUBCASE("ample divisor gives the identity") {
        ToricSurface p2(fan_p2());
        auto m = ample_model_of_nef(p2, canonical_divisor(p2) * Rat(-1));
        CHECK(m.is_identity());
    }
    SUBCASE("zero divisor collapses to a point") {
        ToricSurface x(fan_example1(2));
        auto m = ample_model_of_nef(x, TDivisor::zero(4));
        CHECK(m.base == BaseKind::Point);
    }
    SUBCASE("fiber class gives the P1 projection") {
        ToricSurface x(fan_example1(2));
        // pull back a point of P1 under (x,y) -> y: coefficients ell(v) on
        // the positive side
        TDivisor fib = TDivisor::zero(4);
        int r = x.fan().find_ray(IVec2(1, 2));
        fib[r] = 2;
        auto m = ample_model_of_nef(x, fib);
        CHECK(m.base == BaseKind::P1);
        REQUIRE(m.form.has_value());
        CHECK((*m.form == IVec2(0, 1) || *m.form == IVec2(0, -1)));
    }
    SUBCASE("birational model") {
        ToricSurface x(fan_example2(2));
        int j = x.fan().find_ray(IVec2(1, 2));
        Contraction f = contract_rays(x, {j});
        TDivisor h = pullback(f, ample_divisor(f.reduced));
        CHECK(is_nef(x, h).nef);
        auto m = ample_model_of_nef(x, h);
        CHECK(m.base == BaseKind::Surface);
        REQUIRE(m.removed.size() == 1);
        CHECK(m.removed[0] == j);
    }
    SUBCASE("not nef rejected") {
        ToricSurface f1(fan_f1());
        int e = f1.fan().find_ray(IVec2(1, 1));
        CHECK_THROWS_AS(ample_model_of_nef(f1, TDivisor::unit(4, e)), DomainError);
    }
}

TEST_CASE("K on fibers of a projection is -2") {
    // the fiber divisor over 0 is F = sum of ell(v) D_v over ell(v) > 0 and
    // adjunction on the smooth rational fiber forces K . F = -2
    for (long n = 2; n <= 5; ++n) {
        ToricSurface x(fan_example1(n));
        TDivisor k = canonical_divisor(x);
        for (const IVec2& ell : {IVec2(0, 1), IVec2(n, -1)}) {
            FanMap p = project_fan(x.fan(), ell);
            Rat kf = 0;
            for (int i : p.positive_rays)
                kf += Rat(dot(p.form, x.fan().ray(i))) * intersect(x, k, i);
            CHECK(kf == -2);
        }
    }
}
