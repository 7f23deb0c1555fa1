#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mori/geom2.hpp"

using namespace mori;

TEST_CASE("primitive vectors") {
    CHECK(make_primitive(IVec2(2, 4)) == IVec2(1, 2));
    CHECK(make_primitive(IVec2(1, 0)) == IVec2(1, 0));
    CHECK(make_primitive(IVec2(-3, -6)) == IVec2(-1, -2));
    CHECK_THROWS_WITH_AS(make_primitive(IVec2(0, 0)), "zero vector has no direction",
                         DomainError);
}

TEST_CASE("angular order") {
    IVec2 e1(1, 0), e2(0, 1), w(-1, 0), s(0, -1);
    CHECK(angle_less(e1, e2));
    CHECK(angle_less(e2, w));
    CHECK(angle_less(w, s));
    CHECK(!angle_less(s, e1));
    CHECK(angle_less(IVec2(1, 1), IVec2(-1, 1)));
}

TEST_CASE("halfplane from affine form") {
    // s/2 + t/3 - 1 >= 0  ->  -3s - 2t <= -6
    HalfPlane h = halfplane_from_ge(AffForm{Rat(-1), Rat(1, 2), Rat(1, 3)});
    CHECK(h.a == -3);
    CHECK(h.b == -2);
    CHECK(h.c == -6);
    CHECK(h.contains(RVec2(Rat(2), Rat(0))));
    CHECK(!h.contains(RVec2(Rat(0), Rat(0))));
}

TEST_CASE("polytope from halfplanes: unit square") {
    std::vector<HalfPlane> cons = {
        {Int(-1), Int(0), Int(0)}, {Int(1), Int(0), Int(1)},
        {Int(0), Int(-1), Int(0)}, {Int(0), Int(1), Int(1)}};
    Polytope p = Polytope::from_halfplanes(cons);
    CHECK(p.dim() == 2);
    CHECK(p.vertices().size() == 4);
    CHECK(p.contains(RVec2(Rat(1, 2), Rat(1, 2))));
    CHECK(!p.contains(RVec2(Rat(2), Rat(0))));
    CHECK(p.on_boundary(RVec2(Rat(0), Rat(1, 2))));
    CHECK(!p.on_boundary(RVec2(Rat(1, 2), Rat(1, 2))));
    RVec2 c = p.centroid();
    CHECK(c == RVec2(Rat(1, 2), Rat(1, 2)));
}

TEST_CASE("degenerate polytopes") {
    // x == 1/2 inside the square: a segment
    std::vector<HalfPlane> cons = {
        {Int(-1), Int(0), Int(0)},  {Int(1), Int(0), Int(1)},
        {Int(0), Int(-1), Int(0)},  {Int(0), Int(1), Int(1)},
        {Int(2), Int(0), Int(1)},   {Int(-2), Int(0), Int(-1)}};
    Polytope seg = Polytope::from_halfplanes(cons);
    CHECK(seg.dim() == 1);
    CHECK(seg.vertices().size() == 2);

    cons.push_back({Int(0), Int(2), Int(1)});
    cons.push_back({Int(0), Int(-2), Int(-1)});
    Polytope pt = Polytope::from_halfplanes(cons);
    CHECK(pt.dim() == 0);

    cons.push_back({Int(0), Int(1), Int(0)});  // t <= 0 conflicts with t == 1/2
    Polytope none = Polytope::from_halfplanes(cons);
    CHECK(none.empty());
}

TEST_CASE("hull and intersection") {
    std::vector<RVec2> pts = {RVec2(Rat(0), Rat(0)), RVec2(Rat(2), Rat(0)),
                              RVec2(Rat(1), Rat(1)), RVec2(Rat(1), Rat(0)),
                              RVec2(Rat(0), Rat(2)), RVec2(Rat(2), Rat(2))};
    Polytope h = Polytope::from_points(pts);
    CHECK(h.dim() == 2);
    CHECK(h.contains(RVec2(Rat(1), Rat(1))));
    CHECK(h.vertices().size() == 4);

    std::vector<HalfPlane> tri = {
        {Int(-1), Int(0), Int(0)}, {Int(0), Int(-1), Int(0)}, {Int(1), Int(1), Int(1)}};
    Polytope t = Polytope::from_halfplanes(tri);
    Polytope both = Polytope::intersect(h, t);
    CHECK(both.dim() == 2);
    CHECK(both.contains(RVec2(Rat(1, 4), Rat(1, 4))));
}

TEST_CASE("segment predicates") {
    RVec2 a(Rat(0), Rat(0)), b(Rat(4), Rat(2));
    CHECK(on_segment(RVec2(Rat(2), Rat(1)), a, b));
    CHECK(on_segment(a, a, b));
    CHECK(!on_segment(RVec2(Rat(2), Rat(2)), a, b));
    CHECK(!on_segment(RVec2(Rat(6), Rat(3)), a, b));

    auto ov = segment_overlap(a, b, RVec2(Rat(2), Rat(1)), RVec2(Rat(8), Rat(4)));
    REQUIRE(ov.has_value());
    CHECK(ov->first == RVec2(Rat(2), Rat(1)));
    CHECK(ov->second == b);

    CHECK(!segment_overlap(a, b, b, RVec2(Rat(8), Rat(4))).has_value());  // point touch
    CHECK(!segment_overlap(a, b, RVec2(Rat(0), Rat(1)), RVec2(Rat(4), Rat(3))).has_value());
}

// independent 2D oracle: x is in the cone of the generators iff it is a
// nonnegative combination of some pair (or colinear with one generator)
static bool in_cone_2d_oracle(const std::vector<std::vector<Rat>>& cols,
                              const std::vector<Rat>& t) {
    if (t[0] == 0 && t[1] == 0) return true;
    for (const auto& g : cols) {
        Rat cross = g[0] * t[1] - g[1] * t[0];
        Rat dot = g[0] * t[0] + g[1] * t[1];
        if (cross == 0 && dot > 0) return true;
    }
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (i == j) continue;
            Rat den = cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0];
            if (den == 0) continue;
            Rat a = (t[0] * cols[j][1] - t[1] * cols[j][0]) / den;
            Rat b = (cols[i][0] * t[1] - cols[i][1] * t[0]) / den;
            if (a >= 0 && b >= 0) return true;
        }
    return false;
}

TEST_CASE("simplex cone membership agrees with the planar oracle (seeded)") {
    SplitMix64 rng(271828);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(5);
        std::vector<std::vector<Rat>> cols;
        for (std::size_t k = 0; k < n; ++k) {
            Rat x = Rat(Int(rng.below(9)) - 4);
            Rat y = Rat(Int(rng.below(9)) - 4);
            if (x == 0 && y == 0) x = 1;
            cols.push_back({x, y});
        }
        std::vector<Rat> t{Rat(Int(rng.below(9)) - 4), Rat(Int(rng.below(9)) - 4)};
        CHECK(in_cone(cols, t) == in_cone_2d_oracle(cols, t));
    }
}

TEST_CASE("cone membership by simplex") {
    using Col = std::vector<Rat>;
    std::vector<Col> cols = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK(in_cone(cols, {Rat(2), Rat(3)}));
    CHECK(in_cone(cols, {Rat(0), Rat(0)}));
    CHECK(!in_cone(cols, {Rat(-1), Rat(0)}));
    CHECK(!in_cone(cols, {Rat(1), Rat(-1, 7)}));

    std::vector<Col> three = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    CHECK(in_cone(three, {Rat(5), Rat(3)}));
    CHECK(!in_cone(three, {Rat(-1), Rat(3)}));

    // redundant middle generator: (1,1) = (1,0) + (0,1)
    CHECK(in_cone({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(1)}));
    // but (1,0) is not in cone((1,1),(0,1))
    CHECK(!in_cone({{Rat(1), Rat(1)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)}));

    CHECK(in_cone({}, {Rat(0), Rat(0)}));
    CHECK(!in_cone({}, {Rat(1), Rat(0)}));
}
