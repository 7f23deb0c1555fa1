// Exact planar geometry: integer lattice vectors, rational points, affine
// forms in two slice parameters (s, t), half-planes and convex polytopes.
// No floating point anywhere; every predicate is decided in Q.
#pragma once

#include "mori/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mori {

struct IVec2 {
    Int x{0}, y{0};

    IVec2() = default;
    IVec2(Int xx, Int yy) : x(std::move(xx)), y(std::move(yy)) {}
    IVec2(long xx, long yy) : x(xx), y(yy) {}

    bool operator==(const IVec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const IVec2& o) const { return !(*this == o); }
    IVec2 operator-() const { return IVec2(-x, -y); }
    IVec2 operator+(const IVec2& o) const { return IVec2(x + o.x, y + o.y); }
    IVec2 operator-(const IVec2& o) const { return IVec2(x - o.x, y - o.y); }
    bool is_zero() const { return x == 0 && y == 0; }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

inline Int det(const IVec2& u, const IVec2& v) { return u.x * v.y - u.y * v.x; }
inline Int dot(const IVec2& u, const IVec2& v) { return u.x * v.x + u.y * v.y; }

// v / gcd(|x|, |y|); throws on (0,0).
IVec2 make_primitive(const IVec2& v);

// Strict angular order on nonzero vectors, angles measured in [0, 2*pi)
// counterclockwise from the positive x-axis.
bool angle_less(const IVec2& u, const IVec2& v);
bool same_direction(const IVec2& u, const IVec2& v);

// lexicographic (x, then y); used only for deterministic tie-breaks
bool lex_less(const IVec2& u, const IVec2& v);

struct Mat2 {
    Int a{1}, b{0}, c{0}, d{1};  // [[a, b], [c, d]]
    IVec2 apply(const IVec2& v) const { return IVec2(a * v.x + b * v.y, c * v.x + d * v.y); }
    Int det() const { return a * d - b * c; }
};

struct RVec2 {
    Rat x, y;
    RVec2() = default;
    RVec2(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
    bool operator==(const RVec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const RVec2& o) const { return !(*this == o); }
};

inline RVec2 midpoint(const RVec2& a, const RVec2& b) {
    return RVec2((a.x + b.x) / 2, (a.y + b.y) / 2);
}

// value c0 + cs*s + ct*t
struct AffForm {
    Rat c0, cs, ct;
    Rat eval(const RVec2& p) const { return c0 + cs * p.x + ct * p.y; }
    bool is_constant() const { return cs == 0 && ct == 0; }
};

// a*s + b*t <= c with integer coefficients, gcd(|a|,|b|,|c|) = 1
struct HalfPlane {
    Int a, b, c;

    bool contains(const RVec2& p) const { return a * p.x + b * p.y <= c; }
    bool active_at(const RVec2& p) const { return a * p.x + b * p.y == c; }
    bool operator==(const HalfPlane& o) const { return a == o.a && b == o.b && c == o.c; }
};

// canonical half-plane for "form >= 0"
HalfPlane halfplane_from_ge(const AffForm& f);

std::optional<RVec2> line_intersect(const HalfPlane& h1, const HalfPlane& h2);

// Convex polytope in the (s, t) plane. Callers always include enough box
// constraints to keep the feasible set bounded.
class Polytope {
public:
    static Polytope from_halfplanes(std::vector<HalfPlane> cons);
    static Polytope from_points(const std::vector<RVec2>& pts);  // convex hull

    // -1 empty, 0 point, 1 segment, 2 polygon
    int dim() const { return dim_; }
    bool empty() const { return dim_ < 0; }

    // vertices: ccw cycle when dim 2, two endpoints when dim 1, one when 0
    const std::vector<RVec2>& vertices() const { return verts_; }
    const std::vector<HalfPlane>& constraints() const { return cons_; }

    bool contains(const RVec2& p) const;
    bool on_boundary(const RVec2& p) const;  // contained and some constraint active
    RVec2 centroid() const;

    // ccw edge list (dim 2), or the single segment (dim 1)
    std::vector<std::pair<RVec2, RVec2>> edges() const;

    static Polytope intersect(const Polytope& p, const Polytope& q);

private:
    std::vector<HalfPlane> cons_;
    std::vector<RVec2> verts_;
    int dim_ = -1;
};

// exact point-on-segment test (endpoints included)
bool on_segment(const RVec2& p, const RVec2& a, const RVec2& b);

// overlap of collinear closed segments; nullopt when intersection is empty
// or a single point (walls must be one-dimensional)
std::optional<std::pair<RVec2, RVec2>> segment_overlap(const RVec2& a1, const RVec2& a2,
                                                       const RVec2& b1, const RVec2& b2);

// Exact feasibility of { lambda >= 0 : sum_k lambda_k cols[k] = target }
// via phase-one simplex with Bland's rule.
bool in_cone(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& target);

}  // namespace mori
