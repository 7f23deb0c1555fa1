// Complete rational fans in Z^2 and the maps between them: validation,
// resolution by subdivision, ray removal, projections to the fan of P^1 and
// unimodular fan isomorphism.
//
// Convention: rays are primitive and stored counterclockwise starting from
// the first input ray; every consecutive pair spans a strictly convex cone.
// All values are immutable after construction.
#pragma once

#include "mori/geom2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mori {

struct Cone2 {
    int head, tail;  // ray indices, counterclockwise
    Int mult;        // det(v_head, v_tail) > 0; 1 iff smooth
};

class Fan {
public:
    // Default-constructed fans are empty placeholders; real fans only come
    // out of validate().
    Fan() = default;

    // Validates, primitivizes and sorts the rays counterclockwise starting
    // from the first one. Distinct error codes: "too_few_rays",
    // "duplicate_ray", "not_complete".
    static Fan validate(const std::vector<IVec2>& rays);

    int size() const { return static_cast<int>(rays_.size()); }
    const IVec2& ray(int i) const { return rays_[i]; }
    const std::vector<IVec2>& rays() const { return rays_; }
    int prev(int i) const { return (i + size() - 1) % size(); }
    int next(int i) const { return (i + 1) % size(); }

    Cone2 cone(int i) const;              // cone between ray i and ray i+1
    std::vector<Int> multiplicities() const;
    bool is_smooth() const;

    // index of the ray equal to v, or -1
    int find_ray(const IVec2& v) const;
    // index of the cone whose closed span contains v (v != 0)
    int cone_containing(const IVec2& v) const;

    bool operator==(const Fan& o) const { return rays_ == o.rays_; }

    // line-based text format: '#' comments, one "ray <x> <y>" per line
    std::string to_text() const;
    static Fan from_text(const std::string& text);

private:
    std::vector<IVec2> rays_;
};

Fan validate_fan(const std::vector<IVec2>& rays);

struct Subdivision {
    Fan smooth;
    // positions (in `smooth`) of the inserted rays, in insertion order
    std::vector<IVec2> inserted;
};

// Minimal-style resolution: repeatedly split any multiplicity-m > 1 cone at
// the primitive point w = alpha*head + beta*tail with 0 < alpha, beta and
// alpha + beta <= 1 minimal, ties broken lexicographically by (x, y).
Subdivision subdivide_to_smooth(const Fan& fan);

struct FanMap {
    enum class Kind { RayRemoval, LatticeProjection, CollapseToPoint };
    Kind kind;
    Fan source;

    // RayRemoval
    int removed_index = -1;
    std::optional<Fan> target;

    // LatticeProjection: the primitive form ell, rays split by sign(ell)
    IVec2 form;
    std::vector<int> positive_rays, zero_rays, negative_rays;
};

// Errors: "too_few_rays" when n = 3, "ray_not_contractible" when the
// neighbors of j do not span a valid cone.
FanMap remove_ray(const Fan& fan, int j);

// Toric morphism to P^1: accepted iff the image of every two-dimensional
// cone under ell lies in a single closed half-line and both signs occur.
// Error: "not_fibration".
FanMap project_fan(const Fan& fan, const IVec2& ell);

// Unimodular matrix carrying the rays of f1 bijectively onto the rays of f2
// respecting the cyclic order up to rotation and reflection, or nullopt.
std::optional<Mat2> fan_isomorphic(const Fan& f1, const Fan& f2);

// For a 3-ray fan: the primitive positive integer relation (a, b, c) with
// a*v1 + b*v2 + c*v3 = 0, sorted ascending. Identifies P(a, b, c) patterns.
std::vector<Int> weight_vector(const Fan& fan);

// standard fans used throughout the tests
Fan fan_p2();
Fan fan_p1xp1();
Fan fan_f1();
Fan fan_example1(long n);  // (1,0), (1,n), (-1,0), (-1,-n)
Fan fan_example2(long n);  // (1,0), (1,n), (0,1), (-1,-1)
Fan fan_example3(long n);  // (1,0), (1,n), (0,1), (-1,-n)

}  // namespace mori
