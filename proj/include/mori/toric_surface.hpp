// Divisor theory on the projective toric surface of a complete fan.
//
// Intersection numbers always go through the minimal resolution: a divisor is
// pulled back by extending its support function to the inserted rays and then
// evaluated with the smooth-surface rules. One code path, exact rationals.
#pragma once

#include "mori/lattice_fan.hpp"

#include <optional>
#include <vector>

namespace mori {

// coefficient vector indexed by the rays of an ambient fan
struct TDivisor {
    std::vector<Rat> c;

    TDivisor() = default;
    explicit TDivisor(std::vector<Rat> cc) : c(std::move(cc)) {}
    static TDivisor zero(int n) { return TDivisor(std::vector<Rat>(n, Rat(0))); }
    static TDivisor unit(int n, int i) {
        TDivisor d = zero(n);
        d.c[i] = 1;
        return d;
    }

    int size() const { return static_cast<int>(c.size()); }
    Rat& operator[](int i) { return c[i]; }
    const Rat& operator[](int i) const { return c[i]; }

    TDivisor operator+(const TDivisor& o) const;
    TDivisor operator-(const TDivisor& o) const;
    TDivisor operator*(const Rat& k) const;
    bool operator==(const TDivisor& o) const { return c == o.c; }
    bool effective() const;
};

class ToricSurface {
public:
    explicit ToricSurface(Fan fan);

    const Fan& fan() const { return fan_; }
    int rays() const { return fan_.size(); }
    int picard_rank() const { return fan_.size() - 2; }

    const Fan& resolution() const { return resolution_; }
    // resolution-fan index of original ray i
    int resolved_index(int i) const { return orig_pos_[i]; }

    // coefficients of the pullback of D to the resolution
    std::vector<Rat> pullback_to_resolution(const TDivisor& d) const;

    // column indices of the class basis (the non-pivot rays), size picard_rank
    const std::vector<int>& class_basis() const { return basis_cols_; }

    bool operator==(const ToricSurface& o) const { return fan_ == o.fan_; }

private:
    Fan fan_;
    Fan resolution_;
    std::vector<int> orig_pos_;
    // for every resolution ray: the original cone containing it and the exact
    // coordinates (alpha, beta) in that cone's generators; original rays have
    // alpha = 1, beta = 0 against themselves
    struct RayCoord {
        int orig_cone;
        Rat alpha, beta;
        bool is_original;
        int orig_index;  // -1 for inserted rays
    };
    std::vector<RayCoord> res_coords_;
    std::vector<Int> res_b_;  // v_{prev} + v_{next} = b_j * v_j on the smooth fan

    std::vector<int> basis_cols_;           // class basis columns
    std::vector<int> pivot_cols_;           // eliminated columns, one per row
    std::vector<std::vector<Rat>> reduce_;  // 2 x n reduced relation rows

    friend Rat intersect(const ToricSurface&, const TDivisor&, int);
    friend std::vector<Rat> numerical_class(const ToricSurface&, const TDivisor&);
};

// K_X = -sum of all invariant divisors
TDivisor canonical_divisor(const ToricSurface& x);

// D . C_j for the invariant curve of ray j
Rat intersect(const ToricSurface& x, const TDivisor& d, int j);

Rat self_intersection(const ToricSurface& x, int j);

// class of D in the fixed basis, length = picard_rank
std::vector<Rat> numerical_class(const ToricSurface& x, const TDivisor& d);

// class of the curve C_j as the functional (D_b . C_j) over the basis divisors
std::vector<Rat> curve_class(const ToricSurface& x, int j);

struct NefResult {
    bool nef;
    std::vector<int> violating;  // rays with D . C_j < 0
};
NefResult is_nef(const ToricSurface& x, const TDivisor& d);

// toric Nakai: nef with strictly positive intersections everywhere
bool is_ample(const ToricSurface& x, const TDivisor& d);

// Some ample divisor with strictly positive coefficients, built from a
// rational polygon whose normal fan is the fan of x.
TDivisor ample_divisor(const ToricSurface& x);

// Nonnegative representative of the class of D: coefficients of D + div(u)
// for some u in M x Q, or nullopt when the class is not effective. Among the
// feasible vertices the one minimizing the maximum coefficient is returned
// (ties: lexicographically smallest u).
std::optional<TDivisor> effective_representation(const ToricSurface& x, const TDivisor& d);

bool is_pseudo_effective(const ToricSurface& x, const TDivisor& d);

enum class BaseKind { Surface, P1, Point };

// A contraction from `source`: remove the listed rays (any order works and
// all orders agree), then optionally fiber the reduced surface to P^1 or
// collapse it to a point.
struct Contraction {
    ToricSurface source;
    std::vector<int> removed;  // ascending source ray indices
    ToricSurface reduced;      // source minus removed
    BaseKind base = BaseKind::Surface;
    std::optional<IVec2> form;     // P1 only: the projection form
    std::vector<FanMap> steps;     // the individual fan maps, in order

    bool is_identity() const { return removed.empty() && base == BaseKind::Surface; }
    int relative_picard_rank() const;
};

// removal of a set of rays; validity of the final fan is checked stepwise
Contraction contract_rays(const ToricSurface& x, std::vector<int> removed);

TDivisor pushforward(const Contraction& f, const TDivisor& d);

// extend a divisor on the reduced surface back to the source by evaluating
// the target support function on each removed ray
TDivisor pullback(const Contraction& f, const TDivisor& d_target);

// The ample model of a nef divisor: contracts exactly the curves with
// D . C = 0. Identity when D is ample, a composed ray removal when the zero
// locus contracts to a surface, the P^1 projection when the positive rays
// are a single opposite pair, collapse to a point when D is numerically
// trivial. Error "not_nef" when the precondition fails.
Contraction ample_model_of_nef(const ToricSurface& x, const TDivisor& d);

// ample models agree as contractions: same removed set, same base data
bool same_ample_model(const Contraction& a, const Contraction& b);

}  // namespace mori
