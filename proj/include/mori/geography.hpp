// Chamber decomposition of a two-parameter divisor slice: weak-lc-model
// polytopes per birational model, ample-model chambers, divisorial walls,
// Mori-fiber boundary segments and the pseudo-effective region E.
#pragma once

#include "mori/mmp.hpp"

#include <optional>
#include <vector>

namespace mori {

// Theta(s, t) = A + origin + s*B1 + t*B2 over the toric surface Z, with the
// coefficient box 0 <= B and Theta <= cap.
struct Slice {
    ToricSurface z;
    TDivisor a;       // ample with positive coefficients
    TDivisor origin;  // the Phi0 role
    TDivisor b1, b2;
    Rat cap = Rat(8);

    TDivisor theta(const RVec2& p) const;
    TDivisor log_base() const;  // K + A + origin

    // affine form of any divisor-linear functional along the slice
    template <typename F>
    AffForm form_of(F&& linear) const {
        return AffForm{linear(log_base()), linear(b1), linear(b2)};
    }

    // rank of the linear part of (s,t) -> class(K+Theta); genericity needs
    // min(2, picard_rank)
    int class_rank() const;
};

struct ModelRecord {
    int id;
    std::vector<int> removed;  // ascending ray indices of Z
    Contraction contraction;
};

struct Chamber {
    int model_id;
    Polytope poly;  // the weak-lc polytope W; closure of the A-region
    int dim;
    std::vector<AffForm> nef_forms;  // target-curve degrees, one per target ray

    bool strict_contains(const RVec2& p) const;  // p in the open A-region
};

struct DivisorialWall {
    int chamber_i, chamber_j;  // chamber indices; model(j) removes one ray more
    RVec2 a, b;
    int rho_drop;  // always 1, asserted via the dimension formula
};

struct MfsEdge {
    int chamber;  // chamber index whose boundary carries the segment
    BaseKind base;
    std::optional<IVec2> form;
    RVec2 a, b;
};

// The ample model of K+Theta at a point, composed from Z.
struct PointModel {
    std::vector<int> removed;
    BaseKind base = BaseKind::Surface;
    std::optional<IVec2> form;
};
bool same_point_model(const PointModel& x, const PointModel& y);

struct Decomposition {
    Slice slice;
    std::vector<ModelRecord> models;
    std::vector<Chamber> chambers;  // models with nonempty ample region
    std::vector<DivisorialWall> walls;
    std::vector<MfsEdge> mfs_edges;
    std::vector<std::pair<RVec2, RVec2>> box_edges;  // chamber faces on the box
    Polytope e_region;
    Polytope box;

    const ModelRecord& model_of_chamber(int chamber_index) const;
    int chamber_by_removed(const std::vector<int>& removed) const;  // -1 if absent

    // all chambers whose closure contains p
    std::vector<int> chambers_containing(const RVec2& p) const;
    // chambers with p strictly in the ample region
    std::vector<int> strict_chambers(const RVec2& p) const;

    // the ample model at p in E, via the chamber data
    PointModel point_model(const RVec2& p) const;

    bool point_on_box_boundary(const RVec2& p) const;
};

// all ray subsets of Z whose removal yields a valid complete fan, id 0 = {}
std::vector<ModelRecord> enumerate_models(const ToricSurface& z);

// the weak-lc polytope of one model inside the slice box
Polytope region_weak_lc(const Slice& slice, const ModelRecord& model);

// Full decomposition. Error "degenerate_slice" when the rank genericity
// fails; "empty_slice" when no model meets the box.
Decomposition decompose(const Slice& slice);

// The connecting morphism across a divisorial wall: the single ray-removal
// carrying the shallower side's target onto the deeper side's target.
Contraction wall_contraction(const Decomposition& d, const DivisorialWall& wall);

}  // namespace mori
