// The end-to-end Sarkisov pipeline: build the two-parameter slice from two
// Mori fiber space outputs of the MMP, trace the non-big part of the
// boundary of the pseudo-effective region, classify every crossing into a
// link of Type I-IV and verify the assembled chain.
#pragma once

#include "mori/geography.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mori {

// one Mori fiber space leg: total space = Z minus `removed`, fibered over
// P^1 (with `form`) or collapsed to a point
struct LinkMfs {
    std::vector<int> removed;
    BaseKind base = BaseKind::Point;
    std::optional<IVec2> form;
    bool matches(const LinkMfs& o) const;
};

LinkMfs mfs_of_trace(const MMPTrace& trace);  // error unless the run ends in an MFS

// divisorial arrow between two birational models: `to` removes exactly
// `ray` more than `from`
struct LinkArrow {
    std::vector<int> from_removed, to_removed;
    int ray;
};

struct SarkisovLink {
    enum class Type { I, II, III, IV };
    Type type;
    RVec2 point;                      // the boundary point Theta*
    std::vector<int> chamber_models;  // incident chamber indices T_1..T_k
    LinkMfs near, far;                // the flanking Mori fiber spaces
    std::vector<LinkArrow> arrows;    // divisorial arrows of the diagram
};

std::string link_type_name(SarkisovLink::Type t);

struct BoundaryPoint {
    RVec2 p;
    std::vector<int> chambers;  // incident 2D chambers, ordered from the near side
    int near_edge, far_edge;    // indices into decomposition.mfs_edges
};

struct SliceBuild {
    Slice slice;
    Decomposition decomp;
    RVec2 theta0, theta1;
    LinkMfs end_a, end_b;
    int perturbation_rounds;
};

// Constructive slice of the two-MFS setup: ample A, the basis divisors from
// the pullbacks of effective representatives of the relatively anti-log
// classes, smallest power-of-two ample constants, then a seeded perturbation
// loop (at most 8 rounds) until the decomposition is generic and both
// endpoint segments exist interior to the box.
// Error "perturbation_budget_exhausted" carries the last failure reason.
SliceBuild build_slice(const ToricSurface& z, const TDivisor& phi, const MMPTrace& run_a,
                       const MMPTrace& run_b, std::uint64_t seed);

// Walk the non-big boundary of E from theta0 to theta1, emitting every point
// where the incident chambers or the flanking Mori fiber structure changes.
// Errors: "endpoint_not_on_boundary", "endpoint_on_box".
std::vector<BoundaryPoint> trace_boundary(const Decomposition& d, const RVec2& theta0,
                                          const RVec2& theta1);

// the full polyline of that walk, endpoints included (for rendering)
std::vector<RVec2> boundary_walk(const Decomposition& d, const RVec2& theta0,
                                 const RVec2& theta1);

// Case split on the incident chamber count: k = 1 -> IV, k = 2 -> I or III (point-base side
// first means I), k = 3 -> II. k >= 4 is an internal error.
SarkisovLink classify_link(const Decomposition& d, const BoundaryPoint& bp);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

// (a) vertical arrows have relative Picard rank one, (b) arrows into the end
// surfaces are single-ray divisorial contractions, (c) the relevant bases
// are P^1, (d) the diagram commutes at the level of removed-ray sets.
VerifyReport verify_link(const Decomposition& d, const SarkisovLink& link);

struct LinkChain {
    std::vector<SarkisovLink> links;
    LinkMfs end_a, end_b;
    SliceBuild build;
};

LinkChain decompose_sarkisov(const ToricSurface& z, const TDivisor& phi,
                             const Strategy& strategy_a, const Strategy& strategy_b,
                             std::uint64_t seed);

// Scenario file: `fan <path>` (relative to the scenario file), `phi <i> <p/q>`,
// `runA strategy=<rule>`, `runB strategy=<rule>`, `seed <int>`.
struct Scenario {
    Fan fan;
    std::vector<std::pair<int, Rat>> phi_entries;
    Strategy strategy_a, strategy_b;
    std::uint64_t seed = 0;

    TDivisor phi() const;
};

Scenario parse_scenario(const std::string& text, const std::string& base_dir);

}  // namespace mori
