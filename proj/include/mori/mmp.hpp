// The (K+Delta)-minimal model program for toric log surface pairs: negative
// extremal ray selection, divisorial contractions, Mori fiber space
// detection and fully traced runs. Everything is pure; traces are values.
#pragma once

#include "mori/toric_surface.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mori {

struct LogPair {
    ToricSurface x;
    TDivisor delta;  // effective; validated on construction

    LogPair(ToricSurface xx, TDivisor dd);
    TDivisor log_canonical() const { return canonical_divisor(x) + delta; }
    bool boundary_in_unit_interval() const;
};

// Is the class of C_j an extremal ray of the cone spanned by all curve
// classes? Generators positively proportional to C_j are not counted
// against it.
bool ray_is_extremal(const ToricSurface& x, int j);

// rays j with extremal curve class and (K+Delta) . C_j < 0, ascending
std::vector<int> negative_extremal_rays(const LogPair& pair);

// Deterministic strategy for choosing among negative extremal rays.
struct Strategy {
    enum class Kind { FirstIndex, PreferFibration, PreferRay, SeededRandom };
    Kind kind = Kind::FirstIndex;
    IVec2 ray;                      // PreferRay: contract this ray while possible
    std::optional<IVec2> form;      // PreferFibration: aim for this projection
    std::uint64_t seed = 0;         // SeededRandom

    static Strategy first_index() { return {}; }
    static Strategy prefer_fibration(std::optional<IVec2> f = std::nullopt);
    static Strategy prefer_ray(const IVec2& v);
    static Strategy seeded_random(std::uint64_t seed);

    // grammar: first-index | prefer-fibration[:lx,ly] | prefer-ray:x,y | random
    static Strategy parse(const std::string& text);
    std::string to_string() const;
};

struct MoriFiberSpace {
    BaseKind base;                  // P1 or Point
    std::optional<IVec2> form;      // P1 only
    std::vector<int> fiber_rays;    // P1: rays with form(v) != 0
    int contracted_ray = -1;        // representative negative class (P1)
    Rat degree;                     // (K+Delta) . C on the contracted class
};

// Mori fiber space structure if one exists: the point case at rho = 1 with
// -(K+Delta) ample, the P1 case when a negative extremal fiber class with
// C^2 = 0 exists. Scan order over section pairs is by ray index; the form is
// sign-normalized to be lexicographically maximal.
std::optional<MoriFiberSpace> detect_mori_fiber(const LogPair& pair,
                                                const std::optional<IVec2>& preferred_form = {});

struct MMPStep {
    enum class Kind { Divisorial, MoriFiberP1, MoriFiberPoint };
    Kind kind;
    int ray_index = -1;      // divisorial: index in the fan at that step
    int ray_orig = -1;       // divisorial: index in the starting fan
    IVec2 ray;               // divisorial: the contracted ray vector
    Rat degree;              // (K+Delta) . C at the step, < 0
    std::optional<IVec2> form;  // MoriFiberP1
};

enum class Terminal { MinimalModel, MfsPoint, MfsP1 };

std::string terminal_name(Terminal t);  // minimal_model | mfs_point | mfs_p1

struct MMPTrace {
    LogPair start;
    std::vector<MMPStep> steps;
    LogPair final_pair;
    Terminal terminal;
    std::optional<IVec2> fibration_form;   // MfsP1
    std::vector<int> removed_orig;         // contracted rays as start-fan indices
    Strategy strategy;

    int divisorial_steps() const;
};

// pre: j in negative_extremal_rays(pair), C_j^2 < 0; the equivalence of
// C^2 < 0 with det(prev, next) > 0 is asserted at runtime
std::pair<LogPair, MMPStep> contract_divisorial(const LogPair& pair, int j);

MMPTrace run_mmp(const LogPair& pair, const Strategy& strategy);

// The ample model of K_Z + theta computed independently of any chamber data:
// run the MMP (first-index), then contract the ample model of the nef limit.
// pre: K_Z + theta pseudo-effective.
struct AmpleModelResult {
    std::vector<int> removed;   // start-fan ray indices, ascending
    BaseKind base;
    std::optional<IVec2> form;
};
AmpleModelResult ample_model_via_mmp(const ToricSurface& z, const TDivisor& theta);

}  // namespace mori
