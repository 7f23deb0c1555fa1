// Abstract numerical surface backend: a finite curve list with intersection
// matrix and K-degrees, contraction pushforward and an MMP loop mirroring
// the toric one. Cross-validated against the toric backend in the tests.
//
// This backend carries no geometry. Nef and extremality answers are relative
// to the declared curve list (the complete_cone flag travels with every
// trace), and fibration terminals are numerical statements only; nothing
// here certifies what the base of a fibration is.
#pragma once

#include "mori/mmp.hpp"

#include <string>
#include <vector>

namespace mori {

struct NumericalSurface {
    std::vector<std::string> labels;
    std::vector<std::vector<Rat>> q;  // symmetric, q[i][j] = C_i . C_j
    std::vector<Rat> kdeg;            // K . C_i
    // declared curves generate the cone of curves; carried into all reports
    bool complete_cone = true;

    int curves() const { return static_cast<int>(labels.size()); }
    void check() const;  // symmetry and dimension consistency

    // text format: `curve <label>`, `int <i> <j> <p/q>`, `kdeg <i> <p/q>`;
    // missing intersections default to 0
    static NumericalSurface from_text(const std::string& text);
    std::string to_text() const;
};

// exact pushforward under the contraction of curve k (Q[k][k] < 0):
//   Q'[i][j] = Q[i][j] - Q[i][k] Q[j][k] / Q[k][k]
//   kdeg'[i] = kdeg[i] - kdeg[k] Q[i][k] / Q[k][k]
// error "not_divisorially_contractible" when Q[k][k] >= 0
NumericalSurface contract_curve(const NumericalSurface& s, int k);

// degree vectors push forward by the same projection
std::vector<Rat> pushforward_degrees(const NumericalSurface& s, int k,
                                     const std::vector<Rat>& deg);

// is column j extremal in the cone spanned by all columns (Gram coordinates)?
bool curve_is_extremal(const NumericalSurface& s, int j);

struct NumStep {
    std::string label;
    Rat degree;
};

struct NumTrace {
    std::vector<NumStep> steps;       // divisorial contractions
    Terminal terminal;
    NumericalSurface final_surface;
    std::vector<Rat> final_delta_deg;
    bool complete_cone;               // the assumption flag, carried through

    std::vector<std::string> contracted_labels() const;
};

// same loop shape as run_mmp: negativity via kdeg + delta_deg, divisorial
// candidates via Q[k][k] < 0, fibration when a negative extremal class has
// Q[k][k] = 0, point when all classes are positively proportional and
// negative. The fibration pick is the lowest-index candidate.
NumTrace run_mmp_numerical(const NumericalSurface& s, const std::vector<Rat>& delta_deg,
                           const Strategy& strategy);

// export the invariant-curve data of a toric surface; labels are the ray
// indices printed in decimal
NumericalSurface export_numerical(const ToricSurface& x);

}  // namespace mori
