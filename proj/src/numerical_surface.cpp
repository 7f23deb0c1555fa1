#include "mori/numerical_surface.hpp"

#include <sstream>

namespace mori {

void NumericalSurface::check() const {
    std::size_t n = labels.size();
    if (q.size() != n || kdeg.size() != n)
        throw DomainError("bad_surface", "inconsistent dimensions");
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i].size() != n) throw DomainError("bad_surface", "inconsistent dimensions");
        for (std::size_t j = 0; j < i; ++j)
            if (q[i][j] != q[j][i])
                throw DomainError("bad_surface", "intersection matrix is not symmetric");
    }
}

NumericalSurface NumericalSurface::from_text(const std::string& text) {
    NumericalSurface s;
    std::istringstream is(text);
    std::string line;
    struct Entry {
        int i, j;
        Rat v;
    };
    std::vector<Entry> ints;
    std::vector<std::pair<int, Rat>> kds;
    while (std::getline(is, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "curve") {
            std::string label;
            if (!(ls >> label)) throw DomainError("bad_surface_file", "curve needs a label");
            s.labels.push_back(label);
        } else if (word == "int") {
            std::string a, b, v;
            if (!(ls >> a >> b >> v))
                throw DomainError("bad_surface_file", "int needs <i> <j> <p/q>");
            ints.push_back({static_cast<int>(parse_int(a).convert_to<long>()),
                            static_cast<int>(parse_int(b).convert_to<long>()), parse_rat(v)});
        } else if (word == "kdeg") {
            std::string a, v;
            if (!(ls >> a >> v)) throw DomainError("bad_surface_file", "kdeg needs <i> <p/q>");
            kds.emplace_back(static_cast<int>(parse_int(a).convert_to<long>()), parse_rat(v));
        } else {
            throw DomainError("bad_surface_file", "unknown directive '" + word + "'");
        }
    }
    int n = s.curves();
    if (n == 0) throw DomainError("bad_surface_file", "no curves declared");
    s.q.assign(n, std::vector<Rat>(n, Rat(0)));
    s.kdeg.assign(n, Rat(0));
    for (const auto& e : ints) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw DomainError("bad_surface_file", "intersection index out of range");
        s.q[e.i][e.j] = e.v;
        s.q[e.j][e.i] = e.v;
    }
    for (const auto& [i, v] : kds) {
        if (i < 0 || i >= n) throw DomainError("bad_surface_file", "kdeg index out of range");
        s.kdeg[i] = v;
    }
    s.check();
    return s;
}

std::string NumericalSurface::to_text() const {
    std::ostringstream os;
    for (const auto& l : labels) os << "curve " << l << "\n";
    for (int i = 0; i < curves(); ++i)
        for (int j = i; j < curves(); ++j)
            if (q[i][j] != 0) os << "int " << i << " " << j << " " << rat_str(q[i][j]) << "\n";
    for (int i = 0; i < curves(); ++i)
        if (kdeg[i] != 0) os << "kdeg " << i << " " << rat_str(kdeg[i]) << "\n";
    return os.str();
}

NumericalSurface contract_curve(const NumericalSurface& s, int k) {
    s.check();
    if (k < 0 || k >= s.curves()) throw DomainError("bad_index", "curve index out of range");
    if (s.q[k][k] >= 0)
        throw DomainError("not_divisorially_contractible",
                          "contracted curve needs negative self-intersection");
    NumericalSurface out;
    out.complete_cone = s.complete_cone;
    for (int i = 0; i < s.curves(); ++i)
        if (i != k) out.labels.push_back(s.labels[i]);
    int n = out.curves();
    out.q.assign(n, std::vector<Rat>(n));
    out.kdeg.assign(n, Rat(0));
    auto old = [&](int i) { return i < k ? i : i + 1; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out.q[i][j] =
                s.q[old(i)][old(j)] - s.q[old(i)][k] * s.q[old(j)][k] / s.q[k][k];
        out.kdeg[i] = s.kdeg[old(i)] - s.kdeg[k] * s.q[old(i)][k] / s.q[k][k];
    }
    return out;
}

std::vector<Rat> pushforward_degrees(const NumericalSurface& s, int k,
                                     const std::vector<Rat>& deg) {
    std::vector<Rat> out;
    for (int i = 0; i < s.curves(); ++i) {
        if (i == k) continue;
        out.push_back(deg[i] - deg[k] * s.q[i][k] / s.q[k][k]);
    }
    return out;
}

// positively proportional Gram columns represent the same ray of the cone
static bool positively_proportional(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat dotp = 0;
    for (std::size_t i = 0; i < a.size(); ++i) dotp += a[i] * b[i];
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] - a[j] * b[i] != 0) return false;
    return dotp > 0;
}

bool curve_is_extremal(const NumericalSurface& s, int j) {
    int n = s.curves();
    std::vector<Rat> target = s.q[j];
    std::vector<std::vector<Rat>> others;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        if (positively_proportional(s.q[k], target)) continue;
        others.push_back(s.q[k]);
    }
    return !in_cone(others, target);
}

std::vector<std::string> NumTrace::contracted_labels() const {
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.label);
    return out;
}

NumTrace run_mmp_numerical(const NumericalSurface& start, const std::vector<Rat>& delta_deg,
                           const Strategy& strategy) {
    NumericalSurface s = start;
    s.check();
    if ((int)delta_deg.size() != s.curves())
        throw DomainError("bad_surface", "delta degree vector length mismatch");
    std::vector<Rat> ddeg = delta_deg;
    NumTrace trace{{}, Terminal::MinimalModel, s, ddeg, s.complete_cone};
    SplitMix64 rng(strategy.seed);
    int guard = s.curves() + 1;

    while (guard-- > 0) {
        int n = s.curves();
        std::vector<int> neg;
        for (int j = 0; j < n; ++j) {
            if (s.kdeg[j] + ddeg[j] >= 0) continue;
            if (curve_is_extremal(s, j)) neg.push_back(j);
        }
        if (neg.empty()) {
            trace.terminal = Terminal::MinimalModel;
            break;
        }
        std::vector<int> divisorial, fibration;
        for (int j : neg) {
            if (s.q[j][j] < 0) divisorial.push_back(j);
            if (s.q[j][j] == 0) fibration.push_back(j);
        }

        bool terminate_fib = false, terminate_point = false;
        int pick = -1;
        auto point_possible = [&]() {
            for (int i = 0; i < n; ++i) {
                if (s.kdeg[i] + ddeg[i] >= 0) return false;
                if (!positively_proportional(s.q[i], s.q[0])) return false;
            }
            return true;
        };
        switch (strategy.kind) {
            case Strategy::Kind::FirstIndex:
            case Strategy::Kind::PreferRay:  // ray vectors do not exist here
                if (!divisorial.empty())
                    pick = divisorial[0];
                else if (!fibration.empty())
                    terminate_fib = true;
                else
                    terminate_point = true;
                break;
            case Strategy::Kind::PreferFibration:
                if (!fibration.empty())
                    terminate_fib = true;
                else if (point_possible())
                    terminate_point = true;
                else if (!divisorial.empty())
                    pick = divisorial[0];
                break;
            case Strategy::Kind::SeededRandom: {
                bool mfs = !fibration.empty() || point_possible();
                std::size_t options = divisorial.size() + (mfs ? 1 : 0);
                if (options > 0) {
                    std::size_t i = static_cast<std::size_t>(rng.below(options));
                    if (i < divisorial.size())
                        pick = divisorial[i];
                    else if (!fibration.empty())
                        terminate_fib = true;
                    else
                        terminate_point = true;
                }
                break;
            }
        }
        if (pick < 0 && !terminate_fib && !terminate_point)
            throw DomainError("internal_inconsistency",
                              "negative class without contraction or fibration");

        if (terminate_fib) {
            trace.terminal = Terminal::MfsP1;
            break;
        }
        if (terminate_point) {
            if (!point_possible())
                throw DomainError("internal_inconsistency",
                                  "point termination without a negative proportional cone");
            trace.terminal = Terminal::MfsPoint;
            break;
        }
        trace.steps.push_back(NumStep{s.labels[pick], s.kdeg[pick] + ddeg[pick]});
        ddeg = pushforward_degrees(s, pick, ddeg);
        s = contract_curve(s, pick);
        // symmetry survives every contraction
        s.check();
    }
    trace.final_surface = s;
    trace.final_delta_deg = ddeg;
    return trace;
}

NumericalSurface export_numerical(const ToricSurface& x) {
    NumericalSurface s;
    int n = x.rays();
    for (int i = 0; i < n; ++i) s.labels.push_back(std::to_string(i));
    s.q.assign(n, std::vector<Rat>(n));
    s.kdeg.assign(n, Rat(0));
    TDivisor k = canonical_divisor(x);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            s.q[i][j] = intersect(x, TDivisor::unit(n, i), j);
        s.kdeg[i] = intersect(x, k, i);
    }
    s.check();
    return s;
}

}  // namespace mori
