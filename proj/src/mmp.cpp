#include "mori/mmp.hpp"

#include <algorithm>

namespace mori {

LogPair::LogPair(ToricSurface xx, TDivisor dd) : x(std::move(xx)), delta(std::move(dd)) {
    if (delta.size() != x.rays())
        throw DomainError("bad_pair", "boundary length does not match ray count");
    for (const auto& c : delta.c)
        if (c < 0) throw DomainError("bad_pair", "boundary must be effective");
}

bool LogPair::boundary_in_unit_interval() const {
    for (const auto& c : delta.c)
        if (c > 1) return false;
    return true;
}

bool ray_is_extremal(const ToricSurface& x, int j) {
    std::vector<Rat> target = curve_class(x, j);
    std::vector<std::vector<Rat>> others;
    for (int k = 0; k < x.rays(); ++k) {
        if (k == j) continue;
        std::vector<Rat> ck = curve_class(x, k);
        // skip generators positively proportional to the target
        Rat cross = 0;
        bool proportional = true;
        Rat dotp = 0;
        for (std::size_t i = 0; i < ck.size(); ++i) dotp += ck[i] * target[i];
        for (std::size_t a = 0; a < ck.size() && proportional; ++a)
            for (std::size_t b = a + 1; b < ck.size() && proportional; ++b) {
                cross = ck[a] * target[b] - ck[b] * target[a];
                if (cross != 0) proportional = false;
            }
        if (proportional && dotp > 0) continue;
        others.push_back(std::move(ck));
    }
    return !in_cone(others, target);
}

std::vector<int> negative_extremal_rays(const LogPair& pair) {
    TDivisor kd = pair.log_canonical();
    std::vector<int> out;
    for (int j = 0; j < pair.x.rays(); ++j) {
        if (intersect(pair.x, kd, j) >= 0) continue;
        if (ray_is_extremal(pair.x, j)) out.push_back(j);
    }
    return out;
}

Strategy Strategy::prefer_fibration(std::optional<IVec2> f) {
    Strategy s;
    s.kind = Kind::PreferFibration;
    s.form = f;
    return s;
}
Strategy Strategy::prefer_ray(const IVec2& v) {
    Strategy s;
    s.kind = Kind::PreferRay;
    s.ray = v;
    return s;
}
Strategy Strategy::seeded_random(std::uint64_t seed) {
    Strategy s;
    s.kind = Kind::SeededRandom;
    s.seed = seed;
    return s;
}

static IVec2 parse_vec(const std::string& body) {
    auto comma = body.find(',');
    if (comma == std::string::npos)
        throw DomainError("bad_strategy", "expected 'x,y' in strategy argument");
    return IVec2(parse_int(body.substr(0, comma)), parse_int(body.substr(comma + 1)));
}

Strategy Strategy::parse(const std::string& text) {
    if (text == "first-index") return first_index();
    if (text == "prefer-fibration") return prefer_fibration();
    if (text.rfind("prefer-fibration:", 0) == 0)
        return prefer_fibration(parse_vec(text.substr(17)));
    if (text.rfind("prefer-ray:", 0) == 0) return prefer_ray(parse_vec(text.substr(11)));
    if (text == "random") return seeded_random(0);
    if (text.rfind("random:", 0) == 0)
        return seeded_random(static_cast<std::uint64_t>(parse_int(text.substr(7)).convert_to<unsigned long long>()));
    throw DomainError("bad_strategy", "unknown strategy '" + text + "'");
}

std::string Strategy::to_string() const {
    switch (kind) {
        case Kind::FirstIndex:
            return "first-index";
        case Kind::PreferFibration:
            if (form) return "prefer-fibration:" + form->x.str() + "," + form->y.str();
            return "prefer-fibration";
        case Kind::PreferRay:
            return "prefer-ray:" + ray.x.str() + "," + ray.y.str();
        case Kind::SeededRandom:
            return "random:" + std::to_string(seed);
    }
    return "first-index";
}

std::string terminal_name(Terminal t) {
    switch (t) {
        case Terminal::MinimalModel: return "minimal_model";
        case Terminal::MfsPoint: return "mfs_point";
        case Terminal::MfsP1: return "mfs_p1";
    }
    return "minimal_model";
}

int MMPTrace::divisorial_steps() const {
    int n = 0;
    for (const auto& s : steps)
        if (s.kind == MMPStep::Kind::Divisorial) ++n;
    return n;
}

std::optional<MoriFiberSpace> detect_mori_fiber(const LogPair& pair,
                                                const std::optional<IVec2>& preferred_form) {
    const ToricSurface& x = pair.x;
    TDivisor kd = pair.log_canonical();

    if (x.picard_rank() == 1) {
        bool neg = true;
        Rat deg0;
        for (int j = 0; j < x.rays(); ++j) {
            Rat d = intersect(x, kd, j);
            if (j == 0) deg0 = d;
            if (d >= 0) neg = false;
        }
        if (!neg) return std::nullopt;
        MoriFiberSpace m;
        m.base = BaseKind::Point;
        m.degree = deg0;
        return m;
    }

    // P1 case needs rho(X / P1) = 1, i.e. exactly four rays
    if (x.rays() != 4) return std::nullopt;

    // candidate fibrations = opposite ray pairs, scanned by section index
    struct Candidate {
        IVec2 ell;
        std::vector<int> fibers;
        int rep;
        Rat degree;
    };
    std::vector<Candidate> found;
    for (int k = 0; k < x.rays(); ++k) {
        IVec2 opp = -x.fan().ray(k);
        int partner = x.fan().find_ray(opp);
        if (partner < k) continue;  // each unordered pair once, or no partner
        if (partner < 0) continue;
        IVec2 ell = make_primitive(IVec2(-x.fan().ray(k).y, x.fan().ray(k).x));
        if (lex_less(ell, -ell)) ell = -ell;
        Candidate c;
        c.ell = ell;
        int rep = -1;
        bool all_ok = true;
        for (int j = 0; j < x.rays(); ++j) {
            if (dot(ell, x.fan().ray(j)) == 0) continue;
            c.fibers.push_back(j);
            Rat d = intersect(x, kd, j);
            if (d >= 0 || !ray_is_extremal(x, j)) {
                all_ok = false;
                break;
            }
            if (rep < 0) {
                rep = j;
                c.degree = d;
            }
        }
        if (!all_ok || rep < 0) continue;
        c.rep = rep;
        found.push_back(std::move(c));
    }
    if (found.empty()) return std::nullopt;

    std::size_t pick = 0;
    if (preferred_form) {
        IVec2 p = make_primitive(*preferred_form);
        for (std::size_t i = 0; i < found.size(); ++i)
            if (found[i].ell == p || found[i].ell == -p) {
                pick = i;
                break;
            }
    }
    const Candidate& c = found[pick];
    MoriFiberSpace m;
    m.base = BaseKind::P1;
    m.form = c.ell;
    m.fiber_rays = c.fibers;
    m.contracted_ray = c.rep;
    m.degree = c.degree;
    // the projection must be fan-theoretically valid
    project_fan(x.fan(), c.ell);
    return m;
}

std::pair<LogPair, MMPStep> contract_divisorial(const LogPair& pair, int j) {
    const ToricSurface& x = pair.x;
    TDivisor kd = pair.log_canonical();
    Rat degree = intersect(x, kd, j);
    if (degree >= 0)
        throw DomainError("ray_not_negative", "contracted ray must have (K+D).C < 0");
    if (!ray_is_extremal(x, j))
        throw DomainError("ray_not_extremal", "contracted class is not extremal");

    Rat c2 = self_intersection(x, j);
    Int d = det(x.fan().ray(x.fan().prev(j)), x.fan().ray(x.fan().next(j)));
    // the two divisorial-contractibility tests must agree
    if ((c2 < 0) != (d > 0))
        throw DomainError("internal_inconsistency", "C^2 sign disagrees with neighbor det");
    if (c2 >= 0)
        throw DomainError("ray_not_divisorial",
                          "C^2 >= 0 signals a fibration, not a divisorial contraction");

    FanMap m = remove_ray(x.fan(), j);
    std::vector<Rat> nd;
    for (int i = 0; i < x.rays(); ++i)
        if (i != j) nd.push_back(pair.delta[i]);

    MMPStep step;
    step.kind = MMPStep::Kind::Divisorial;
    step.ray_index = j;
    step.ray = x.fan().ray(j);
    step.degree = degree;

    // target fan preserves the surviving ray order
    LogPair next(ToricSurface(*m.target), TDivisor(std::move(nd)));
    return {std::move(next), std::move(step)};
}

MMPTrace run_mmp(const LogPair& pair, const Strategy& strategy) {
    MMPTrace trace{pair, {}, pair, Terminal::MinimalModel, std::nullopt, {}, strategy};
    LogPair cur = pair;
    // current-fan index -> starting-fan index
    std::vector<int> orig(pair.x.rays());
    for (int i = 0; i < pair.x.rays(); ++i) orig[i] = i;
    SplitMix64 rng(strategy.seed);
    int guard = pair.x.rays() + 1;

    while (guard-- > 0) {
        std::vector<int> neg = negative_extremal_rays(cur);
        if (neg.empty()) {
            trace.terminal = Terminal::MinimalModel;
            break;
        }
        std::vector<int> divisorial;
        for (int j : neg) {
            Int d = det(cur.x.fan().ray(cur.x.fan().prev(j)), cur.x.fan().ray(cur.x.fan().next(j)));
            if (d > 0) divisorial.push_back(j);
        }
        std::optional<MoriFiberSpace> mfs = detect_mori_fiber(cur, strategy.form);

        bool do_mfs = false;
        int pick = -1;
        switch (strategy.kind) {
            case Strategy::Kind::FirstIndex:
                if (!divisorial.empty())
                    pick = divisorial[0];
                else
                    do_mfs = true;
                break;
            case Strategy::Kind::PreferFibration:
                if (mfs)
                    do_mfs = true;
                else if (!divisorial.empty())
                    pick = divisorial[0];
                break;
            case Strategy::Kind::PreferRay: {
                int want = cur.x.fan().find_ray(strategy.ray);
                if (want >= 0 &&
                    std::find(divisorial.begin(), divisorial.end(), want) != divisorial.end())
                    pick = want;
                else if (!divisorial.empty())
                    pick = divisorial[0];
                else
                    do_mfs = true;
                break;
            }
            case Strategy::Kind::SeededRandom: {
                std::size_t options = divisorial.size() + (mfs ? 1 : 0);
                if (options > 0) {
                    std::size_t i = static_cast<std::size_t>(rng.below(options));
                    if (i < divisorial.size())
                        pick = divisorial[i];
                    else
                        do_mfs = true;
                }
                break;
            }
        }
        if (!do_mfs && pick < 0) {
            // a negative extremal class is either divisorial or defines a
            // fibration; reaching neither indicates a bug
            if (!mfs && divisorial.empty())
                throw DomainError("internal_inconsistency",
                                  "negative extremal ray without contraction or fibration");
            if (mfs)
                do_mfs = true;
            else
                pick = divisorial[0];
        }

        if (do_mfs) {
            if (!mfs)
                throw DomainError("internal_inconsistency",
                                  "negative extremal ray without contraction or fibration");
            MMPStep step;
            step.degree = mfs->degree;
            if (mfs->base == BaseKind::Point) {
                step.kind = MMPStep::Kind::MoriFiberPoint;
                trace.terminal = Terminal::MfsPoint;
            } else {
                step.kind = MMPStep::Kind::MoriFiberP1;
                step.form = mfs->form;
                step.ray_index = mfs->contracted_ray;
                step.ray_orig = orig[mfs->contracted_ray];
                step.ray = cur.x.fan().ray(mfs->contracted_ray);
                trace.terminal = Terminal::MfsP1;
                trace.fibration_form = mfs->form;
            }
            trace.steps.push_back(std::move(step));
            break;
        }

        auto [next, step] = contract_divisorial(cur, pick);
        step.ray_orig = orig[pick];
        trace.removed_orig.push_back(orig[pick]);
        orig.erase(orig.begin() + pick);
        // picard rank must drop by exactly one
        if (next.x.picard_rank() != cur.x.picard_rank() - 1)
            throw DomainError("internal_inconsistency", "picard rank did not drop by 1");
        trace.steps.push_back(std::move(step));
        cur = std::move(next);
    }
    std::sort(trace.removed_orig.begin(), trace.removed_orig.end());
    trace.final_pair = cur;
    return trace;
}

AmpleModelResult ample_model_via_mmp(const ToricSurface& z, const TDivisor& theta) {
    LogPair pair(z, theta);
    MMPTrace t = run_mmp(pair, Strategy::first_index());
    if (t.terminal != Terminal::MinimalModel)
        throw DomainError("not_pseudo_effective",
                          "K+Theta is not pseudo-effective; no ample model");
    Contraction am = ample_model_of_nef(t.final_pair.x, t.final_pair.log_canonical());

    // lift the removed-ray set back to z's indexing
    std::vector<int> orig(z.rays());
    for (int i = 0; i < z.rays(); ++i) orig[i] = i;
    std::vector<int> removed = t.removed_orig;
    std::vector<int> kept;
    for (int i = 0; i < z.rays(); ++i)
        if (std::find(removed.begin(), removed.end(), i) == removed.end()) kept.push_back(i);
    for (int r : am.removed) removed.push_back(kept[r]);
    std::sort(removed.begin(), removed.end());

    AmpleModelResult out;
    out.removed = std::move(removed);
    out.base = am.base;
    out.form = am.form;
    return out;
}

}  // namespace mori
