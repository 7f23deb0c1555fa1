#include "mori/sarkisov.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mori {

bool LinkMfs::matches(const LinkMfs& o) const {
    if (removed != o.removed || base != o.base) return false;
    if (base == BaseKind::P1) {
        if (!form || !o.form) return false;
        return *form == *o.form || *form == -*o.form;
    }
    return true;
}

LinkMfs mfs_of_trace(const MMPTrace& trace) {
    LinkMfs m;
    m.removed = trace.removed_orig;
    switch (trace.terminal) {
        case Terminal::MfsPoint:
            m.base = BaseKind::Point;
            break;
        case Terminal::MfsP1:
            m.base = BaseKind::P1;
            m.form = trace.fibration_form;
            break;
        case Terminal::MinimalModel:
            throw DomainError("not_mori_fiber_output",
                              "the run ends in a minimal model, not a Mori fiber space");
    }
    return m;
}

std::string link_type_name(SarkisovLink::Type t) {
    switch (t) {
        case SarkisovLink::Type::I: return "I";
        case SarkisovLink::Type::II: return "II";
        case SarkisovLink::Type::III: return "III";
        case SarkisovLink::Type::IV: return "IV";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// slice construction

namespace {

struct Side {
    LinkMfs mfs;
    Contraction f;
    TDivisor delta;      // pushforward of phi
    TDivisor fiber_div;  // on the total space; zero for point bases
};

Side make_side(const ToricSurface& z, const TDivisor& phi, const LinkMfs& mfs) {
    Side s{mfs, contract_rays(z, mfs.removed), TDivisor(), TDivisor()};
    s.delta = pushforward(s.f, phi);
    s.fiber_div = TDivisor::zero(s.f.reduced.rays());
    if (mfs.base == BaseKind::P1) {
        const Fan& fan = s.f.reduced.fan();
        for (int i = 0; i < fan.size(); ++i) {
            Int v = dot(*mfs.form, fan.ray(i));
            if (v > 0) s.fiber_div[i] = Rat(v);
        }
    }
    return s;
}

// smallest c = 2^k with -(K + delta) + c * fiber ample on the total space
Rat find_ample_constant(const Side& s) {
    const ToricSurface& x = s.f.reduced;
    TDivisor base = (canonical_divisor(x) + s.delta) * Rat(-1);
    if (s.mfs.base == BaseKind::Point) {
        if (!is_ample(x, base))
            throw DomainError("not_mori_fiber_output",
                              "-(K+Delta) is not ample on the point-base output");
        return Rat(0);
    }
    Rat c(1, 64);
    for (int k = 0; k < 40; ++k, c *= 2) {
        if (is_ample(x, base + s.fiber_div * c)) return c;
    }
    throw DomainError("internal_inconsistency", "no ample constant for the fibration side");
}

bool side_conditions(const ToricSurface& z, const TDivisor& phi, const Side& s, const Rat& c,
                     const TDivisor& h_full, const Rat& delta_scale) {
    // f must stay (K + phi + delta*H)-negative ...
    TDivisor kzh = canonical_divisor(z) + phi + h_full * delta_scale;
    TDivisor back = pullback(s.f, pushforward(s.f, kzh));
    for (int e : s.mfs.removed)
        if (kzh[e] - back[e] <= 0) return false;
    // ... and the relative anti-log class must stay ample after adding it
    const ToricSurface& x = s.f.reduced;
    TDivisor cls = (canonical_divisor(x) + s.delta + pushforward(s.f, h_full * delta_scale)) *
                       Rat(-1) +
                   s.fiber_div * c;
    return is_ample(x, cls);
}

TDivisor basis_divisor(const Side& s, const Rat& c, const TDivisor& h_full,
                       const Rat& delta_scale, const ToricSurface& z) {
    const ToricSurface& x = s.f.reduced;
    TDivisor cls = (canonical_divisor(x) + s.delta + pushforward(s.f, h_full * delta_scale)) *
                       Rat(-1) +
                   s.fiber_div * c;
    auto rep = effective_representation(x, cls);
    if (!rep)
        throw DomainError("internal_inconsistency", "ample class without effective member");
    return pullback(s.f, *rep);
}

Rat max_coefficient(const TDivisor& d) {
    Rat m = 0;
    for (const auto& v : d.c)
        if (v > m) m = v;
    return m;
}

// the Mori fiber edge piece realizing one end, if present and interior
std::optional<RVec2> find_endpoint(const Decomposition& d, const LinkMfs& end,
                                   std::string& why) {
    for (const auto& e : d.mfs_edges) {
        const ModelRecord& m = d.model_of_chamber(e.chamber);
        if (m.removed != end.removed) continue;
        if (e.base != end.base) continue;
        if (end.base == BaseKind::P1) {
            if (!e.form || !end.form) continue;
            if (!(*e.form == *end.form) && !(*e.form == -*end.form)) continue;
        }
        RVec2 p = midpoint(e.a, e.b);
        if (d.point_on_box_boundary(p)) {
            why = "endpoint segment lies on the coefficient box";
            continue;
        }
        return p;
    }
    if (why.empty()) why = "no boundary segment realizes the Mori fiber output";
    return std::nullopt;
}

}  // namespace

SliceBuild build_slice(const ToricSurface& z, const TDivisor& phi, const MMPTrace& run_a,
                       const MMPTrace& run_b, std::uint64_t seed) {
    LinkMfs end_a = mfs_of_trace(run_a);
    LinkMfs end_b = mfs_of_trace(run_b);
    Side side_a = make_side(z, phi, end_a);
    Side side_b = make_side(z, phi, end_b);

    // small ample divisor and an ample basis completing it
    TDivisor a_base = ample_divisor(z);
    while (max_coefficient(a_base) > Rat(1, 4)) a_base = a_base * Rat(1, 2);
    std::vector<TDivisor> h_parts;
    {
        Rat eps(1, 2);
        bool ok = false;
        for (int it = 0; it < 40 && !ok; ++it, eps /= 2) {
            h_parts.clear();
            ok = true;
            for (int b : z.class_basis()) {
                TDivisor h = a_base + TDivisor::unit(z.rays(), b) * eps;
                if (!is_ample(z, h)) {
                    ok = false;
                    break;
                }
                h_parts.push_back(h);
            }
        }
        if (!ok)
            throw DomainError("internal_inconsistency", "no ample basis perturbation found");
    }
    TDivisor h_full = a_base;
    for (const auto& h : h_parts) h_full = h_full + h;

    Rat c_a = find_ample_constant(side_a);
    Rat c_b = find_ample_constant(side_b);

    Rat delta(1);
    bool found = false;
    for (int m = 0; m < 40; ++m, delta /= 2) {
        if (side_conditions(z, phi, side_a, c_a, h_full, delta) &&
            side_conditions(z, phi, side_b, c_b, h_full, delta)) {
            found = true;
            break;
        }
    }
    if (!found)
        throw DomainError("perturbation_budget_exhausted",
                          "no scale keeps both runs negative and relatively ample");

    TDivisor f_div = basis_divisor(side_a, c_a, h_full, delta, z);
    TDivisor g_div = basis_divisor(side_b, c_b, h_full, delta, z);

    // slice ample part small enough that B stays effective at the endpoints
    TDivisor a_slice = a_base * (delta / 2);
    TDivisor b1 = f_div + h_full * delta - a_slice;
    TDivisor b2 = g_div + h_full * delta - a_slice;

    Rat need = std::max(max_coefficient(phi + f_div + h_full * delta),
                        max_coefficient(phi + g_div + h_full * delta));
    Rat cap(4);
    while (cap < need * 2) cap *= 2;

    std::string last_reason = "degenerate slice";
    SplitMix64 rng(seed ^ 0x5eed5eedULL);
    Rat scale(1, 10);
    for (int round = 0; round <= 8; ++round) {
        Slice slice{z, a_slice, phi, b1, b2, cap};
        if (round > 0) {
            // seeded perturbation with denominators 1/10, 1/100, ...
            TDivisor p1 = TDivisor::zero(z.rays());
            TDivisor p2 = TDivisor::zero(z.rays());
            for (int i = 0; i < z.rays(); ++i) {
                p1[i] = Rat(Int(rng.below(10)), Int(10));
                p2[i] = Rat(Int(rng.below(10)), Int(10));
            }
            slice.b1 = b1 + p1 * scale;
            slice.b2 = b2 + p2 * scale;
            scale /= 10;
        }
        try {
            Decomposition d = decompose(slice);
            std::string why;
            auto t0 = find_endpoint(d, end_a, why);
            if (!t0) {
                last_reason = "runA side: " + why;
                continue;
            }
            why.clear();
            auto t1 = find_endpoint(d, end_b, why);
            if (!t1) {
                last_reason = "runB side: " + why;
                continue;
            }
            return SliceBuild{slice, std::move(d), *t0, *t1, end_a, end_b, round};
        } catch (const DomainError& e) {
            if (e.code() == "degenerate_slice" || e.code() == "empty_slice") {
                last_reason = e.what();
                continue;
            }
            throw;
        }
    }
    throw DomainError("perturbation_budget_exhausted", last_reason);
}

// ---------------------------------------------------------------------------
// boundary walk

namespace {

struct ArcPos {
    int edge;
    Rat t;  // squared-length parameter along the edge, 0 <= t < full
};

bool pos_less(const ArcPos& a, const ArcPos& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.t < b.t;
}

// canonical position of p on the boundary cycle; vertices sit at t = 0
std::optional<ArcPos> locate(const Polytope& e, const RVec2& p) {
    const auto& v = e.vertices();
    int m = static_cast<int>(v.size());
    for (int i = 0; i < m; ++i)
        if (p == v[i]) return ArcPos{i, Rat(0)};
    for (int i = 0; i < m; ++i) {
        const RVec2& a = v[i];
        const RVec2& b = v[(i + 1) % m];
        if (!on_segment(p, a, b) || p == b) continue;
        Rat t = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
        return ArcPos{i, t};
    }
    return std::nullopt;
}

struct Marker {
    ArcPos pos;
    RVec2 p;
};

}  // namespace

static std::vector<RVec2> walk_polyline(const Decomposition& d, const RVec2& theta0,
                                         const RVec2& theta1) {
    if (d.e_region.dim() != 2)
        throw DomainError("degenerate_slice", "effective region is not two-dimensional");
    auto p0 = locate(d.e_region, theta0);
    auto p1 = locate(d.e_region, theta1);
    if (!p0 || !p1)
        throw DomainError("endpoint_not_on_boundary",
                          "trace endpoints must lie on the boundary of E");
    if (d.point_on_box_boundary(theta0) || d.point_on_box_boundary(theta1))
        throw DomainError("endpoint_on_box", "trace endpoints must be interior to the box");

    const auto& verts = d.e_region.vertices();
    int m = static_cast<int>(verts.size());

    // markers: polygon vertices and chamber vertices on the boundary
    std::vector<Marker> markers;
    auto add_marker = [&](const RVec2& p) {
        auto pos = locate(d.e_region, p);
        if (!pos) return;
        for (const auto& mk : markers)
            if (mk.p == p) return;
        markers.push_back(Marker{*pos, p});
    };
    for (const auto& v : verts) add_marker(v);
    for (const auto& ch : d.chambers)
        for (const auto& v : ch.poly.vertices()) add_marker(v);
    std::sort(markers.begin(), markers.end(),
              [](const Marker& a, const Marker& b) { return pos_less(a.pos, b.pos); });

    auto edge_on_box = [&](int i) {
        const RVec2& a = verts[i];
        const RVec2& b = verts[(i + 1) % m];
        for (const auto& h : d.box.constraints())
            if (h.active_at(a) && h.active_at(b)) return true;
        return false;
    };

    // the arc ccw from `from` to `to`: interior markers and traversed edges
    struct Arc {
        std::vector<RVec2> points;
        std::vector<int> edges;
        bool valid = true;
    };
    auto make_arc = [&](const ArcPos& from, const RVec2& fp, const ArcPos& to,
                        const RVec2& tp) {
        Arc arc;
        if (fp == tp) return arc;  // empty walk
        // interior markers, cyclically between from and to
        for (const auto& mk : markers) {
            if (mk.p == fp || mk.p == tp) continue;
            bool between;
            if (pos_less(from, to))
                between = pos_less(from, mk.pos) && pos_less(mk.pos, to);
            else
                between = pos_less(from, mk.pos) || pos_less(mk.pos, to);
            if (between) arc.points.push_back(mk.p);
        }
        // not sorted cyclically yet when wrapping; fix by sorting with the
        // shifted key
        std::sort(arc.points.begin(), arc.points.end(), [&](const RVec2& x, const RVec2& y) {
            ArcPos px = *locate(d.e_region, x);
            ArcPos py = *locate(d.e_region, y);
            auto shift = [&](ArcPos q) {
                int e = q.edge - from.edge;
                if (e < 0 || (e == 0 && q.t < from.t)) e += m;
                return std::make_pair(e, q.t);
            };
            return shift(px) < shift(py);
        });
        // traversed edges
        int e = from.edge;
        while (true) {
            arc.edges.push_back(e);
            if (e == to.edge) {
                bool wraps = !pos_less(from, to) && !(from.edge == to.edge && from.t == to.t);
                if (!wraps || arc.edges.size() > 1) break;
            }
            e = (e + 1) % m;
            if ((int)arc.edges.size() > m + 1) break;
        }
        for (int ei : arc.edges)
            if (edge_on_box(ei)) arc.valid = false;
        return arc;
    };

    Arc fwd = make_arc(*p0, theta0, *p1, theta1);
    Arc bwd = make_arc(*p1, theta1, *p0, theta0);
    std::reverse(bwd.points.begin(), bwd.points.end());

    const Arc* arc = nullptr;
    if (fwd.valid && (!bwd.valid || fwd.points.size() <= bwd.points.size()))
        arc = &fwd;
    else if (bwd.valid)
        arc = &bwd;
    else
        throw DomainError("no_interior_path",
                          "both boundary arcs meet the coefficient box");

    std::vector<RVec2> walk;
    walk.push_back(theta0);
    for (const auto& p : arc->points) walk.push_back(p);
    walk.push_back(theta1);
    return walk;
}

std::vector<RVec2> boundary_walk(const Decomposition& d, const RVec2& theta0,
                                 const RVec2& theta1) {
    return walk_polyline(d, theta0, theta1);
}

std::vector<BoundaryPoint> trace_boundary(const Decomposition& d, const RVec2& theta0,
                                          const RVec2& theta1) {
    std::vector<RVec2> walk = walk_polyline(d, theta0, theta1);

    // flank identity: the unique Mori fiber edge piece containing a point
    auto flank_edge = [&](const RVec2& p) {
        for (std::size_t i = 0; i < d.mfs_edges.size(); ++i)
            if (on_segment(p, d.mfs_edges[i].a, d.mfs_edges[i].b)) return static_cast<int>(i);
        throw DomainError("internal_inconsistency",
                          "boundary flank without a Mori fiber structure");
    };
    auto same_flank = [&](int i, int j) {
        const MfsEdge& x = d.mfs_edges[i];
        const MfsEdge& y = d.mfs_edges[j];
        if (x.chamber != y.chamber || x.base != y.base) return false;
        if (x.base == BaseKind::P1)
            return *x.form == *y.form || *x.form == -*y.form;
        return true;
    };

    std::vector<BoundaryPoint> out;
    for (std::size_t i = 1; i + 1 < walk.size(); ++i) {
        RVec2 before_mid = midpoint(walk[i - 1], walk[i]);
        RVec2 after_mid = midpoint(walk[i], walk[i + 1]);
        int before = flank_edge(before_mid);
        int after = flank_edge(after_mid);
        if (same_flank(before, after)) continue;

        BoundaryPoint bp;
        bp.p = walk[i];
        bp.near_edge = before;
        bp.far_edge = after;
        // incident two-dimensional chambers, chained from the near side
        std::vector<int> incident;
        for (int c : d.chambers_containing(walk[i]))
            if (d.chambers[c].dim == 2) incident.push_back(c);
        int start = d.mfs_edges[before].chamber;
        int goal = d.mfs_edges[after].chamber;
        std::vector<int> ordered{start};
        std::vector<bool> used(d.chambers.size(), false);
        used[start] = true;
        while (ordered.back() != goal) {
            int cur = ordered.back();
            int next = -1;
            for (const auto& w : d.walls) {
                if (!(w.a == walk[i]) && !(w.b == walk[i])) continue;
                int other = -1;
                if (w.chamber_i == cur) other = w.chamber_j;
                if (w.chamber_j == cur) other = w.chamber_i;
                if (other < 0 || used[other]) continue;
                next = other;
                break;
            }
            if (next < 0)
                throw DomainError("internal_inconsistency",
                                  "cannot chain chambers around a boundary point");
            ordered.push_back(next);
            used[next] = true;
        }
        if (ordered.size() != incident.size())
            throw DomainError("internal_inconsistency",
                              "chamber chain misses incident chambers");
        if (ordered.size() > 3)
            throw DomainError("internal_inconsistency",
                              "more than three chambers at a boundary point");
        bp.chambers = std::move(ordered);
        out.push_back(std::move(bp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// classification and verification

SarkisovLink classify_link(const Decomposition& d, const BoundaryPoint& bp) {
    const MfsEdge& near_e = d.mfs_edges[bp.near_edge];
    const MfsEdge& far_e = d.mfs_edges[bp.far_edge];
    auto mfs_of_edge = [&](const MfsEdge& e) {
        return LinkMfs{d.model_of_chamber(e.chamber).removed, e.base, e.form};
    };

    SarkisovLink link;
    link.point = bp.p;
    link.chamber_models = bp.chambers;
    link.near = mfs_of_edge(near_e);
    link.far = mfs_of_edge(far_e);

    auto removed_of = [&](int chamber) { return d.model_of_chamber(chamber).removed; };
    auto arrow = [&](int shallow, int deep) {
        auto s = removed_of(shallow);
        auto t = removed_of(deep);
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end()) ||
            t.size() != s.size() + 1)
            throw DomainError("internal_inconsistency",
                              "link arrow is not a single divisorial contraction");
        int ray = -1;
        for (int r : t)
            if (std::find(s.begin(), s.end(), r) == s.end()) ray = r;
        return LinkArrow{s, t, ray};
    };

    std::size_t k = bp.chambers.size();
    if (k == 1) {
        if (near_e.base != BaseKind::P1 || far_e.base != BaseKind::P1)
            throw DomainError("internal_inconsistency",
                              "single-chamber boundary point without two fibrations");
        link.type = SarkisovLink::Type::IV;
    } else if (k == 2) {
        bool near_point = near_e.base == BaseKind::Point;
        bool far_point = far_e.base == BaseKind::Point;
        if (near_point == far_point)
            throw DomainError("internal_inconsistency",
                              "two-chamber boundary point needs one point base and one P1");
        if (near_point) {
            link.type = SarkisovLink::Type::I;
            link.arrows.push_back(arrow(bp.chambers[1], bp.chambers[0]));
        } else {
            link.type = SarkisovLink::Type::III;
            link.arrows.push_back(arrow(bp.chambers[0], bp.chambers[1]));
        }
    } else if (k == 3) {
        link.type = SarkisovLink::Type::II;
        link.arrows.push_back(arrow(bp.chambers[1], bp.chambers[0]));
        link.arrows.push_back(arrow(bp.chambers[1], bp.chambers[2]));
        LinkMfs nn = link.near, ff = link.far;
        if (nn.base != ff.base)
            throw DomainError("internal_inconsistency", "type II bases disagree");
        if (nn.base == BaseKind::P1 &&
            !(*nn.form == *ff.form || *nn.form == -*ff.form))
            throw DomainError("internal_inconsistency", "type II fibration forms disagree");
    } else {
        throw DomainError("internal_inconsistency",
                          "boundary point with more than three chambers");
    }
    return link;
}

VerifyReport verify_link(const Decomposition& d, const SarkisovLink& link) {
    VerifyReport rep;
    int n = d.slice.z.rays();
    auto rho_of = [&](const std::vector<int>& removed) {
        return (n - static_cast<int>(removed.size())) - 2;
    };

    // (a) Mori fiber legs have relative Picard rank one
    auto check_leg = [&](const LinkMfs& leg, const char* name) {
        int rho = rho_of(leg.removed);
        int expect = leg.base == BaseKind::P1 ? 2 : 1;
        if (rho != expect)
            rep.fail(std::string(name) + ": Mori fiber leg has relative rank " +
                     std::to_string(rho - (leg.base == BaseKind::P1 ? 1 : 0)));
        // (c) fibration bases are P^1
        if (leg.base == BaseKind::P1) {
            if (!leg.form) {
                rep.fail(std::string(name) + ": fibration without a form");
            } else {
                Contraction c = contract_rays(d.slice.z, leg.removed);
                try {
                    project_fan(c.reduced.fan(), *leg.form);
                } catch (const DomainError& e) {
                    rep.fail(std::string(name) + ": base is not P1 (" + e.what() + ")");
                }
            }
        }
    };
    check_leg(link.near, "near");
    check_leg(link.far, "far");

    // (a) + (b) divisorial arrows are single-ray contractions
    for (const auto& ar : link.arrows) {
        if (ar.to_removed.size() != ar.from_removed.size() + 1 ||
            !std::includes(ar.to_removed.begin(), ar.to_removed.end(),
                           ar.from_removed.begin(), ar.from_removed.end()))
            rep.fail("arrow is not a relative-rank-one divisorial contraction");
        if (ar.ray < 0 || ar.ray >= n ||
            std::find(ar.to_removed.begin(), ar.to_removed.end(), ar.ray) ==
                ar.to_removed.end())
            rep.fail("arrow contracts an unknown ray");
    }

    // (d) removed-set commutation per type
    auto removed = [&](int idx) { return d.model_of_chamber(idx).removed; };
    switch (link.type) {
        case SarkisovLink::Type::IV: {
            if (link.chamber_models.size() != 1) rep.fail("type IV needs one chamber");
            if (!link.arrows.empty()) rep.fail("type IV has no divisorial arrow");
            if (link.near.base != BaseKind::P1 || link.far.base != BaseKind::P1)
                rep.fail("type IV needs two fibrations");
            else if (link.near.form && link.far.form &&
                     (*link.near.form == *link.far.form ||
                      *link.near.form == -*link.far.form))
                rep.fail("type IV fibrations coincide");
            break;
        }
        case SarkisovLink::Type::I:
        case SarkisovLink::Type::III: {
            if (link.chamber_models.size() != 2) rep.fail("types I/III need two chambers");
            bool near_point = link.near.base == BaseKind::Point;
            if ((link.type == SarkisovLink::Type::I) != near_point)
                rep.fail("type I starts at the point-base side");
            if (link.arrows.size() != 1) rep.fail("types I/III carry one arrow");
            break;
        }
        case SarkisovLink::Type::II: {
            if (link.chamber_models.size() != 3) rep.fail("type II needs three chambers");
            if (link.arrows.size() != 2) rep.fail("type II carries two arrows");
            if (link.chamber_models.size() == 3 && link.arrows.size() == 2) {
                auto mid = removed(link.chamber_models[1]);
                if (link.arrows[0].from_removed != mid || link.arrows[1].from_removed != mid)
                    rep.fail("type II arrows do not share the middle model");
            }
            if (link.near.base != link.far.base) rep.fail("type II bases disagree");
            break;
        }
    }
    return rep;
}

LinkChain decompose_sarkisov(const ToricSurface& z, const TDivisor& phi,
                             const Strategy& strategy_a, const Strategy& strategy_b,
                             std::uint64_t seed) {
    LogPair pair(z, phi);
    MMPTrace run_a = run_mmp(pair, strategy_a);
    MMPTrace run_b = run_mmp(pair, strategy_b);
    SliceBuild build = build_slice(z, phi, run_a, run_b, seed);
    std::vector<BoundaryPoint> points =
        trace_boundary(build.decomp, build.theta0, build.theta1);

    LinkChain chain{{}, build.end_a, build.end_b, std::move(build)};
    for (const auto& bp : points) {
        SarkisovLink link = classify_link(chain.build.decomp, bp);
        VerifyReport rep = verify_link(chain.build.decomp, link);
        if (!rep.ok) {
            std::string msg = "link verification failed:";
            for (const auto& f : rep.failures) msg += " " + f + ";";
            throw DomainError("internal_inconsistency", msg);
        }
        chain.links.push_back(std::move(link));
    }

    // endpoint fidelity and chain well-formedness
    if (chain.links.empty()) {
        if (!chain.end_a.matches(chain.end_b))
            throw DomainError("internal_inconsistency",
                              "empty chain between distinct Mori fiber spaces");
    } else {
        auto mismatch = [&](const LinkMfs& got, const LinkMfs& want, const char* which) {
            ToricSurface tg = contract_rays(z, got.removed).reduced;
            ToricSurface tw = contract_rays(z, want.removed).reduced;
            throw DomainError("internal_inconsistency",
                              std::string("chain does not match ") + which +
                                  "; chain end:\n" + tg.fan().to_text() + "expected:\n" +
                                  tw.fan().to_text());
        };
        if (!chain.links.front().near.matches(chain.end_a))
            mismatch(chain.links.front().near, chain.end_a, "runA");
        if (!chain.links.back().far.matches(chain.end_b))
            mismatch(chain.links.back().far, chain.end_b, "runB");
        for (std::size_t i = 0; i + 1 < chain.links.size(); ++i)
            if (!chain.links[i].far.matches(chain.links[i + 1].near))
                throw DomainError("internal_inconsistency",
                                  "consecutive links do not share a Mori fiber space");
    }
    return chain;
}

// ---------------------------------------------------------------------------
// scenarios

TDivisor Scenario::phi() const {
    TDivisor d = TDivisor::zero(fan.size());
    for (const auto& [i, v] : phi_entries) {
        if (i < 0 || i >= fan.size())
            throw DomainError("bad_scenario", "phi index out of range");
        d[i] = v;
    }
    return d;
}

Scenario parse_scenario(const std::string& text, const std::string& base_dir) {
    Scenario sc;
    bool have_fan = false, have_a = false, have_b = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "fan") {
            std::string path;
            if (!(ls >> path)) throw DomainError("bad_scenario", "fan needs a path");
            std::string full = path;
            if (!base_dir.empty() && path.front() != '/') full = base_dir + "/" + path;
            std::ifstream f(full);
            if (!f) throw DomainError("bad_scenario", "cannot read fan file '" + full + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            sc.fan = Fan::from_text(buf.str());
            have_fan = true;
        } else if (word == "phi") {
            std::string i, v;
            if (!(ls >> i >> v)) throw DomainError("bad_scenario", "phi needs <i> <p/q>");
            sc.phi_entries.emplace_back(static_cast<int>(parse_int(i).convert_to<long>()),
                                        parse_rat(v));
        } else if (word == "runA" || word == "runB") {
            std::string value;
            if (!(ls >> value) || value.rfind("strategy=", 0) != 0)
                throw DomainError("bad_scenario", word + " needs strategy=<rule>");
            Strategy st = Strategy::parse(value.substr(9));
            (word == "runA" ? sc.strategy_a : sc.strategy_b) = st;
            (word == "runA" ? have_a : have_b) = true;
        } else if (word == "seed") {
            std::string v;
            if (!(ls >> v)) throw DomainError("bad_scenario", "seed needs an integer");
            sc.seed = static_cast<std::uint64_t>(parse_int(v).convert_to<unsigned long long>());
        } else {
            throw DomainError("bad_scenario", "unknown directive '" + word + "'");
        }
    }
    if (!have_fan) throw DomainError("bad_scenario", "scenario needs a fan");
    if (!have_a || !have_b) throw DomainError("bad_scenario", "scenario needs runA and runB");
    return sc;
}

}  // namespace mori
