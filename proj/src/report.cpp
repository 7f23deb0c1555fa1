#include "mori/report.hpp"

#include <json.hpp>

#include <cstdio>

namespace mori {

using nlohmann::json;

namespace {

json jvec(const IVec2& v) { return json::array({v.x.str(), v.y.str()}); }
json jpoint(const RVec2& p) { return json::array({rat_str(p.x), rat_str(p.y)}); }

json jdivisor(const TDivisor& d) {
    json a = json::array();
    for (const auto& c : d.c) a.push_back(rat_str(c));
    return a;
}

json jints(const std::vector<int>& v) {
    json a = json::array();
    for (int x : v) a.push_back(std::to_string(x));
    return a;
}

json jfan(const Fan& f) {
    json rays = json::array();
    for (const auto& r : f.rays()) rays.push_back(jvec(r));
    json mults = json::array();
    for (const auto& m : f.multiplicities()) mults.push_back(m.str());
    return json{{"multiplicities", mults}, {"rays", rays}};
}

const char* base_name(BaseKind b) {
    switch (b) {
        case BaseKind::Surface: return "surface";
        case BaseKind::P1: return "p1";
        case BaseKind::Point: return "point";
    }
    return "surface";
}

json jmfs(const LinkMfs& m) {
    json o{{"base", base_name(m.base)}, {"removed_rays", jints(m.removed)}};
    if (m.form) o["form"] = jvec(*m.form);
    return o;
}

void put_meta(json& o, const ReportMeta& meta) {
    o["input_digest"] = meta.digest;
    o["seed"] = meta.seed;
    o["version"] = kToolVersion;
}

std::string dump(const json& o) { return o.dump(2) + "\n"; }

}  // namespace

ReportMeta make_meta(const std::string& input_bytes, std::uint64_t seed) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(input_bytes)));
    return ReportMeta{buf, std::to_string(seed)};
}

std::string fan_report(const Fan& fan, const ReportMeta& meta) {
    json o = jfan(fan);
    o["picard_rank"] = std::to_string(fan.size() - 2);
    o["smooth"] = fan.is_smooth();
    put_meta(o, meta);
    return dump(o);
}

std::string surface_report(const ToricSurface& x, const ReportMeta& meta) {
    json o = jfan(x.fan());
    o["picard_rank"] = std::to_string(x.picard_rank());
    o["smooth"] = x.fan().is_smooth();
    TDivisor k = canonical_divisor(x);
    json selfint = json::array(), kdeg = json::array();
    for (int j = 0; j < x.rays(); ++j) {
        selfint.push_back(rat_str(self_intersection(x, j)));
        kdeg.push_back(rat_str(intersect(x, k, j)));
    }
    o["self_intersections"] = selfint;
    o["k_degrees"] = kdeg;
    o["anti_k_ample"] = is_ample(x, k * Rat(-1));
    put_meta(o, meta);
    return dump(o);
}

std::string trace_report(const MMPTrace& trace, const ReportMeta& meta) {
    json o;
    o["start"] = jfan(trace.start.x.fan());
    o["boundary"] = jdivisor(trace.start.delta);
    o["strategy"] = trace.strategy.to_string();
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json st;
        st["degree"] = rat_str(s.degree);
        switch (s.kind) {
            case MMPStep::Kind::Divisorial:
                st["kind"] = "divisorial";
                st["ray"] = jvec(s.ray);
                st["ray_index"] = std::to_string(s.ray_orig);
                break;
            case MMPStep::Kind::MoriFiberP1:
                st["kind"] = "mori_fiber";
                st["form"] = jvec(*s.form);
                break;
            case MMPStep::Kind::MoriFiberPoint:
                st["kind"] = "mori_fiber";
                break;
        }
        steps.push_back(std::move(st));
    }
    o["steps"] = std::move(steps);
    o["terminal"] = terminal_name(trace.terminal);
    // most negative contracted degree, kept for inspection of degree bounds
    if (!trace.steps.empty()) {
        Rat lo = trace.steps[0].degree;
        for (const auto& s : trace.steps) lo = std::min(lo, s.degree);
        o["min_step_degree"] = rat_str(lo);
    }
    if (trace.fibration_form) o["fibration_form"] = jvec(*trace.fibration_form);
    o["final"] = jfan(trace.final_pair.x.fan());
    put_meta(o, meta);
    return dump(o);
}

namespace {

json jpolytope(const Polytope& p) {
    json cons = json::array();
    for (const auto& h : p.constraints())
        cons.push_back(json::array({h.a.str(), h.b.str(), h.c.str()}));
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back(jpoint(v));
    return json{{"dim", p.dim()}, {"halfplanes", cons}, {"vertices", verts}};
}

json jdecomposition(const Decomposition& d) {
    json o;
    json models = json::array();
    for (const auto& m : d.models) {
        json jm;
        jm["id"] = std::to_string(m.id);
        jm["removed_rays"] = jints(m.removed);
        jm["target"] = jfan(m.contraction.reduced.fan());
        models.push_back(std::move(jm));
    }
    o["models"] = std::move(models);
    json chambers = json::array();
    for (const auto& c : d.chambers) {
        json jc;
        jc["model"] = std::to_string(c.model_id);
        jc["dim"] = c.dim;
        jc["polytope"] = jpolytope(c.poly);
        chambers.push_back(std::move(jc));
    }
    o["chambers"] = std::move(chambers);
    json walls = json::array();
    for (const auto& w : d.walls) {
        json jw;
        jw["classification"] = "divisorial";
        jw["chambers"] = json::array(
            {std::to_string(w.chamber_i), std::to_string(w.chamber_j)});
        jw["segment"] = json::array({jpoint(w.a), jpoint(w.b)});
        jw["rho_drop"] = std::to_string(w.rho_drop);
        walls.push_back(std::move(jw));
    }
    for (const auto& e : d.mfs_edges) {
        json jw;
        jw["classification"] = "mori-fiber";
        jw["chambers"] = json::array({std::to_string(e.chamber)});
        jw["segment"] = json::array({jpoint(e.a), jpoint(e.b)});
        jw["base"] = base_name(e.base);
        if (e.form) jw["form"] = jvec(*e.form);
        walls.push_back(std::move(jw));
    }
    for (const auto& [a, b] : d.box_edges) {
        json jw;
        jw["classification"] = "boundary-of-b";
        jw["segment"] = json::array({jpoint(a), jpoint(b)});
        walls.push_back(std::move(jw));
    }
    o["walls"] = std::move(walls);
    o["effective_region"] = jpolytope(d.e_region);
    o["box"] = jpolytope(d.box);
    o["slice"] = json{{"a", jdivisor(d.slice.a)},
                      {"b1", jdivisor(d.slice.b1)},
                      {"b2", jdivisor(d.slice.b2)},
                      {"cap", rat_str(d.slice.cap)},
                      {"origin", jdivisor(d.slice.origin)}};
    return o;
}

}  // namespace

std::string decomposition_report(const Decomposition& d, const ReportMeta& meta) {
    json o = jdecomposition(d);
    put_meta(o, meta);
    return dump(o);
}

std::string chain_report(const LinkChain& chain, const ReportMeta& meta) {
    json o;
    json links = json::array();
    for (const auto& l : chain.links) {
        json jl;
        jl["type"] = link_type_name(l.type);
        jl["point"] = jpoint(l.point);
        jl["chambers"] = jints(l.chamber_models);
        jl["near"] = jmfs(l.near);
        jl["far"] = jmfs(l.far);
        json arrows = json::array();
        for (const auto& a : l.arrows) {
            arrows.push_back(json{{"from_removed", jints(a.from_removed)},
                                  {"ray", std::to_string(a.ray)},
                                  {"to_removed", jints(a.to_removed)}});
        }
        jl["arrows"] = std::move(arrows);
        VerifyReport rep = verify_link(chain.build.decomp, l);
        json failures = json::array();
        for (const auto& msg : rep.failures) failures.push_back(msg);
        jl["verification"] = json{{"failures", std::move(failures)}, {"ok", rep.ok}};
        links.push_back(std::move(jl));
    }
    o["links"] = std::move(links);
    o["end_a"] = jmfs(chain.end_a);
    o["end_b"] = jmfs(chain.end_b);
    json ends;
    ToricSurface za = contract_rays(chain.build.slice.z, chain.end_a.removed).reduced;
    ToricSurface zb = contract_rays(chain.build.slice.z, chain.end_b.removed).reduced;
    o["end_a"]["total_space"] = jfan(za.fan());
    o["end_b"]["total_space"] = jfan(zb.fan());
    o["theta0"] = jpoint(chain.build.theta0);
    o["theta1"] = jpoint(chain.build.theta1);
    o["perturbation_rounds"] = chain.build.perturbation_rounds;
    o["geography"] = jdecomposition(chain.build.decomp);
    put_meta(o, meta);
    return dump(o);
}

std::string error_report(const std::string& code, const std::string& message) {
    return dump(json{{"error", code}, {"message", message}});
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Mapper {
    double x0, y0, scale;
    double px(const Rat& x) const {
        return (x.convert_to<double>() - x0) * scale + 40.0;
    }
    double py(const Rat& y) const {
        return 760.0 - (y.convert_to<double>() - y0) * scale;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string poly_points(const Mapper& m, const std::vector<RVec2>& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += " ";
        out += fmt(m.px(v.x)) + "," + fmt(m.py(v.y));
    }
    return out;
}

std::string color_of(int model_id) {
    std::uint64_t h = fnv1a64("model-" + std::to_string(model_id));
    int hue = static_cast<int>(h % 360);
    return "hsl(" + std::to_string(hue) + ",55%,70%)";
}

}  // namespace

std::string decomposition_svg(const Decomposition& d, const LinkChain* chain) {
    // canvas bounds from the box polytope
    Rat xlo, xhi, ylo, yhi;
    bool first = true;
    auto widen = [&](const RVec2& v) {
        if (first) {
            xlo = xhi = v.x;
            ylo = yhi = v.y;
            first = false;
            return;
        }
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    };
    for (const auto& v : d.box.vertices()) widen(v);
    for (const auto& v : d.e_region.vertices()) widen(v);
    double w = (xhi - xlo).convert_to<double>();
    double h = (yhi - ylo).convert_to<double>();
    double span = std::max(std::max(w, h), 1e-9);
    Mapper m{xlo.convert_to<double>(), ylo.convert_to<double>(), 720.0 / span};

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n"
        "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    if (d.box.dim() == 2) {
        svg += "<polygon points=\"" + poly_points(m, d.box.vertices()) +
               "\" fill=\"#f4f4f4\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    }
    for (const auto& c : d.chambers) {
        if (c.dim < 2) continue;
        svg += "<polygon points=\"" + poly_points(m, c.poly.vertices()) + "\" fill=\"" +
               color_of(c.model_id) + "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    }
    if (d.e_region.dim() == 2) {
        svg += "<polygon points=\"" + poly_points(m, d.e_region.vertices()) +
               "\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n";
    }
    for (const auto& e : d.mfs_edges) {
        svg += "<line x1=\"" + fmt(m.px(e.a.x)) + "\" y1=\"" + fmt(m.py(e.a.y)) +
               "\" x2=\"" + fmt(m.px(e.b.x)) + "\" y2=\"" + fmt(m.py(e.b.y)) +
               "\" stroke=\"#b30000\" stroke-width=\"4\"/>\n";
    }
    for (const auto& wl : d.walls) {
        svg += "<line x1=\"" + fmt(m.px(wl.a.x)) + "\" y1=\"" + fmt(m.py(wl.a.y)) +
               "\" x2=\"" + fmt(m.px(wl.b.x)) + "\" y2=\"" + fmt(m.py(wl.b.y)) +
               "\" stroke=\"#222\" stroke-width=\"2\" stroke-dasharray=\"6,3\"/>\n";
    }
    if (chain) {
        // the traced part of the boundary, highlighted
        try {
            std::vector<RVec2> walk =
                boundary_walk(d, chain->build.theta0, chain->build.theta1);
            if (walk.size() >= 2) {
                svg += "<polyline points=\"" + poly_points(m, walk) +
                       "\" fill=\"none\" stroke=\"#ff9900\" stroke-width=\"6\" "
                       "stroke-linecap=\"round\" opacity=\"0.8\"/>\n";
            }
        } catch (const DomainError&) {
            // decomposition without a traceable walk: skip the highlight
        }
        auto dot = [&](const RVec2& p, const char* fill) {
            svg += "<circle cx=\"" + fmt(m.px(p.x)) + "\" cy=\"" + fmt(m.py(p.y)) +
                   "\" r=\"6\" fill=\"" + std::string(fill) + "\"/>\n";
        };
        dot(chain->build.theta0, "#006600");
        dot(chain->build.theta1, "#000099");
        for (const auto& l : chain->links) {
            dot(l.point, "#cc6600");
            svg += "<text x=\"" + fmt(m.px(l.point.x) + 8) + "\" y=\"" +
                   fmt(m.py(l.point.y) - 8) + "\" font-size=\"18\">" +
                   link_type_name(l.type) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace mori
