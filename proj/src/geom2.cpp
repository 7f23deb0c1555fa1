#include "mori/geom2.hpp"

#include <algorithm>
#include <map>

namespace mori {

IVec2 make_primitive(const IVec2& v) {
    if (v.is_zero()) throw DomainError("zero_vector", "zero vector has no direction");
    Int g = gcd(abs(v.x), abs(v.y));
    return IVec2(v.x / g, v.y / g);
}

// 0 for the closed upper half line set {y > 0} u {y == 0, x > 0}, 1 otherwise
static int angular_half(const IVec2& v) {
    if (v.y > 0 || (v.y == 0 && v.x > 0)) return 0;
    return 1;
}

bool angle_less(const IVec2& u, const IVec2& v) {
    int hu = angular_half(u), hv = angular_half(v);
    if (hu != hv) return hu < hv;
    return det(u, v) > 0;
}

bool same_direction(const IVec2& u, const IVec2& v) {
    return det(u, v) == 0 && dot(u, v) > 0;
}

bool lex_less(const IVec2& u, const IVec2& v) {
    if (u.x != v.x) return u.x < v.x;
    return u.y < v.y;
}

HalfPlane halfplane_from_ge(const AffForm& f) {
    // c0 + cs*s + ct*t >= 0  <=>  (-cs)*s + (-ct)*t <= c0, then clear denominators
    Int l = lcm(lcm(denominator(f.c0), denominator(f.cs)), denominator(f.ct));
    Int a = -numerator(f.cs) * (l / denominator(f.cs));
    Int b = -numerator(f.ct) * (l / denominator(f.ct));
    Int c = numerator(f.c0) * (l / denominator(f.c0));
    Int g = gcd(gcd(abs(a), abs(b)), abs(c));
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    return HalfPlane{a, b, c};
}

std::optional<RVec2> line_intersect(const HalfPlane& h1, const HalfPlane& h2) {
    Int d = h1.a * h2.b - h1.b * h2.a;
    if (d == 0) return std::nullopt;
    Rat s = frac(h1.c * h2.b - h1.b * h2.c, d);
    Rat t = frac(h1.a * h2.c - h1.c * h2.a, d);
    return RVec2(s, t);
}

static bool rv_lex_less(const RVec2& a, const RVec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// orientation of the triple (a, b, c): sign of twice the signed area
static int orient(const RVec2& a, const RVec2& b, const RVec2& c) {
    Rat d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (d > 0) return 1;
    if (d < 0) return -1;
    return 0;
}

// Andrew monotone chain on exact points; collinear points dropped.
static std::vector<RVec2> hull_of(std::vector<RVec2> pts) {
    std::sort(pts.begin(), pts.end(), rv_lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<RVec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;  // ccw, no repeats; collinear input collapses to 2 extremes
}

Polytope Polytope::from_halfplanes(std::vector<HalfPlane> cons) {
    Polytope p;
    p.cons_ = std::move(cons);

    std::vector<RVec2> pts;
    for (std::size_t i = 0; i < p.cons_.size(); ++i) {
        for (std::size_t j = i + 1; j < p.cons_.size(); ++j) {
            auto v = line_intersect(p.cons_[i], p.cons_[j]);
            if (!v) continue;
            bool ok = true;
            for (const auto& h : p.cons_)
                if (!h.contains(*v)) {
                    ok = false;
                    break;
                }
            if (ok) pts.push_back(*v);
        }
    }
    std::sort(pts.begin(), pts.end(), rv_lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.empty()) {
        p.dim_ = -1;
        return p;
    }
    auto h = hull_of(pts);
    if (h.size() == 1) {
        p.dim_ = 0;
    } else if (h.size() == 2) {
        p.dim_ = 1;
    } else {
        p.dim_ = 2;
    }
    p.verts_ = std::move(h);
    return p;
}

Polytope Polytope::from_points(const std::vector<RVec2>& pts) {
    Polytope p;
    auto h = hull_of(pts);
    if (h.empty()) {
        p.dim_ = -1;
        return p;
    }
    p.verts_ = h;
    p.dim_ = h.size() == 1 ? 0 : (h.size() == 2 ? 1 : 2);
    // derive the H-representation from hull edges (dim 2) or the segment (dim 1)
    if (p.dim_ == 2) {
        std::size_t n = h.size();
        for (std::size_t i = 0; i < n; ++i) {
            const RVec2& a = h[i];
            const RVec2& b = h[(i + 1) % n];
            // inward side of the directed edge a -> b for a ccw polygon:
            // (b - a) x (p - a) >= 0
            AffForm f;
            f.cs = -(b.y - a.y);
            f.ct = (b.x - a.x);
            f.c0 = (b.y - a.y) * a.x - (b.x - a.x) * a.y;
            p.cons_.push_back(halfplane_from_ge(f));
        }
    } else if (p.dim_ == 1) {
        const RVec2& a = h[0];
        const RVec2& b = h[1];
        Rat dx = b.x - a.x, dy = b.y - a.y;
        // the carrier line, both directions
        AffForm on{dy * a.x - dx * a.y, -dy, dx};
        p.cons_.push_back(halfplane_from_ge(on));
        p.cons_.push_back(halfplane_from_ge(AffForm{-on.c0, -on.cs, -on.ct}));
        // clamp between the endpoints: dot(p - a, d) >= 0 and dot(b - p, d) >= 0
        p.cons_.push_back(halfplane_from_ge(AffForm{-(dx * a.x + dy * a.y), dx, dy}));
        p.cons_.push_back(halfplane_from_ge(AffForm{dx * b.x + dy * b.y, -dx, -dy}));
    } else {
        const RVec2& a = h[0];
        p.cons_.push_back(halfplane_from_ge(AffForm{a.x, -1, 0}));
        p.cons_.push_back(halfplane_from_ge(AffForm{-a.x, 1, 0}));
        p.cons_.push_back(halfplane_from_ge(AffForm{a.y, 0, -1}));
        p.cons_.push_back(halfplane_from_ge(AffForm{-a.y, 0, 1}));
    }
    return p;
}

bool Polytope::contains(const RVec2& p) const {
    if (dim_ < 0) return false;
    for (const auto& h : cons_)
        if (!h.contains(p)) return false;
    return true;
}

bool Polytope::on_boundary(const RVec2& p) const {
    if (!contains(p)) return false;
    if (dim_ < 2) return true;
    for (const auto& h : cons_)
        if (h.active_at(p)) return true;
    return false;
}

RVec2 Polytope::centroid() const {
    Rat sx = 0, sy = 0;
    for (const auto& v : verts_) {
        sx += v.x;
        sy += v.y;
    }
    Int n = Int(verts_.size());
    return RVec2(sx / n, sy / n);
}

std::vector<std::pair<RVec2, RVec2>> Polytope::edges() const {
    std::vector<std::pair<RVec2, RVec2>> out;
    if (dim_ == 1) {
        out.emplace_back(verts_[0], verts_[1]);
    } else if (dim_ == 2) {
        for (std::size_t i = 0; i < verts_.size(); ++i)
            out.emplace_back(verts_[i], verts_[(i + 1) % verts_.size()]);
    }
    return out;
}

Polytope Polytope::intersect(const Polytope& p, const Polytope& q) {
    std::vector<HalfPlane> cons = p.cons_;
    cons.insert(cons.end(), q.cons_.begin(), q.cons_.end());
    return from_halfplanes(std::move(cons));
}

bool on_segment(const RVec2& p, const RVec2& a, const RVec2& b) {
    if (orient(a, b, p) != 0) return false;
    Rat d = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    Rat len = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    return d >= 0 && d <= len;
}

std::optional<std::pair<RVec2, RVec2>> segment_overlap(const RVec2& a1, const RVec2& a2,
                                                       const RVec2& b1, const RVec2& b2) {
    // require all four points collinear
    if (orient(a1, a2, b1) != 0 || orient(a1, a2, b2) != 0) return std::nullopt;
    RVec2 d(a2.x - a1.x, a2.y - a1.y);
    if (d.x == 0 && d.y == 0) return std::nullopt;
    auto param = [&](const RVec2& p) -> Rat {
        return (p.x - a1.x) * d.x + (p.y - a1.y) * d.y;
    };
    Rat ta0 = 0, ta1 = param(a2);
    Rat tb0 = param(b1), tb1 = param(b2);
    if (tb0 > tb1) std::swap(tb0, tb1);
    Rat lo = std::max(ta0, tb0), hi = std::min(ta1, tb1);
    if (lo >= hi) return std::nullopt;  // empty or a single point
    auto at = [&](const Rat& t) {
        Rat len = ta1;
        return RVec2(a1.x + d.x * t / len, a1.y + d.y * t / len);
    };
    return std::make_pair(at(lo), at(hi));
}

// ---------------------------------------------------------------------------
// phase-one simplex, exact rationals, Bland's rule

bool in_cone(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& target) {
    std::size_t m = target.size();
    std::size_t n = cols.size();
    if (n == 0) {
        for (const auto& t : target)
            if (t != 0) return false;
        return true;
    }
    // tableau rows: m equations; columns: n structural + m artificial + rhs
    std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(n + m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        int sign = target[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = sign * cols[j][i];
        tab[i][n + i] = 1;
        tab[i][n + m] = sign * target[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // objective: minimize sum of artificials; reduced costs row
    std::vector<Rat> cost(n + m + 1);
    for (std::size_t j = 0; j < n + m; ++j) cost[j] = (j >= n) ? Rat(1) : Rat(0);
    std::vector<Rat> z(n + m + 1);
    for (std::size_t j = 0; j <= n + m; ++j) {
        Rat s = 0;
        for (std::size_t i = 0; i < m; ++i) s += cost[basis[i]] * tab[i][j];
        z[j] = s;
    }

    while (true) {
        // Bland: entering = lowest index with positive z_j - c_j
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (z[j] - cost[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break;
        // ratio test, Bland tie-break by basis index
        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rat ratio = tab[i][n + m] / tab[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return false;  // unbounded phase-one cannot happen; bail out
        // pivot
        Rat piv = tab[leave][enter];
        for (auto& x : tab[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rat f = tab[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rat fz = z[enter] - cost[enter];
        for (std::size_t j = 0; j <= n + m; ++j) z[j] -= fz * tab[leave][j];
        z[enter] = cost[enter];
        basis[leave] = enter;
    }
    return z[n + m] == 0;
}

}  // namespace mori
