#include "mori/toric_surface.hpp"

#include <algorithm>

namespace mori {

TDivisor TDivisor::operator+(const TDivisor& o) const {
    TDivisor r(*this);
    for (int i = 0; i < size(); ++i) r.c[i] += o.c[i];
    return r;
}
TDivisor TDivisor::operator-(const TDivisor& o) const {
    TDivisor r(*this);
    for (int i = 0; i < size(); ++i) r.c[i] -= o.c[i];
    return r;
}
TDivisor TDivisor::operator*(const Rat& k) const {
    TDivisor r(*this);
    for (auto& v : r.c) v *= k;
    return r;
}
bool TDivisor::effective() const {
    for (const auto& v : c)
        if (v < 0) return false;
    return true;
}

ToricSurface::ToricSurface(Fan fan) : fan_(std::move(fan)) {
    auto sub = subdivide_to_smooth(fan_);
    resolution_ = sub.smooth;

    orig_pos_.assign(fan_.size(), -1);
    for (int i = 0; i < fan_.size(); ++i) {
        orig_pos_[i] = resolution_.find_ray(fan_.ray(i));
    }

    res_coords_.resize(resolution_.size());
    for (int j = 0; j < resolution_.size(); ++j) {
        const IVec2& w = resolution_.ray(j);
        int oi = fan_.find_ray(w);
        if (oi >= 0) {
            res_coords_[j] = RayCoord{-1, Rat(1), Rat(0), true, oi};
            continue;
        }
        int cone = fan_.cone_containing(w);
        const IVec2& u = fan_.ray(cone);
        const IVec2& v = fan_.ray(fan_.next(cone));
        Int m = det(u, v);
        res_coords_[j] = RayCoord{cone, Rat(det(w, v), m), Rat(det(u, w), m), false, -1};
    }

    res_b_.resize(resolution_.size());
    for (int j = 0; j < resolution_.size(); ++j) {
        const IVec2& p = resolution_.ray(resolution_.prev(j));
        const IVec2& n = resolution_.ray(resolution_.next(j));
        const IVec2& v = resolution_.ray(j);
        IVec2 s = p + n;
        // smooth fan: p + n = b * v
        if (v.x != 0) {
            res_b_[j] = s.x / v.x;
        } else {
            res_b_[j] = s.y / v.y;
        }
        if (!(IVec2(res_b_[j] * v.x, res_b_[j] * v.y) == s))
            throw DomainError("internal_inconsistency", "smooth relation failed");
    }

    // class basis: Gaussian elimination of the two relation rows
    // R1 = (v_i.x)_i, R2 = (v_i.y)_i over fixed column order
    int n = fan_.size();
    std::vector<std::vector<Rat>> rel(2, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) {
        rel[0][i] = Rat(fan_.ray(i).x);
        rel[1][i] = Rat(fan_.ray(i).y);
    }
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < n && row < 2; ++col) {
        int pr = -1;
        for (int r = row; r < 2; ++r)
            if (rel[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rel[row], rel[pr]);
        Rat p = rel[row][col];
        for (auto& v : rel[row]) v /= p;
        for (int r = 0; r < 2; ++r) {
            if (r == row || rel[r][col] == 0) continue;
            Rat f = rel[r][col];
            for (int k = 0; k < n; ++k) rel[r][k] -= f * rel[row][k];
        }
        pivots.push_back(col);
        ++row;
    }
    if (row != 2) throw DomainError("internal_inconsistency", "rays do not span the plane");
    reduce_ = rel;
    pivot_cols_ = pivots;
    for (int col = 0; col < n; ++col)
        if (std::find(pivots.begin(), pivots.end(), col) == pivots.end())
            basis_cols_.push_back(col);
}

std::vector<Rat> ToricSurface::pullback_to_resolution(const TDivisor& d) const {
    std::vector<Rat> out(resolution_.size());
    for (int j = 0; j < resolution_.size(); ++j) {
        const auto& rc = res_coords_[j];
        if (rc.is_original) {
            out[j] = d[rc.orig_index];
        } else {
            out[j] = rc.alpha * d[rc.orig_cone] + rc.beta * d[fan_.next(rc.orig_cone)];
        }
    }
    return out;
}

TDivisor canonical_divisor(const ToricSurface& x) {
    return TDivisor(std::vector<Rat>(x.rays(), Rat(-1)));
}

Rat intersect(const ToricSurface& x, const TDivisor& d, int j) {
    auto a = x.pullback_to_resolution(d);
    const Fan& res = x.resolution();
    int rj = x.resolved_index(j);
    return a[res.prev(rj)] + a[res.next(rj)] - Rat(x.res_b_[rj]) * a[rj];
}

Rat self_intersection(const ToricSurface& x, int j) {
    return intersect(x, TDivisor::unit(x.rays(), j), j);
}

std::vector<Rat> numerical_class(const ToricSurface& x, const TDivisor& d) {
    // reduce d by the two relation rows so the pivot columns vanish
    std::vector<Rat> v = d.c;
    int n = x.rays();
    for (std::size_t r = 0; r < x.reduce_.size(); ++r) {
        int pc = x.pivot_cols_[r];
        Rat f = v[pc];
        if (f == 0) continue;
        for (int c = 0; c < n; ++c) v[c] -= f * x.reduce_[r][c];
    }
    std::vector<Rat> out;
    for (int c : x.class_basis()) out.push_back(v[c]);
    return out;
}

std::vector<Rat> curve_class(const ToricSurface& x, int j) {
    std::vector<Rat> out;
    for (int b : x.class_basis())
        out.push_back(intersect(x, TDivisor::unit(x.rays(), b), j));
    return out;
}

NefResult is_nef(const ToricSurface& x, const TDivisor& d) {
    NefResult r{true, {}};
    for (int j = 0; j < x.rays(); ++j) {
        if (intersect(x, d, j) < 0) {
            r.nef = false;
            r.violating.push_back(j);
        }
    }
    return r;
}

bool is_ample(const ToricSurface& x, const TDivisor& d) {
    for (int j = 0; j < x.rays(); ++j)
        if (intersect(x, d, j) <= 0) return false;
    return true;
}

TDivisor ample_divisor(const ToricSurface& x) {
    // Build a polygon whose normal fan is the fan of x: walk edge vectors
    // rot(v_i) = (v_i.y, -v_i.x) scaled by positive t_i with sum t_i rot(v_i) = 0,
    // then center the polygon at its vertex average and read the coefficients.
    const Fan& f = x.fan();
    int n = f.size();
    auto rot = [](const IVec2& v) { return IVec2(v.y, -v.x); };

    std::vector<Int> t(n, Int(1));
    IVec2 r(0, 0);
    for (int i = 0; i < n; ++i) r = r + rot(f.ray(i));
    if (!r.is_zero()) {
        // write -r as a positive combination of two adjacent edge directions
        IVec2 target = -r;
        for (int i = 0; i < n; ++i) {
            IVec2 a = rot(f.ray(i));
            IVec2 b = rot(f.ray(f.next(i)));
            Int m = det(a, b);
            Int ca = det(target, b);  // target = (ca/m) a + (cb/m) b
            Int cb = det(a, target);
            if (m > 0 && ca >= 0 && cb >= 0) {
                // scale everything by m to stay integral
                for (auto& tv : t) tv *= m;
                t[i] += ca;
                t[f.next(i)] += cb;
                break;
            }
        }
    }
    // vertices of the polygon, in units of 1
    std::vector<RVec2> verts;
    RVec2 p(Rat(0), Rat(0));
    for (int i = 0; i < n; ++i) {
        IVec2 e = rot(f.ray(i));
        p = RVec2(p.x + Rat(t[i] * e.x), p.y + Rat(t[i] * e.y));
        verts.push_back(p);
    }
    RVec2 centroid(Rat(0), Rat(0));
    for (const auto& v : verts) centroid = RVec2(centroid.x + v.x, centroid.y + v.y);
    centroid = RVec2(centroid.x / n, centroid.y / n);

    TDivisor d = TDivisor::zero(n);
    for (int i = 0; i < n; ++i) {
        // the facet with inner normal v_i passes through vertex i - 1
        const RVec2& q = verts[(i + n - 1) % n];
        Rat val = (q.x - centroid.x) * Rat(f.ray(i).x) + (q.y - centroid.y) * Rat(f.ray(i).y);
        d[i] = -val;
    }
    if (!is_ample(x, d))
        throw DomainError("internal_inconsistency", "ample divisor construction failed");
    return d;
}

std::optional<TDivisor> effective_representation(const ToricSurface& x, const TDivisor& d) {
    // feasibility of { u : <u, v_i> >= -a_i for all i }; the region is compact
    // because the rays positively span the plane, so it is the hull of the
    // pairwise intersection points of the boundary lines
    const Fan& f = x.fan();
    int n = f.size();
    auto coeff = [&](const RVec2& u, int i) -> Rat {
        return d[i] + u.x * Rat(f.ray(i).x) + u.y * Rat(f.ray(i).y);
    };
    std::optional<RVec2> best;
    Rat best_max;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Int dd = det(f.ray(i), f.ray(j));
            if (dd == 0) continue;
            // solve <u, v_i> = -a_i, <u, v_j> = -a_j
            Rat ai = -d[i], aj = -d[j];
            Rat ux = (ai * Rat(f.ray(j).y) - aj * Rat(f.ray(i).y)) / Rat(dd);
            Rat uy = (Rat(f.ray(i).x) * aj - Rat(f.ray(j).x) * ai) / Rat(dd);
            RVec2 u(ux, uy);
            bool ok = true;
            Rat mx;
            for (int k = 0; k < n && ok; ++k) {
                Rat ck = coeff(u, k);
                if (ck < 0) ok = false;
                if (k == 0 || ck > mx) mx = ck;
            }
            if (!ok) continue;
            if (!best || mx < best_max ||
                (mx == best_max && (u.x < best->x || (u.x == best->x && u.y < best->y)))) {
                best = u;
                best_max = mx;
            }
        }
    }
    if (!best) return std::nullopt;
    TDivisor out = TDivisor::zero(n);
    for (int i = 0; i < n; ++i) out[i] = coeff(*best, i);
    return out;
}

bool is_pseudo_effective(const ToricSurface& x, const TDivisor& d) {
    return effective_representation(x, d).has_value();
}

int Contraction::relative_picard_rank() const {
    int r = static_cast<int>(removed.size());
    if (base == BaseKind::P1) r += reduced.picard_rank() - 1;
    if (base == BaseKind::Point) r += reduced.picard_rank();
    return r;
}

Contraction contract_rays(const ToricSurface& x, std::vector<int> removed) {
    std::sort(removed.begin(), removed.end());
    Contraction out{x, removed, x, BaseKind::Surface, std::nullopt, {}};
    Fan cur = x.fan();
    // removal order does not matter; go ascending by original index
    for (int oi : removed) {
        int idx = cur.find_ray(x.fan().ray(oi));
        if (idx < 0) throw DomainError("internal_inconsistency", "ray vanished");
        FanMap m = remove_ray(cur, idx);
        cur = *m.target;
        out.steps.push_back(std::move(m));
    }
    out.reduced = ToricSurface(cur);
    return out;
}

TDivisor pushforward(const Contraction& f, const TDivisor& d) {
    std::vector<Rat> out;
    for (int i = 0; i < f.source.rays(); ++i) {
        if (std::find(f.removed.begin(), f.removed.end(), i) == f.removed.end())
            out.push_back(d[i]);
    }
    return TDivisor(std::move(out));
}

TDivisor pullback(const Contraction& f, const TDivisor& dt) {
    const Fan& src = f.source.fan();
    const Fan& tgt = f.reduced.fan();
    TDivisor out = TDivisor::zero(src.size());
    for (int i = 0, k = 0; i < src.size(); ++i) {
        if (std::find(f.removed.begin(), f.removed.end(), i) == f.removed.end()) {
            out[i] = dt[k++];
            continue;
        }
        int cone = tgt.cone_containing(src.ray(i));
        const IVec2& u = tgt.ray(cone);
        const IVec2& v = tgt.ray(tgt.next(cone));
        Int m = det(u, v);
        Rat alpha(det(src.ray(i), v), m);
        Rat beta(det(u, src.ray(i)), m);
        out[i] = alpha * dt[cone] + beta * dt[tgt.next(cone)];
    }
    return out;
}

Contraction ample_model_of_nef(const ToricSurface& x, const TDivisor& d) {
    std::vector<int> zero, positive;
    for (int j = 0; j < x.rays(); ++j) {
        Rat dj = intersect(x, d, j);
        if (dj < 0) throw DomainError("not_nef", "divisor is not nef");
        (dj == 0 ? zero : positive).push_back(j);
    }
    if (zero.empty()) {
        Contraction id{x, {}, x, BaseKind::Surface, std::nullopt, {}};
        return id;
    }
    if (positive.empty()) {
        // numerically trivial: collapse to a point
        FanMap m;
        m.kind = FanMap::Kind::CollapseToPoint;
        m.source = x.fan();
        Contraction c{x, {}, x, BaseKind::Point, std::nullopt, {m}};
        return c;
    }
    if (positive.size() == 2 &&
        x.fan().ray(positive[0]) == -x.fan().ray(positive[1])) {
        IVec2 p = x.fan().ray(positive[0]);
        IVec2 ell = make_primitive(IVec2(-p.y, p.x));
        if (lex_less(ell, -ell)) ell = -ell;
        FanMap m = project_fan(x.fan(), ell);
        Contraction c{x, {}, x, BaseKind::P1, ell, {m}};
        return c;
    }
    // birational: the zero rays contract to a surface
    if (positive.size() < 3)
        throw DomainError("internal_inconsistency",
                          "nef zero locus is neither contractible nor a fibration");
    Contraction c = contract_rays(x, zero);
    return c;
}

bool same_ample_model(const Contraction& a, const Contraction& b) {
    if (a.removed != b.removed || a.base != b.base) return false;
    if (a.base == BaseKind::P1) {
        if (!a.form || !b.form) return false;
        if (!(*a.form == *b.form) && !(*a.form == -*b.form)) return false;
    }
    return true;
}

}  // namespace mori
