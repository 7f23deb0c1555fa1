#include "mori/lattice_fan.hpp"

#include <algorithm>
#include <sstream>

namespace mori {

Fan Fan::validate(const std::vector<IVec2>& input) {
    if (input.size() < 3)
        throw DomainError("too_few_rays", "a complete fan needs at least 3 rays");
    std::vector<IVec2> rays;
    rays.reserve(input.size());
    for (const auto& v : input) rays.push_back(make_primitive(v));

    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j])
                throw DomainError("duplicate_ray",
                                  "duplicate ray direction " + rays[i].str());

    // sort counterclockwise starting from the first input ray
    IVec2 first = rays[0];
    std::sort(rays.begin(), rays.end(), [&](const IVec2& a, const IVec2& b) {
        if (a == b) return false;
        if (a == first) return true;
        if (b == first) return false;
        // order by angle measured ccw from `first`
        bool a_after = angle_less(first, a);
        bool b_after = angle_less(first, b);
        if (a_after != b_after) return a_after;
        return angle_less(a, b);
    });

    Fan f;
    f.rays_ = std::move(rays);
    for (int i = 0; i < f.size(); ++i) {
        Int d = det(f.ray(i), f.ray(f.next(i)));
        if (d <= 0)
            throw DomainError("not_complete",
                              "consecutive rays " + f.ray(i).str() + ", " +
                                  f.ray(f.next(i)).str() + " span no valid cone");
    }
    return f;
}

Fan validate_fan(const std::vector<IVec2>& rays) { return Fan::validate(rays); }

Cone2 Fan::cone(int i) const {
    return Cone2{i, next(i), det(ray(i), ray(next(i)))};
}

std::vector<Int> Fan::multiplicities() const {
    std::vector<Int> out;
    for (int i = 0; i < size(); ++i) out.push_back(cone(i).mult);
    return out;
}

bool Fan::is_smooth() const {
    for (int i = 0; i < size(); ++i)
        if (cone(i).mult != 1) return false;
    return true;
}

int Fan::find_ray(const IVec2& v) const {
    for (int i = 0; i < size(); ++i)
        if (rays_[i] == v) return i;
    return -1;
}

int Fan::cone_containing(const IVec2& v) const {
    for (int i = 0; i < size(); ++i) {
        if (det(ray(i), v) >= 0 && det(v, ray(next(i))) > 0) return i;
    }
    // v is a positive multiple of some ray; the loop above misses only the
    // case v on ray(next(i)) for every i, i.e. never for a complete fan
    for (int i = 0; i < size(); ++i)
        if (same_direction(ray(i), v)) return i;
    throw DomainError("internal_inconsistency", "vector in no cone of a complete fan");
}

std::string Fan::to_text() const {
    std::ostringstream os;
    for (const auto& r : rays_) os << "ray " << r.x.str() << " " << r.y.str() << "\n";
    return os.str();
}

Fan Fan::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<IVec2> rays;
    while (std::getline(is, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "ray")
            throw DomainError("bad_fan_file", "unknown directive '" + word + "'");
        std::string xs, ys;
        if (!(ls >> xs >> ys))
            throw DomainError("bad_fan_file", "ray line needs two integers");
        rays.emplace_back(parse_int(xs), parse_int(ys));
    }
    return validate(rays);
}

// ---------------------------------------------------------------------------

// The primitive point w = alpha*u + beta*v, 0 < alpha, beta, alpha + beta <= 1
// minimizing alpha + beta (ties: lexicographic by (x, y)). Exists iff mult > 1.
static std::optional<IVec2> splitting_point(const IVec2& u, const IVec2& v) {
    Int m = det(u, v);
    if (m <= 1) return std::nullopt;
    Int xlo = std::min(std::min(u.x, v.x), Int(0));
    Int xhi = std::max(std::max(u.x, v.x), Int(0));
    Int ylo = std::min(std::min(u.y, v.y), Int(0));
    Int yhi = std::max(std::max(u.y, v.y), Int(0));
    std::optional<IVec2> best;
    Rat best_sum;
    for (Int x = xlo; x <= xhi; ++x) {
        for (Int y = ylo; y <= yhi; ++y) {
            IVec2 w(x, y);
            if (w.is_zero()) continue;
            Rat alpha(det(w, v), m);
            Rat beta(det(u, w), m);
            if (alpha <= 0 || beta <= 0 || alpha + beta > 1) continue;
            if (gcd(abs(x), abs(y)) != 1) continue;
            Rat s = alpha + beta;
            if (!best || s < best_sum || (s == best_sum && lex_less(w, *best))) {
                best = w;
                best_sum = s;
            }
        }
    }
    return best;
}

Subdivision subdivide_to_smooth(const Fan& fan) {
    std::vector<IVec2> rays = fan.rays();
    std::vector<IVec2> inserted;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            const IVec2& u = rays[i];
            const IVec2& v = rays[(i + 1) % rays.size()];
            auto w = splitting_point(u, v);
            if (w) {
                rays.insert(rays.begin() + i + 1, *w);
                inserted.push_back(*w);
                changed = true;
                break;
            }
        }
    }
    Subdivision out{Fan::validate(rays), std::move(inserted)};
    return out;
}

FanMap remove_ray(const Fan& fan, int j) {
    if (fan.size() < 4)
        throw DomainError("too_few_rays", "removal would leave fewer than 3 rays");
    const IVec2& p = fan.ray(fan.prev(j));
    const IVec2& n = fan.ray(fan.next(j));
    if (det(p, n) <= 0)
        throw DomainError("ray_not_contractible",
                          "neighbors of " + fan.ray(j).str() + " span no valid cone");
    std::vector<IVec2> rays;
    for (int i = 0; i < fan.size(); ++i)
        if (i != j) rays.push_back(fan.ray(i));
    FanMap m;
    m.kind = FanMap::Kind::RayRemoval;
    m.source = fan;
    m.removed_index = j;
    m.target = Fan::validate(rays);
    return m;
}

FanMap project_fan(const Fan& fan, const IVec2& ell_in) {
    IVec2 ell = make_primitive(ell_in);
    FanMap m;
    m.kind = FanMap::Kind::LatticeProjection;
    m.source = fan;
    m.form = ell;
    auto value = [&](int i) { return dot(ell, fan.ray(i)); };
    for (int i = 0; i < fan.size(); ++i) {
        Int v = value(i);
        if (v > 0)
            m.positive_rays.push_back(i);
        else if (v < 0)
            m.negative_rays.push_back(i);
        else
            m.zero_rays.push_back(i);
    }
    if (m.positive_rays.empty() || m.negative_rays.empty())
        throw DomainError("not_fibration", "all rays map to one closed half-line");
    for (int i = 0; i < fan.size(); ++i) {
        Int a = value(i), b = value(fan.next(i));
        if ((a > 0 && b < 0) || (a < 0 && b > 0))
            throw DomainError("not_fibration",
                              "cone " + std::to_string(i) + " maps onto all of R");
    }
    return m;
}

// solve M * a = p, M * b = q for an integral matrix; nullopt when not integral
static std::optional<Mat2> solve_matrix(const IVec2& a, const IVec2& b, const IVec2& p,
                                        const IVec2& q) {
    Int d = det(a, b);
    if (d == 0) return std::nullopt;
    // M = [p q] * [a b]^{-1}
    Int m00 = p.x * b.y - q.x * a.y;
    Int m01 = q.x * a.x - p.x * b.x;
    Int m10 = p.y * b.y - q.y * a.y;
    Int m11 = q.y * a.x - p.y * b.x;
    if (m00 % d != 0 || m01 % d != 0 || m10 % d != 0 || m11 % d != 0) return std::nullopt;
    Mat2 m{m00 / d, m01 / d, m10 / d, m11 / d};
    if (abs(m.det()) != 1) return std::nullopt;
    return m;
}

std::optional<Mat2> fan_isomorphic(const Fan& f1, const Fan& f2) {
    int n = f1.size();
    if (n != f2.size()) return std::nullopt;
    for (int rot = 0; rot < n; ++rot) {
        for (int refl = 0; refl < 2; ++refl) {
            auto image = [&](int k) {
                int idx = refl ? (rot - k % n + 2 * n) % n : (rot + k) % n;
                return f2.ray(idx);
            };
            auto m = solve_matrix(f1.ray(0), f1.ray(1), image(0), image(1));
            if (!m) continue;
            bool ok = true;
            for (int k = 2; k < n && ok; ++k)
                if (m->apply(f1.ray(k)) != image(k)) ok = false;
            if (ok) return m;
        }
    }
    return std::nullopt;
}

std::vector<Int> weight_vector(const Fan& fan) {
    if (fan.size() != 3)
        throw DomainError("bad_fan", "weight vector defined for 3-ray fans only");
    const IVec2& v1 = fan.ray(0);
    const IVec2& v2 = fan.ray(1);
    const IVec2& v3 = fan.ray(2);
    // a*v1 + b*v2 + c*v3 = 0 with (a, b, c) = (det(v2,v3), det(v3,v1), det(v1,v2))
    Int a = det(v2, v3), b = det(v3, v1), c = det(v1, v2);
    Int g = gcd(gcd(abs(a), abs(b)), abs(c));
    std::vector<Int> w{a / g, b / g, c / g};
    std::sort(w.begin(), w.end());
    return w;
}

Fan fan_p2() { return Fan::validate({{1, 0}, {0, 1}, {-1, -1}}); }
Fan fan_p1xp1() { return Fan::validate({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
Fan fan_f1() { return Fan::validate({{1, 0}, {1, 1}, {0, 1}, {-1, -1}}); }

Fan fan_example1(long n) {
    return Fan::validate({{1, 0}, {1, n}, {-1, 0}, {-1, -n}});
}
Fan fan_example2(long n) {
    return Fan::validate({{1, 0}, {1, n}, {0, 1}, {-1, -1}});
}
Fan fan_example3(long n) {
    return Fan::validate({{1, 0}, {1, n}, {0, 1}, {-1, -n}});
}

}  // namespace mori
