// shared helpers for the test binaries: seeded random fans and boundaries
#pragma once

#include "mori/lattice_fan.hpp"
#include "mori/toric_surface.hpp"

#include <set>
#include <utility>
#include <vector>

namespace mori::testsupport {

// seeded random complete fan with ray count in [min_rays, max_rays]
inline Fan random_fan(SplitMix64& rng, int min_rays = 5, int max_rays = 10) {
    while (true) {
        int want = min_rays + static_cast<int>(rng.below(max_rays - min_rays + 1));
        std::set<std::pair<long, long>> seen;
        std::vector<IVec2> rays;
        for (int tries = 0; tries < 300 && (int)rays.size() < want; ++tries) {
            long x = static_cast<long>(rng.below(19)) - 9;
            long y = static_cast<long>(rng.below(19)) - 9;
            if (x == 0 && y == 0) continue;
            IVec2 v = make_primitive(IVec2(x, y));
            auto key = std::make_pair(v.x.convert_to<long>(), v.y.convert_to<long>());
            if (!seen.insert(key).second) continue;
            rays.push_back(v);
        }
        if ((int)rays.size() < want) continue;
        try {
            return Fan::validate(rays);
        } catch (const DomainError&) {
            continue;
        }
    }
}

inline TDivisor random_boundary(SplitMix64& rng, int n) {
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) c.push_back(rng.rat01());
    return TDivisor(std::move(c));
}

}  // namespace mori::testsupport
