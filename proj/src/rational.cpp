#include "mori/rational.hpp"

namespace mori {

Int parse_int(std::string_view s) {
    if (s.empty()) throw DomainError("bad_number", "empty integer literal");
    try {
        return Int(std::string(s));
    } catch (const std::exception&) {
        throw DomainError("bad_number", "not an integer: '" + std::string(s) + "'");
    }
}

Rat parse_rat(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(s));
    Int p = parse_int(s.substr(0, slash));
    Int q = parse_int(s.substr(slash + 1));
    if (q == 0) throw DomainError("bad_number", "zero denominator in '" + std::string(s) + "'");
    return frac(p, q);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace mori
