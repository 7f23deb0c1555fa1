// Exact arithmetic primitives shared by every module: unbounded integers,
// canonical rationals, deterministic serialization and a tiny seeded PRNG.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mori {

// Expression templates are switched off: every arithmetic expression
// evaluates to a plain value, so deduced return types can never capture
// references to dead operands.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Domain error with a stable machine-readable code ("duplicate_ray", ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline std::string int_str(const Int& v) { return v.str(); }

// Rationals always serialize as "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Int parse_int(std::string_view s);
Rat parse_rat(std::string_view s);  // accepts "p" and "p/q"

// exact a / b for any sign of b; throws on b = 0
inline Rat frac(const Int& a, const Int& b) {
    if (b == 0) throw DomainError("bad_number", "division by zero");
    return b < 0 ? Rat(-a, -b) : Rat(a, b);
}

// 64-bit FNV-1a, used for input digests and stable SVG colors.
std::uint64_t fnv1a64(std::string_view data);

// splitmix64: tiny deterministic PRNG; identical streams on every platform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // random rational in [0, 1] with denominator <= max_den
    Rat rat01(std::uint64_t max_den = 16) {
        std::uint64_t q = 1 + below(max_den);
        std::uint64_t p = below(q + 1);
        return Rat(Int(p), Int(q));
    }
};

}  // namespace mori
