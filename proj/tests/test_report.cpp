#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mori/report.hpp"

using namespace mori;

TEST_CASE("meta digest is stable") {
    ReportMeta m = make_meta("ray 1 0\n", 7);
    CHECK(m.digest.size() == 16);
    CHECK(m.seed == "7");
    CHECK(make_meta("ray 1 0\n", 7).digest == m.digest);
    CHECK(make_meta("ray 1 1\n", 7).digest != m.digest);
}

TEST_CASE("fan report shape") {
    std::string r = fan_report(fan_example1(2), make_meta("x", 0));
    CHECK(r.find("\"picard_rank\": \"2\"") != std::string::npos);
    CHECK(r.find("\"smooth\": false") != std::string::npos);
    CHECK(r.find("\"version\": \"0.1.0\"") != std::string::npos);
    // rationals and integers are strings
    CHECK(r.find("\"2\"") != std::string::npos);
}

TEST_CASE("trace report carries exact degrees") {
    ToricSurface x(fan_f1());
    MMPTrace t = run_mmp(LogPair(x, TDivisor::zero(4)), Strategy::first_index());
    std::string r = trace_report(t, make_meta("y", 3));
    CHECK(r.find("\"terminal\"") != std::string::npos);
    CHECK(r.find("\"-1/1\"") != std::string::npos);  // E-contraction degree
    CHECK(r.find("\"seed\": \"3\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    Fan f = fan_example2(2);
    ToricSurface z(f);
    TDivisor phi = TDivisor::zero(4);
    phi[f.find_ray(IVec2(0, 1))] = Rat(3, 4);
    LinkChain a = decompose_sarkisov(z, phi, Strategy::parse("prefer-ray:1,2"),
                                     Strategy::parse("prefer-ray:0,1"), 7);
    LinkChain b = decompose_sarkisov(z, phi, Strategy::parse("prefer-ray:1,2"),
                                     Strategy::parse("prefer-ray:0,1"), 7);
    ReportMeta meta = make_meta("scenario", 7);
    CHECK(chain_report(a, meta) == chain_report(b, meta));
    CHECK(decomposition_report(a.build.decomp, meta) ==
          decomposition_report(b.build.decomp, meta));
    CHECK(decomposition_svg(a.build.decomp, &a) == decomposition_svg(b.build.decomp, &b));
    CHECK(chain_report(a, meta).find("\"type\": \"II\"") != std::string::npos);
}

TEST_CASE("error report shape") {
    std::string e = error_report("duplicate_ray", "duplicate ray direction (1,0)");
    CHECK(e.find("\"error\": \"duplicate_ray\"") != std::string::npos);
}

TEST_CASE("svg has the fixed canvas and boundary stroke") {
    Fan f = fan_example3(2);
    ToricSurface z(f);
    LinkChain c = decompose_sarkisov(z, TDivisor::zero(4), Strategy::prefer_fibration(),
                                     Strategy::parse("prefer-ray:1,2"), 7);
    std::string svg = decomposition_svg(c.build.decomp, &c);
    CHECK(svg.find("width=\"800\" height=\"800\"") != std::string::npos);
    CHECK(svg.find("stroke-width=\"3\"") != std::string::npos);  // E boundary
    CHECK(svg.find("<text") != std::string::npos);               // link label
}
