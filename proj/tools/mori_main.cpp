// mori: exact toric surface MMP, geography of log models and Sarkisov links.
//
// Exit codes: 0 success, 1 domain error (machine-readable JSON on stderr),
// 2 usage error. MORI_SEED overrides the default seed.

#include "mori/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mori;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("io_error", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw DomainError("io_error", "cannot write '" + path + "'");
    f << content;
}

std::string dir_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

struct Output {
    std::string format = "json";  // json | svg | both
    std::string path;             // empty: stdout (json only)

    void emit(const std::string& json_text, const std::string& svg_text) const {
        if (format == "json" || format == "both") {
            if (path.empty())
                std::cout << json_text;
            else
                write_file(format == "both" ? path + ".json" : path, json_text);
        }
        if (format == "svg" || format == "both") {
            if (svg_text.empty())
                throw DomainError("bad_usage", "this subcommand has no SVG output");
            if (path.empty())
                std::cout << svg_text;
            else
                write_file(format == "both" ? path + ".svg" : path, svg_text);
        }
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MORI_SEED"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return 0;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) out.push_back(parse_rat(cur));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact minimal model program and Sarkisov links on toric surfaces"};
    app.require_subcommand(1);

    std::string input;
    Output out;
    std::uint64_t seed = default_seed();
    bool seed_given = false;
    std::string delta_text, strategy_text = "first-index";

    auto add_common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("input", input, "input file")->required();
        sub->add_option("--format", out.format, "json | svg | both")
            ->check(CLI::IsMember({"json", "svg", "both"}));
        sub->add_option("-o,--output", out.path, "output path (stdout when omitted)");
        if (with_seed)
            sub->add_option("--seed", seed, "seed recorded in the report")
                ->each([&](const std::string&) { seed_given = true; });
    };

    CLI::App* fan_check = app.add_subcommand("fan-check", "validate a fan file");
    add_common(fan_check, false);
    CLI::App* surface = app.add_subcommand("surface-info", "divisor theory of a fan");
    add_common(surface, false);
    CLI::App* mmp = app.add_subcommand("mmp", "run the MMP on a pair");
    add_common(mmp, true);
    mmp->add_option("--delta", delta_text, "boundary coefficients p/q,p/q,...");
    mmp->add_option("--strategy", strategy_text,
                    "first-index | prefer-fibration[:x,y] | prefer-ray:x,y | random");
    CLI::App* geography =
        app.add_subcommand("geography", "chamber decomposition of a scenario slice");
    add_common(geography, true);
    CLI::App* sarkisov =
        app.add_subcommand("sarkisov", "factor a scenario into Sarkisov links");
    add_common(sarkisov, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string bytes = read_file(input);

        if (fan_check->parsed()) {
            Fan f = Fan::from_text(bytes);
            out.emit(fan_report(f, make_meta(bytes, seed)), "");
        } else if (surface->parsed()) {
            ToricSurface x(Fan::from_text(bytes));
            out.emit(surface_report(x, make_meta(bytes, seed)), "");
        } else if (mmp->parsed()) {
            ToricSurface x(Fan::from_text(bytes));
            TDivisor delta = TDivisor::zero(x.rays());
            if (!delta_text.empty()) {
                auto vals = parse_rat_list(delta_text);
                if ((int)vals.size() != x.rays())
                    throw DomainError("bad_pair", "need one coefficient per ray");
                delta = TDivisor(vals);
            }
            MMPTrace t = run_mmp(LogPair(x, delta), Strategy::parse(strategy_text));
            out.emit(trace_report(t, make_meta(bytes, seed)), "");
        } else if (geography->parsed() || sarkisov->parsed()) {
            Scenario sc = parse_scenario(bytes, dir_of(input));
            if (seed_given) sc.seed = seed;
            ToricSurface z(sc.fan);
            LinkChain chain =
                decompose_sarkisov(z, sc.phi(), sc.strategy_a, sc.strategy_b, sc.seed);
            ReportMeta meta = make_meta(bytes, sc.seed);
            if (geography->parsed())
                out.emit(decomposition_report(chain.build.decomp, meta),
                         decomposition_svg(chain.build.decomp));
            else
                out.emit(chain_report(chain, meta),
                         decomposition_svg(chain.build.decomp, &chain));
        }
        return 0;
    } catch (const DomainError& e) {
        std::cerr << error_report(e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_report("internal_error", e.what());
        return 1;
    }
}
