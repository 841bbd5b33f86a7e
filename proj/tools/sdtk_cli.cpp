#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sdtk/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sdtk::schema_error("cannot read spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic dynamics toolkit experiment runner"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int horizon = 0;
    int m = 3;
    double theta = 0.01;
    double tail = 0.5;
    int ratio = 4;
    bool seed_given = false;

    const std::vector<std::string> commands{
        "decompose", "dsp-check",      "shadow",        "avg-shadow",    "omega-bar",
        "dc2-scan",  "irregular-scan", "scrambled-check", "measure-center", "entropy"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--spec", spec_path, "system spec JSON file")->required();
        sub->add_option("--out", out_path, "report output file")->required();
        sub->add_option("--seed", seed, "64-bit seed")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--horizon", horizon, "sample horizon / pseudo-orbit length");
        sub->add_option("--m", m, "dyadic delta exponent (delta = 2^-m)");
        sub->add_option("--theta", theta, "positive-density threshold");
        sub->add_option("--tail", tail, "tail window fraction");
        sub->add_option("--ratio", ratio, "block growth ratio");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    sdtk::ExperimentSpec spec;
    spec.command = app.get_subcommands().front()->get_name();
    spec.seed = seed;
    spec.horizon = horizon;
    spec.m = m;
    spec.theta = theta;
    spec.tail_fraction = tail;
    spec.ratio = ratio;

    const bool randomized = spec.command == "shadow" || spec.command == "dsp-check" ||
                            spec.command == "irregular-scan";
    if (randomized && !seed_given) {
        std::cerr << "error: --seed is required for " << spec.command << "\n";
        return 2;
    }

    try {
        spec.spec_text = read_file(spec_path);
        const auto report = sdtk::run(spec);
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << report.dump(2) << "\n";
        return 0;
    } catch (const sdtk::schema_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const sdtk::toolkit_error& e) {
        std::cerr << "analysis error (" << spec.command << "): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "analysis error (" << spec.command << "): " << e.what() << "\n";
        return 3;
    }
}
