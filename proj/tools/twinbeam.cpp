#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <regex>

#include "twinbeam/config.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spatio-temporal squeezing eigenmodes of a pulsed noncollinear type-I OPA"};
    app.require_subcommand(1);
    std::string config, out, grid, mu, format;
    int modes = 0;

    for (const char* name : {"phasematch", "decompose", "gaussian", "validity", "compare", "spacetime"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "configuration file")->required();
        sub->add_option("--out", out, "output directory");
        sub->add_option("--grid", grid, "signal grid size NxM (q_x points x Omega points)");
        sub->add_option("--mu", mu, "fitting parameter value or 'fit'");
        sub->add_option("--modes", modes, "number of modes to emit")->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "grid output format")->check(CLI::IsMember({"csv", "bin"}));
    }
    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        twinbeam::RunConfig cfg;
        try {
            cfg = twinbeam::parse_config(config);
            if (!out.empty()) cfg.out_dir = out;
            if (!format.empty()) cfg.format = format;
            if (modes > 0) cfg.modes = modes;
            if (!grid.empty()) {
                std::smatch m;
                if (!std::regex_match(grid, m, std::regex(R"((\d+)[xX](\d+))")))
                    throw twinbeam::ConfigError("--grid expects NxM, got '" + grid + "'");
                cfg.nq = std::stoi(m[1]);
                cfg.nW = std::stoi(m[2]);
                if (cfg.nq < 3 || cfg.nW < 3) throw twinbeam::ConfigError("--grid dimensions must be >= 3");
            }
            if (mu == "fit")
                cfg.mu.reset();
            else if (!mu.empty()) {
                size_t pos = 0;
                double v = 0;
                try {
                    v = std::stod(mu, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                if (pos != mu.size() || !(v > 0)) throw twinbeam::ConfigError("--mu expects a positive number or 'fit'");
                cfg.mu = v;
            }
        } catch (const std::exception& e) {
            throw twinbeam::StageError("config", e.what());
        }
        twinbeam::run(sub, cfg);
    } catch (const twinbeam::StageError& e) {
        std::cerr << "error [" << e.stage << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
