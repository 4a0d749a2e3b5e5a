#pragma once

#include <optional>
#include <string>

#include "twinbeam/dispersion.hpp"
#include "twinbeam/setup.hpp"
#include "twinbeam/specs.hpp"

namespace twinbeam {

struct RunConfig {
    CrystalSpec crystal;
    PumpSpec pump;
    FilterOverrides filter;
    int nq = 24, nW = 96;
    double margin = 0.05;
    std::optional<double> mu;  // empty = fit
    std::string out_dir = "out";
    std::string format = "bin";
    int modes = 6;
    int pad = 2;
    bool kernel_dump = false;
    std::string source;  // text echoed into metadata
    std::string path;
};

// INI-style sections; unknown sections or keys are rejected by name.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace twinbeam
