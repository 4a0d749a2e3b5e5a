#pragma once

#include <stdexcept>
#include <string>

#include "twinbeam/config.hpp"

namespace twinbeam {

inline constexpr const char* version = "0.1.0";

// Any module failure surfaced with the pipeline stage that raised it.
struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string s, const std::string& what) : std::runtime_error(what), stage(std::move(s)) {}
};

// phasematch | decompose | gaussian | validity | compare | spacetime
void run(const std::string& subcommand, const RunConfig& cfg);

}  // namespace twinbeam
