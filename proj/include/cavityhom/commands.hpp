#pragma once

#include <string>
#include <vector>

#include "cavityhom/config.hpp"

namespace cavityhom {

// Subcommand bodies, callable from tests as well as the CLI. Each returns
// the list of files it wrote; failures throw.
std::vector<std::string> cmd_simulate(const RunConfig& config, unsigned n_threads = 0);
std::vector<std::string> cmd_hom(const RunConfig& config_a, const RunConfig& config_b,
                                 unsigned n_threads = 0);
std::vector<std::string> cmd_sweep(const RunConfig& config, unsigned n_threads = 0);
std::vector<std::string> cmd_optimize(const RunConfig& config, unsigned n_threads = 0);

}  // namespace cavityhom
