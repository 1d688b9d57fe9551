#pragma once

#include <CLI11.hpp>
#include <functional>

#include "context.hpp"

namespace blockmerge::cli {

/// A registered subcommand: returns the exit code once parsing succeeded.
using Runner = std::function<int(Context&)>;

Runner add_exact(CLI::App& app);
Runner add_moments(CLI::App& app);
Runner add_pmf(CLI::App& app);
Runner add_simulate(CLI::App& app);
Runner add_clt(CLI::App& app);
Runner add_recurrence(CLI::App& app);

/// Entry point shared by main() and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args);

}  // namespace blockmerge::cli
