// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uaris/scenario.hpp"

namespace uaris {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitSolver = 3 };

struct CommandOptions
{
    std::string scenario_path;
    std::string out_dir{"."};
    std::string format{"csv"}; // pattern and table format: csv or json
    bool quantize{false};
    std::uint64_t seed{1};
};

struct SteerResult
{
    GammaAssignment<double> assignment;
    BeamPattern<double> pattern; // of the realized coefficients when quantizing
    BeamMetrics<double> metrics;
    std::optional<BeamPattern<double>> ideal_pattern{};
    std::optional<BeamMetrics<double>> ideal_metrics{};
};

struct TankCaseResult
{
    TankCase spec;
    double predicted_ratio{0};
    double simulated_amplitude{0};
    double simulated_ratio{0};
    Waveform differential;
};

struct TankReport
{
    double sample_rate_hz{0};
    double settle_time_s{0};
    std::vector<TankCaseResult> cases;
};

SteerResult run_steer(const Scenario &scenario, bool quantize);
SchemeComparison<double> run_compare(const Scenario &scenario, bool quantize);
io::LinkReport run_link(const Scenario &scenario);
io::PowerSummary run_power(const Scenario &scenario);
TankReport run_tank(const Scenario &scenario);

/// Randomized self-consistency checks driven by `seed`; never used by the simulator itself.
io::json run_self_check(std::uint64_t seed);

/// Executes one subcommand (steer, compare, tank, link, power, catalog, check), writes its
/// artifacts into options.out_dir and returns the process exit code. Diagnostics go to `err`.
int run_command(const std::string &command, const CommandOptions &options, std::ostream &out, std::ostream &err);

const std::vector<std::string> &command_names();

} // namespace uaris
