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

// uaris: command-line front end of the UA-RIS simulator.
//
//   uaris steer   --scenario fig9.json --out results/
//   uaris compare --scenario fig9.json --out results/ --format json
//   uaris check   --seed 42 --out results/

#include <iostream>

#include <CLI11.hpp>

#include "uaris/commands.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Underwater acoustic RIS simulator"};
    app.require_subcommand(1);

    uaris::CommandOptions options;
    auto add_common = [&](CLI::App *sub, bool needs_scenario) {
        auto *scenario = sub->add_option("--scenario", options.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
        if (needs_scenario)
            scenario->required();
        sub->add_option("--out", options.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--format", options.format, "Pattern and table format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_flag("--quantize", options.quantize, "Realize coefficients with the hardware catalog");
        sub->add_option("--seed", options.seed, "Seed for randomized test utilities")->capture_default_str();
    };

    const std::vector<std::pair<std::string, std::string>> commands{
        {"steer", "Configure the array and evaluate its beam pattern"},
        {"compare", "Compare beam patterns of several coding schemes"},
        {"tank", "Replay the tank multipath channel and run the differential analysis"},
        {"link", "Range extension and data-rate gain from an SNR gain"},
        {"power", "Standby, configuration and maintenance energy report"},
        {"catalog", "List the reflection coefficients the hardware can realize"},
        {"check", "Randomized self-consistency checks"},
    };
    for (const auto &[name, help] : commands)
        add_common(app.add_subcommand(name, help), name != "check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : uaris::kExitInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return uaris::run_command(command, options, std::cout, std::cerr);
}
