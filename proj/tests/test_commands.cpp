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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "uaris/commands.hpp"
#include "uaris/io.hpp"

using namespace uaris;
namespace fs = std::filesystem;

namespace {

const fs::path kData = UARIS_TEST_DATA;

struct Run
{
    int code;
    std::string out, err;
};

struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / ("uaris_" + name))
    {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Run run(const std::string &cmd, const std::string &scenario, const fs::path &out_dir, bool quantize = false,
        const std::string &format = "csv")
{
    CommandOptions o;
    if (!scenario.empty())
        o.scenario_path = (kData / scenario).string();
    o.out_dir = out_dir.string();
    o.quantize = quantize;
    o.format = format;
    std::ostringstream out, err;
    const int code = run_command(cmd, o, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int line_count(const fs::path &p)
{
    const std::string s = slurp(p);
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("steer writes the pattern, metrics and assignment")
{
    TempDir dir("steer");
    const Run r = run("steer", "steer_225.json", dir.path);
    REQUIRE(r.code == kExitOk);
    CHECK(line_count(dir.path / "pattern.csv") == 721);
    const auto metrics = io::metrics_from_json(io::read_json_file((dir.path / "metrics.json").string()));
    CHECK(metrics.main_lobe_deg == doctest::Approx(225));
    const auto a = io::assignment_from_json(io::read_json_file((dir.path / "assignment.json").string()));
    CHECK(a.ids.size() == 8);
    CHECK(a.scheme == Scheme::Synthetic);
    CHECK(r.out.find("main lobe 225 deg") != std::string::npos);
}

TEST_CASE("steer output is byte-identical across runs and leaves the scenario untouched")
{
    TempDir a("steer_a"), b("steer_b");
    const std::string before = slurp(kData / "steer_225.json");
    REQUIRE(run("steer", "steer_225.json", a.path, true).code == kExitOk);
    REQUIRE(run("steer", "steer_225.json", b.path, true).code == kExitOk);
    for (const char *f : {"pattern.csv", "metrics.json", "assignment.json", "pattern_ideal.csv", "metrics_ideal.json"}) {
        CAPTURE(f);
        CHECK(slurp(a.path / f) == slurp(b.path / f));
        CHECK(!slurp(a.path / f).empty());
    }
    CHECK(slurp(kData / "steer_225.json") == before);
}

TEST_CASE("json pattern format")
{
    TempDir dir("steer_json");
    REQUIRE(run("steer", "steer_225.json", dir.path, false, "json").code == kExitOk);
    CHECK(io::read_json_file((dir.path / "pattern.json").string())["samples"].size() == 720);
    CHECK(run("steer", "steer_225.json", dir.path, false, "xml").code == kExitInput);
}

TEST_CASE("unknown scheme is an input error naming the field")
{
    TempDir dir("bad");
    const Run r = run("steer", "bad_scheme.json", dir.path);
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("scheme") != std::string::npos);
    CHECK(!fs::exists(dir.path / "pattern.csv"));
}

TEST_CASE("solver failures exit with the solver code")
{
    TempDir dir("solver");
    const Run singular = run("steer", "singular_pair.json", dir.path);
    CHECK(singular.code == kExitSolver);
    CHECK(singular.err.find("(0, 1)") != std::string::npos);
    CHECK(run("steer", "no_pairs.json", dir.path).code == kExitSolver);
}

TEST_CASE("missing scenario file and unknown command")
{
    TempDir dir("missing");
    CHECK(run("steer", "does_not_exist.json", dir.path).code == kExitInput);
    CHECK(run("steer", "", dir.path).code == kExitInput);
    CHECK(run("launch", "steer_225.json", dir.path).code == kExitInput);
    CHECK(command_names().size() == 7);
}

TEST_CASE("compare writes one pattern per scheme")
{
    TempDir dir("compare");
    const Run r = run("compare", "steer_225.json", dir.path);
    REQUIRE(r.code == kExitOk);
    const auto doc = io::read_json_file((dir.path / "compare.json").string());
    CHECK(doc["schemes"].size() == 3);
    CHECK(doc["deltas"].size() == 3);
    for (const char *f : {"pattern_synthetic.csv", "pattern_1bit.csv", "pattern_2bit.csv"})
        CHECK(line_count(dir.path / f) == 721);
}

TEST_CASE("link command")
{
    TempDir dir("link");
    REQUIRE(run("link", "link.json", dir.path).code == kExitOk);
    const auto r = io::link_report_from_json(io::read_json_file((dir.path / "link.json").string()));
    REQUIRE(r.cases.size() == 4);
    CHECK(r.cases[3].r_y_km == doctest::Approx(0.70).epsilon(0.015));
    CHECK(run("steer", "link.json", dir.path).code == kExitInput);
}

TEST_CASE("power command")
{
    TempDir dir("power");
    REQUIRE(run("power", "power.json", dir.path).code == kExitOk);
    const auto s = io::power_summary_from_json(io::read_json_file((dir.path / "power.json").string()));
    CHECK(s.standby_w * 1e6 == doctest::Approx(73.3));
    CHECK(s.phase1_j * 1e6 == doctest::Approx(197.664 + 49.0752));
    CHECK(s.phase2_j * 1e3 == doctest::Approx(9.3));
    CHECK(s.reference.size() == 21);
}

TEST_CASE("tank command matches the predicted ratios")
{
    TempDir dir("tank");
    REQUIRE(run("tank", "tank.json", dir.path).code == kExitOk);
    const auto doc = io::read_json_file((dir.path / "tank.json").string());
    REQUIRE(doc["cases"].size() == 4);
    for (const auto &c : doc["cases"])
        CHECK(c["simulated_ratio"].get<double>() ==
              doctest::Approx(c["predicted_ratio"].get<double>()).epsilon(1e-3));
    CHECK(doc["cases"][1]["predicted_ratio"].get<double>() == doctest::Approx(0.6727).epsilon(1e-3));
    CHECK(fs::exists(dir.path / "differential_open_c09.csv"));
}

TEST_CASE("catalog and self-check commands")
{
    TempDir dir("catalog");
    REQUIRE(run("catalog", "link.json", dir.path).code == kExitOk);
    CHECK(line_count(dir.path / "catalog.csv") > 256);
    const Run check = run("check", "", dir.path);
    CHECK(check.code == kExitOk);
    CHECK(io::read_json_file((dir.path / "check.json").string())["passed"].get<bool>());
}
