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

#include <sstream>

#include "uaris/errors.hpp"
#include "uaris/io.hpp"
#include "uaris/scenario.hpp"

using namespace uaris;
using io::json;
using V3 = Eigen::Vector3d;

namespace {

std::string field_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const InputError &e) {
        return e.field;
    }
    return "<no error>";
}

json minimal_scenario()
{
    return json::parse(R"({
        "frequency_hz": 28000,
        "array": {"grid": {"rows": 2, "cols": 2, "spacing_wavelengths": 0.5}},
        "incident": {"azimuth_deg": 0, "elevation_deg": 60},
        "target": {"azimuth_deg": 180, "elevation_deg": 60}
    })");
}

GammaAssignment<double> quantized_assignment()
{
    const auto g = ArrayGeometry<double>::grid(2, 3, 0.5 * 1500 / 28000.0);
    const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(0.0, 50.0), 28000);
    return configure_synthetic(g, w, direction_from_az_el(180.0, 50.0), HardwareCatalog{});
}

} // namespace

TEST_CASE("doubles are written with round-trip precision")
{
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(-0.0) == "0");
    CHECK(io::format_double(2) == "2");
    for (double v : {1.0 / 3, 6.02e23, -1e-300, 28000.5})
        CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("catalog round trip")
{
    HardwareCatalog c;
    c.z0 = 750;
    c.potentiometer_steps = 128;
    c.cap_stage_gammas = {{0, -0.2}, {0, -0.5}, {0, -0.8}};
    CHECK(io::catalog_from_json(io::catalog_to_json(c)) == c);
    CHECK(io::catalog_from_json(json::parse(io::dump(io::catalog_to_json(HardwareCatalog{})))) == HardwareCatalog{});
}

TEST_CASE("assignment round trip keeps quantized states and pairing")
{
    const auto a = quantized_assignment();
    REQUIRE(a.quantized_states);
    REQUIRE(a.pairing);
    const auto b = io::assignment_from_json(json::parse(io::dump(io::assignment_to_json(a))));
    CHECK(b.ids == a.ids);
    CHECK(b.gammas == a.gammas);
    CHECK(b.scheme == a.scheme);
    CHECK(b.passivity_scale == a.passivity_scale);
    CHECK(*b.quantized_gammas == *a.quantized_gammas);
    REQUIRE(b.quantized_states->size() == a.quantized_states->size());
    for (std::size_t i = 0; i < a.quantized_states->size(); ++i)
        CHECK((*b.quantized_states)[i].name() == (*a.quantized_states)[i].name());
    CHECK(b.pairing->pairs == a.pairing->pairs);
    CHECK(b.pairing->unpaired == a.pairing->unpaired);
}

TEST_CASE("assignment parsing rejects bad input")
{
    json doc = io::assignment_to_json(quantized_assignment());
    doc["scheme"] = "3bit";
    CHECK(field_of([&] { io::assignment_from_json(doc); }) == "assignment.scheme");
    doc = io::assignment_to_json(quantized_assignment());
    doc["elements"]["0"]["re"] = 2.0;
    CHECK_THROWS_AS(io::assignment_from_json(doc), InputError);
}

TEST_CASE("metrics round trip")
{
    BeamMetrics<double> m{225, 7.2, {{235.5, 0.26}, {190, 0.1}}, 6.48, true};
    CHECK(io::metrics_from_json(json::parse(io::dump(io::metrics_to_json(m)))) == m);
}

TEST_CASE("channel and link parameters round trip")
{
    const TankChannel c{{{1, 0.5, 1e-4}, {0.3, -2, 2e-4}}, {{0.7, 1, 3e-4}}};
    CHECK(io::channel_from_json(json::parse(io::dump(io::channel_to_json(c)))) == c);
    const LinkBudgetParams p{1, 3.5, 0.25, 4.2};
    CHECK(io::link_params_from_json(io::link_params_to_json(p)) == p);
}

TEST_CASE("link report round trip")
{
    io::LinkReport r;
    r.frequency_hz = 28000;
    r.modeled_absorption_db_per_km = 6.3;
    r.beta_from_model = true;
    const LinkBudgetParams p{2, 6.1, 0.5, 2.9};
    r.cases.push_back({p, range_extension(p), 28.1, rate_multiplier(2.9)});
    CHECK(io::link_report_from_json(json::parse(io::dump(io::link_report_to_json(r)))) == r);
}

TEST_CASE("power summary round trip")
{
    io::PowerSummary s;
    s.config.vcc = 3;
    s.standby_w = standby_power(s.config);
    s.peak_w = peak_power(s.config);
    s.maintain_w = maintain_power(s.config);
    s.transfers = {BusTransfer::i2c(72, 50e3), BusTransfer::spi(48, 125e3)};
    s.phase1_j = phase1_energy(s.transfers, s.config);
    s.phase2_duration_s = 2;
    s.phase2_j = phase2_energy(2, s.config);
    s.reference = power_report(s.config);
    CHECK(io::power_summary_from_json(json::parse(io::dump(io::power_summary_to_json(s)))) == s);
}

TEST_CASE("pattern csv has a header and one row per angle")
{
    BeamPattern<double> p;
    p.angles_deg = {0, 0.5, 1};
    p.response = (PhasorVector<double>(3) << Phasor<double>(1, 0), Phasor<double>(0, 2), Phasor<double>(0, 0)).finished();
    p.normalization = 2;
    const std::string csv = io::pattern_to_csv(p);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("angle_deg,", 0) == 0);
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 3);
    CHECK(io::pattern_to_json(p)["samples"].size() == 3);
}

TEST_CASE("scenario parsing")
{
    const Scenario s = scenario_from_json(minimal_scenario());
    CHECK(s.frequency_hz == 28000);
    CHECK(s.sound_speed_mps == 1500);
    CHECK(s.scheme == Scheme::Synthetic);
    CHECK(s.geometry().size() == 4);
    CHECK(s.sweep_angles().size() == 720);
    json no_target = minimal_scenario();
    no_target.erase("target");
    CHECK(field_of([&] { scenario_from_json(no_target).target_direction(); }) == "target");
    CHECK((s.target_direction() - direction_from_az_el(180.0, 60.0)).norm() < 1e-12);
}

TEST_CASE("scenario errors name the offending field")
{
    auto fails = [](const std::function<void(json &)> &edit) {
        json doc = minimal_scenario();
        edit(doc);
        return field_of([&] { scenario_from_json(doc); });
    };
    CHECK(fails([](json &d) { d["scheme"] = "3bit"; }) == "scheme");
    CHECK(fails([](json &d) { d["bogus"] = 1; }) == "bogus");
    CHECK(fails([](json &d) { d["array"]["grid"]["colls"] = 3; }) == "array.grid.colls");
    CHECK(fails([](json &d) { d["frequency_hz"] = "fast"; }) == "frequency_hz");
    CHECK(fails([](json &d) { d["frequency_hz"] = -1; }) == "frequency_hz");
    CHECK(fails([](json &d) { d["schemes"] = {"synthetic", "4bit"}; }) == "schemes[1]");
    CHECK(fails([](json &d) { d["link"] = {{"r_x_km", -1}, {"delta_snr_db", 2.9}}; }) == "link.r_x_km");
    CHECK(fails([](json &d) { d["incident"]["sweep_angle_deg"] = 10; }) == "incident");
    CHECK(field_of([] { scenario_from_json(json::array()); }) == "document");
    CHECK_THROWS_AS(io::parse_document("{", "x.json"), InputError);
}

TEST_CASE("explicit array layout")
{
    json doc = minimal_scenario();
    doc["array"] = json::parse(R"({"positions": [[0,0,0],[0.02,0,0],[0,0.02,0]], "ids": [7, 3, 5], "normal": [0,0,1]})");
    const Scenario s = scenario_from_json(doc);
    CHECK(s.geometry().ids() == std::vector<int>{7, 3, 5});
    doc["array"]["ids"] = {1, 2};
    CHECK(field_of([&] { scenario_from_json(doc); }) == "array.ids");
}
