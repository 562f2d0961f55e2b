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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uaris/beam.hpp"
#include "uaris/channel.hpp"
#include "uaris/io.hpp"
#include "uaris/link.hpp"
#include "uaris/power.hpp"

namespace uaris {

struct GridLayout
{
    int rows{1};
    int cols{1};
    double spacing_wavelengths{0.5};
    Eigen::Vector3d col_axis{Eigen::Vector3d::UnitX()};
    Eigen::Vector3d row_axis{Eigen::Vector3d::UnitY()};
    double element_aperture_wavelengths{0};
};

struct ExplicitLayout
{
    std::vector<int> ids;
    std::vector<Eigen::Vector3d> positions; // meters
    Eigen::Vector3d normal{Eigen::Vector3d::UnitZ()};
    double element_aperture_m{0};
};

/// A direction given either by azimuth/elevation or by an angle in the scenario's sweep plane.
struct DirectionSpec
{
    std::variant<std::pair<double, double>, double> value; // (azimuth, elevation) or sweep angle, degrees

    Eigen::Vector3d resolve(const SweepPlane<double> &plane) const;
};

struct SweepSpec
{
    std::string plane{"xy"};
    double start_deg{0};
    double stop_deg{360};
    double step_deg{0.5};
};

struct LinkSpec
{
    std::vector<double> alphas{2.0};
    std::optional<double> beta_db_per_km{}; // absorption model when absent
    double r_x_km{0.5};
    std::vector<double> delta_snr_db{};
    SeawaterConditions environment{};
};

struct PowerSpec
{
    PowerConfig config{};
    std::vector<BusTransfer> transfers{};
    double phase2_duration_s{1.0};
};

struct TankCase
{
    std::string name;
    Phasor<double> gamma_a;
    Phasor<double> gamma_b;
};

struct TankSpec
{
    TankChannel channel;
    double duration_s{0};
    std::optional<double> sample_rate_hz{}; // 16x the carrier when absent
    std::vector<TankCase> cases;           // the first case is the reference
    bool write_wav{false};
};

/// Everything one run needs. Angles are degrees, lengths meters, frequencies hertz.
struct Scenario
{
    double frequency_hz{0};
    double sound_speed_mps{1500};
    std::optional<std::variant<GridLayout, ExplicitLayout>> array{};
    std::optional<DirectionSpec> incident{}; // toward the source
    std::optional<DirectionSpec> target{};
    Scheme scheme{Scheme::Synthetic};
    std::vector<Scheme> compare_schemes{Scheme::Synthetic, Scheme::OneBit};
    std::map<int, Phasor<double>> explicit_gammas{};
    std::optional<HardwareCatalog> catalog{};
    SynthesisOptions<double> synthesis{};
    SweepSpec sweep{};
    double lobe_floor{0.05};
    std::optional<LinkSpec> link{};
    std::optional<PowerSpec> power{};
    std::optional<TankSpec> tank{};

    double wavelength() const { return sound_speed_mps / frequency_hz; }
    SweepPlane<double> sweep_plane() const { return SweepPlane<double>::named(sweep.plane); }
    std::vector<double> sweep_angles() const;

    ArrayGeometry<double> geometry() const;
    PlaneWave<double> incident_wave() const;
    Eigen::Vector3d target_direction() const;
};

/// Parses and validates a scenario document; every problem is an InputError naming its field.
Scenario scenario_from_json(const io::json &doc);
Scenario load_scenario(const std::string &path);

} // namespace uaris
