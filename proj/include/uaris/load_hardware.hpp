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

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uaris/core.hpp"

namespace uaris {

using Impedance = std::complex<double>;

struct OpenCircuit
{
};
struct ShortCircuit
{
};

/// Resistive stage; `resistance` is the programmed value plus the wiper resistance.
struct Potentiometer
{
    double resistance;
};

/// Series R-C stage. The component values are optional: the catalog works from the
/// nominal reflection coefficient of each stage, components are only needed by stage_impedance().
struct CapacitiveStage
{
    int index; // 1..3
    std::optional<double> resistance{};
    std::optional<double> capacitance{};
};

/// Series R-L stage, see CapacitiveStage.
struct InductiveStage
{
    int index; // 1..3
    std::optional<double> resistance{};
    std::optional<double> inductance{};
};

struct ExplicitLoad
{
    Impedance impedance;
};

/// One discrete configuration of a reflector's load network.
///
/// Every stage (potentiometer, capacitive, inductive) is connected through a pair of
/// back-to-back NMOS transistors so that the body diodes cannot conduct on the negative
/// half cycle of strong incident waves; switching transients are not simulated.
struct LoadState
{
    std::variant<OpenCircuit, ShortCircuit, Potentiometer, CapacitiveStage, InductiveStage, ExplicitLoad> kind;

    static LoadState open() { return {OpenCircuit{}}; }
    static LoadState short_circuit() { return {ShortCircuit{}}; }
    static LoadState potentiometer(double ohms) { return {Potentiometer{ohms}}; }
    static LoadState capacitive(int index) { return {CapacitiveStage{index}}; }
    static LoadState inductive(int index) { return {InductiveStage{index}}; }
    static LoadState explicit_load(Impedance z) { return {ExplicitLoad{z}}; }

    bool is_reactive_stage() const;
    bool is_resistive() const; // open, short and potentiometer
    bool uses_switch_pair() const;

    /// Short label: "open", "short", "R=150", "C0.6", "L0.9", "Z=10+5j".
    std::string name() const;

    /// Inverse of name(); throws InputError for unknown labels.
    static LoadState from_name(const std::string &label);

    friend bool operator==(const LoadState &a, const LoadState &b) { return a.name() == b.name(); }
};

/// Nominal reflection magnitude of reactive stage `index` (1 -> 0.3, 2 -> 0.6, 3 -> 0.9).
double nominal_stage_magnitude(int index);

struct HardwareCatalog
{
    double z0 = 1000.0;              // matching impedance, ohms
    double wiper_resistance = 50.0;  // ohms
    double max_resistance = 50000.0; // ohms
    int potentiometer_steps = 256;
    std::vector<Phasor<double>> cap_stage_gammas{{0.0, -0.3}, {0.0, -0.6}, {0.0, -0.9}};
    std::vector<Phasor<double>> ind_stage_gammas{{0.0, 0.3}, {0.0, 0.6}, {0.0, 0.9}};
    double gamma_max = 0.9;

    /// Throws DomainError when an invariant is broken.
    void validate() const;

    /// Resistance of potentiometer code `step` (linear taper, wiper included).
    double potentiometer_resistance(int step) const;

    friend bool operator==(const HardwareCatalog &, const HardwareCatalog &) = default;
};

struct CatalogEntry
{
    LoadState state;
    Phasor<double> gamma;
};

/// (Z_L - Z0) / (Z_L + Z0). Infinite impedance (open circuit) maps to exactly 1.
Phasor<double> reflection_coefficient(Impedance z_load, double z0);

/// Complex impedance of a potentiometer, reactive stage with component values, or explicit load.
Impedance stage_impedance(const LoadState &stage, double frequency);

/// Every realizable (state, gamma) of the catalog: open, short, the potentiometer sweep in
/// ascending resistance, then the capacitive and inductive stages.
std::vector<CatalogEntry> catalog_gammas(const HardwareCatalog &catalog, double frequency);

/// Coefficient the catalog realizes for one state. Reactive stages take their nominal gammas.
Phasor<double> state_gamma(const LoadState &state, const HardwareCatalog &catalog, double frequency);

/// Nearest realizable coefficient in the complex plane. Never fails; requests outside the
/// unit disc clip to the closest passive state.
CatalogEntry quantize_gamma(Phasor<double> target, const HardwareCatalog &catalog, double frequency);

/// Quantizer that enumerates the catalog once and answers many queries.
class CatalogQuantizer
{
public:
    CatalogQuantizer(const HardwareCatalog &catalog, double frequency);

    const CatalogEntry &nearest(Phasor<double> target) const;
    const std::vector<CatalogEntry> &entries() const { return entries_; }

private:
    std::vector<CatalogEntry> entries_;
};

} // namespace uaris
