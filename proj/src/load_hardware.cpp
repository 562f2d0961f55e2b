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

#include "uaris/load_hardware.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace uaris {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void check_stage_index(int index)
{
    if (index < 1 || index > 3)
        throw DomainError("reactive stage index must be 1, 2 or 3");
}

} // namespace

double nominal_stage_magnitude(int index)
{
    check_stage_index(index);
    return 0.3 * index;
}

bool LoadState::is_reactive_stage() const
{
    return std::holds_alternative<CapacitiveStage>(kind) || std::holds_alternative<InductiveStage>(kind);
}

bool LoadState::is_resistive() const
{
    return std::holds_alternative<OpenCircuit>(kind) || std::holds_alternative<ShortCircuit>(kind) ||
           std::holds_alternative<Potentiometer>(kind);
}

bool LoadState::uses_switch_pair() const
{
    return std::holds_alternative<Potentiometer>(kind) || is_reactive_stage();
}

std::string LoadState::name() const
{
    return std::visit(
        overloaded{
            [](const OpenCircuit &) -> std::string { return "open"; },
            [](const ShortCircuit &) -> std::string { return "short"; },
            [](const Potentiometer &p) { return "R=" + format_number(p.resistance); },
            [](const CapacitiveStage &c) { return "C" + format_number(nominal_stage_magnitude(c.index)); },
            [](const InductiveStage &l) { return "L" + format_number(nominal_stage_magnitude(l.index)); },
            [](const ExplicitLoad &e) {
                const double im = e.impedance.imag();
                return "Z=" + format_number(e.impedance.real()) + (std::signbit(im) ? "-" : "+") +
                       format_number(std::abs(im)) + "j";
            },
        },
        kind);
}

LoadState LoadState::from_name(const std::string &label)
{
    if (label == "open")
        return open();
    if (label == "short")
        return short_circuit();
    try {
        if (label.rfind("R=", 0) == 0)
            return potentiometer(std::stod(label.substr(2)));
        if (label.size() > 1 && (label[0] == 'C' || label[0] == 'L')) {
            const double mag = std::stod(label.substr(1));
            const int index = static_cast<int>(std::lround(mag / 0.3));
            if (index >= 1 && index <= 3 && std::abs(mag - 0.3 * index) < 1e-9)
                return label[0] == 'C' ? capacitive(index) : inductive(index);
        }
        if (label.rfind("Z=", 0) == 0 && label.back() == 'j') {
            const std::string body = label.substr(2, label.size() - 3);
            const auto split = body.find_first_of("+-", 1);
            if (split != std::string::npos) {
                const double re = std::stod(body.substr(0, split));
                const double im = std::stod(body.substr(split));
                return explicit_load({re, im});
            }
        }
    } catch (const std::logic_error &) {
        // fall through to the error below
    }
    throw InputError("load_state", "unrecognised load state '" + label + "'");
}

void HardwareCatalog::validate() const
{
    if (!(z0 > 0))
        throw DomainError("catalog z0 must be positive");
    if (!(wiper_resistance >= 0))
        throw DomainError("wiper resistance must be non-negative");
    if (!(max_resistance > wiper_resistance))
        throw DomainError("max resistance must exceed the wiper resistance");
    if (potentiometer_steps < 2)
        throw DomainError("potentiometer needs at least two steps");
    if (!(gamma_max > 0 && gamma_max <= 1))
        throw DomainError("gamma_max must lie in (0, 1]");
    for (const auto *list : {&cap_stage_gammas, &ind_stage_gammas}) {
        if (list->size() != 3)
            throw DomainError("each reactive network has exactly three stages");
        for (const auto &g : *list)
            if (!(std::abs(g) <= 1.0))
                throw DomainError("catalog reflection coefficients must satisfy |gamma| <= 1");
    }
}

double HardwareCatalog::potentiometer_resistance(int step) const
{
    if (step < 0 || step >= potentiometer_steps)
        throw DomainError("potentiometer step out of range");
    return wiper_resistance + (max_resistance - wiper_resistance) * step / (potentiometer_steps - 1);
}

Phasor<double> reflection_coefficient(Impedance z_load, double z0)
{
    if (!(z0 > 0))
        throw DomainError("characteristic impedance must be positive");
    if (std::isinf(z_load.real()) || std::isinf(z_load.imag()))
        return {1.0, 0.0};
    const Impedance denom = z_load + z0;
    if (std::abs(denom) <= std::numeric_limits<double>::epsilon() * z0)
        throw SingularityError("load impedance equals -Z0; reflection coefficient is unbounded");
    return (z_load - z0) / denom;
}

Impedance stage_impedance(const LoadState &stage, double frequency)
{
    if (!(frequency > 0))
        throw DomainError("frequency must be positive");
    const double omega = kTwoPi<double> * frequency;
    return std::visit(
        overloaded{
            [](const OpenCircuit &) -> Impedance {
                throw ContractViolation("open circuit has no finite impedance; use reflection_coefficient directly");
            },
            [](const ShortCircuit &) -> Impedance {
                throw ContractViolation("short circuit is handled directly by reflection_coefficient");
            },
            [](const Potentiometer &p) -> Impedance { return {p.resistance, 0.0}; },
            [omega](const CapacitiveStage &c) -> Impedance {
                if (!c.resistance || !c.capacitance)
                    throw ContractViolation("capacitive stage has no component values");
                if (!(*c.capacitance > 0))
                    throw DomainError("capacitance must be positive");
                return Impedance(*c.resistance, 0.0) + 1.0 / Impedance(0.0, omega * *c.capacitance);
            },
            [omega](const InductiveStage &l) -> Impedance {
                if (!l.resistance || !l.inductance)
                    throw ContractViolation("inductive stage has no component values");
                return {*l.resistance, omega * *l.inductance};
            },
            [](const ExplicitLoad &e) -> Impedance { return e.impedance; },
        },
        stage.kind);
}

std::vector<CatalogEntry> catalog_gammas(const HardwareCatalog &catalog, double frequency)
{
    catalog.validate();
    if (!(frequency > 0))
        throw DomainError("frequency must be positive");

    std::vector<CatalogEntry> out;
    out.reserve(2 + catalog.potentiometer_steps + 6);
    out.push_back({LoadState::open(), {1.0, 0.0}});
    out.push_back({LoadState::short_circuit(), {-1.0, 0.0}});
    for (int step = 0; step < catalog.potentiometer_steps; ++step) {
        const double r = catalog.potentiometer_resistance(step);
        out.push_back({LoadState::potentiometer(r), reflection_coefficient({r, 0.0}, catalog.z0)});
    }
    for (int i = 0; i < 3; ++i)
        out.push_back({LoadState::capacitive(i + 1), catalog.cap_stage_gammas[i]});
    for (int i = 0; i < 3; ++i)
        out.push_back({LoadState::inductive(i + 1), catalog.ind_stage_gammas[i]});
    return out;
}

Phasor<double> state_gamma(const LoadState &state, const HardwareCatalog &catalog, double frequency)
{
    catalog.validate();
    auto stage = [](const std::vector<Phasor<double>> &gammas, int index) {
        if (index < 1 || index > static_cast<int>(gammas.size()))
            throw DomainError("reactive stage index out of range");
        return gammas[static_cast<std::size_t>(index - 1)];
    };
    return std::visit(
        overloaded{
            [](const OpenCircuit &) { return Phasor<double>(1.0, 0.0); },
            [](const ShortCircuit &) { return Phasor<double>(-1.0, 0.0); },
            [&](const CapacitiveStage &c) { return stage(catalog.cap_stage_gammas, c.index); },
            [&](const InductiveStage &l) { return stage(catalog.ind_stage_gammas, l.index); },
            [&](const auto &) { return reflection_coefficient(stage_impedance(state, frequency), catalog.z0); },
        },
        state.kind);
}

CatalogQuantizer::CatalogQuantizer(const HardwareCatalog &catalog, double frequency)
    : entries_(catalog_gammas(catalog, frequency))
{
}

const CatalogEntry &CatalogQuantizer::nearest(Phasor<double> target) const
{
    constexpr double tie = 1e-12;
    const CatalogEntry *best = &entries_.front();
    double best_dist = std::abs(target - best->gamma);
    for (const auto &entry : entries_) {
        const double d = std::abs(target - entry.gamma);
        if (d < best_dist - tie) {
            best = &entry;
            best_dist = d;
            continue;
        }
        if (d > best_dist + tie)
            continue;
        // Tie: lower magnitude first, then resistive over reactive.
        const double m = std::abs(entry.gamma);
        const double bm = std::abs(best->gamma);
        if (m < bm - tie || (m <= bm + tie && entry.state.is_resistive() && !best->state.is_resistive())) {
            best = &entry;
            best_dist = std::min(best_dist, d);
        }
    }
    return *best;
}

CatalogEntry quantize_gamma(Phasor<double> target, const HardwareCatalog &catalog, double frequency)
{
    return CatalogQuantizer(catalog, frequency).nearest(target);
}

} // namespace uaris
