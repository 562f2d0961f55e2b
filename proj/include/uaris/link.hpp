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

namespace uaris {

/// Inputs of the range equation 10 alpha log10(Ry / Rx) + beta (Ry - Rx) = delta_snr.
struct LinkBudgetParams
{
    double alpha{2.0};     // spreading: 1 cylindrical, 2 spherical
    double beta{6.1};      // absorption, dB/km
    double r_x{0.5};       // baseline range, km
    double delta_snr{0.0}; // SNR gain, dB

    void validate() const;

    friend bool operator==(const LinkBudgetParams &, const LinkBudgetParams &) = default;
};

/// Left-hand side of the range equation for a candidate range r_y (km).
double link_budget_lhs(const LinkBudgetParams &params, double r_y);

/// The range r_y >= r_x at which the SNR gain is used up by extra spreading and absorption.
double range_extension(const LinkBudgetParams &params);

/// Data-rate gain factor at fixed energy per bit, 10^(delta_snr / 10).
double rate_multiplier(double delta_snr_db);

/// Seawater environment for the absorption model.
struct SeawaterConditions
{
    double temperature_c{10.0};
    double salinity_ppt{35.0};
    double ph{8.0};
    double depth_m{0.0};

    friend bool operator==(const SeawaterConditions &, const SeawaterConditions &) = default;
};

/// Francois-Garrison absorption in dB/km: boric-acid and magnesium-sulfate relaxation plus
/// pure-water viscosity.
double absorption_fg(double frequency_hz, double temperature_c, double salinity_ppt, double ph, double depth_m);

inline double absorption_fg(double frequency_hz, const SeawaterConditions &env)
{
    return absorption_fg(frequency_hz, env.temperature_c, env.salinity_ppt, env.ph, env.depth_m);
}

} // namespace uaris
