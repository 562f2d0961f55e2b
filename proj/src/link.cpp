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

#include "uaris/link.hpp"

#include <cmath>
#include <string>

#include "uaris/errors.hpp"

namespace uaris {

void LinkBudgetParams::validate() const
{
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw DomainError("alpha must be positive");
    if (!(beta >= 0) || !std::isfinite(beta))
        throw DomainError("beta must be non-negative");
    if (!(r_x > 0) || !std::isfinite(r_x))
        throw DomainError("r_x must be positive");
    if (!std::isfinite(delta_snr))
        throw DomainError("delta_snr must be finite");
}

double link_budget_lhs(const LinkBudgetParams &p, double r_y)
{
    if (!(r_y > 0))
        throw DomainError("r_y must be positive");
    return 10.0 * p.alpha * std::log10(r_y / p.r_x) + p.beta * (r_y - p.r_x);
}

double range_extension(const LinkBudgetParams &params)
{
    params.validate();
    if (params.delta_snr < 0)
        throw DomainError("delta_snr must be non-negative; range shrinkage is not modeled");
    if (params.delta_snr == 0)
        return params.r_x;

    double lo = params.r_x;
    double hi = 2 * params.r_x;
    while (link_budget_lhs(params, hi) < params.delta_snr) {
        lo = hi;
        hi *= 2;
        if (!std::isfinite(hi))
            throw DomainError("range equation has no finite root");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f = link_budget_lhs(params, mid) - params.delta_snr;
        if (std::abs(f) < 1e-12 || hi - lo <= 1e-15 * hi)
            return mid;
        (f < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rate_multiplier(double delta_snr_db) { return std::pow(10.0, delta_snr_db / 10.0); }

namespace {

void require_range(double v, double lo, double hi, const char *name)
{
    if (!(v >= lo && v <= hi))
        throw DomainError(std::string(name) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace

double absorption_fg(double frequency_hz, double t, double s, double ph, double z)
{
    require_range(frequency_hz, 100.0, 1e6, "frequency_hz");
    require_range(t, -2.0, 40.0, "temperature_c");
    require_range(s, 0.0, 50.0, "salinity_ppt");
    require_range(ph, 6.0, 9.5, "ph");
    require_range(z, 0.0, 11000.0, "depth_m");

    const double f = frequency_hz / 1000.0; // kHz
    const double f2 = f * f;
    const double c = 1412.0 + 3.21 * t + 1.19 * s + 0.0167 * z;
    const double theta = t + 273.0;

    // Boric acid.
    const double a1 = 8.86 / c * std::pow(10.0, 0.78 * ph - 5.0);
    const double f1 = 2.8 * std::sqrt(s / 35.0) * std::pow(10.0, 4.0 - 1245.0 / theta);
    const double boric = f1 > 0 ? a1 * f1 * f2 / (f1 * f1 + f2) : 0.0;

    // Magnesium sulfate.
    const double a2 = 21.44 * s / c * (1.0 + 0.025 * t);
    const double p2 = 1.0 - 1.37e-4 * z + 6.2e-9 * z * z;
    const double fm = 8.17 * std::pow(10.0, 8.0 - 1990.0 / theta) / (1.0 + 0.0018 * (s - 35.0));
    const double mgso4 = a2 * p2 * fm * f2 / (fm * fm + f2);

    // Pure water.
    const double a3 = t <= 20.0 ? 4.937e-4 - 2.59e-5 * t + 9.11e-7 * t * t - 1.50e-8 * t * t * t
                                : 3.964e-4 - 1.146e-5 * t + 1.45e-7 * t * t - 6.5e-10 * t * t * t;
    const double p3 = 1.0 - 3.83e-5 * z + 4.9e-10 * z * z;
    const double water = a3 * p3 * f2;

    return boric + mgso4 + water;
}

} // namespace uaris
