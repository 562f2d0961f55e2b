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

#include <type_traits>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uaris/array.hpp"
#include "uaris/synthesis.hpp"

namespace uaris {

/// A plane through the origin swept by the angle theta: u(theta) = cos(theta) e1 + sin(theta) e2.
template <typename Scalar = double>
struct SweepPlane
{
    std::string name;
    Vector3<Scalar> e1;
    Vector3<Scalar> e2;

    /// "xy" (azimuth from +x toward +y), "yz" (from +y toward +z) or "xz" (from +x toward +z).
    static SweepPlane named(const std::string &plane)
    {
        if (plane == "xy")
            return {plane, Vector3<Scalar>::UnitX(), Vector3<Scalar>::UnitY()};
        if (plane == "yz")
            return {plane, Vector3<Scalar>::UnitY(), Vector3<Scalar>::UnitZ()};
        if (plane == "xz")
            return {plane, Vector3<Scalar>::UnitX(), Vector3<Scalar>::UnitZ()};
        throw InputError("sweep.plane", "unknown plane '" + plane + "' (expected xy, yz or xz)");
    }

    Vector3<Scalar> direction(Scalar degrees) const
    {
        const Scalar t = deg2rad(degrees);
        return std::cos(t) * e1 + std::sin(t) * e2;
    }
};

/// start, start + step, ... up to stop inclusive. A sweep spanning a full turn drops the
/// sample that would duplicate `start`.
template <typename Scalar>
std::vector<Scalar> angle_grid(Scalar start_deg, Scalar stop_deg, Scalar step_deg)
{
    if (!std::isfinite(start_deg) || !std::isfinite(stop_deg))
        throw DomainError("sweep limits must be finite");
    if (!(step_deg > 0))
        throw DomainError("sweep step must be positive");
    if (!(stop_deg > start_deg))
        throw DomainError("sweep stop must exceed start");
    const Scalar eps = step_deg * Scalar(1e-9);
    const auto count = static_cast<long long>(std::floor((stop_deg - start_deg) / step_deg + Scalar(1e-9))) + 1;
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        const Scalar a = start_deg + static_cast<Scalar>(i) * step_deg;
        if (a - start_deg >= Scalar(360) - eps)
            break;
        out.push_back(a);
    }
    if (out.size() < 3)
        throw DomainError("sweep needs at least three samples");
    return out;
}

template <typename Scalar = double>
struct BeamPattern
{
    std::vector<Scalar> angles_deg;
    PhasorVector<Scalar> response;
    Scalar normalization{0}; // max |response|

    Eigen::Index size() const { return response.size(); }
    Scalar magnitude(Eigen::Index i) const { return std::abs(response(i)); }
    Scalar normalized(Eigen::Index i) const { return normalization > 0 ? magnitude(i) / normalization : Scalar(0); }

    /// True when the samples wrap around a full turn, so the last sample neighbours the first.
    bool cyclic() const
    {
        if (angles_deg.size() < 3)
            return false;
        const Scalar step = angles_deg[1] - angles_deg[0];
        return angles_deg.back() - angles_deg.front() + step >= Scalar(360) - Scalar(1e-6) * step;
    }
};

/// Far-field response AF(u) = sum_i gamma_i D(u) e^{j k p_i . (u - d)} at each sweep angle,
/// where D is the element directivity (1 for isotropic scatterers).
template <typename Scalar>
BeamPattern<Scalar> array_factor(const ArrayGeometry<Scalar> &geometry, const GammaAssignment<Scalar> &assignment,
                                 const PlaneWave<Scalar> &incident, const SweepPlane<Scalar> &plane,
                                 const std::vector<Scalar> &angles_deg)
{
    if (assignment.ids != geometry.ids())
        throw ContractViolation("assignment does not cover the array's elements in order");
    if (angles_deg.empty())
        throw ContractViolation("angle grid is empty");
    for (std::size_t i = 1; i < angles_deg.size(); ++i)
        if (!(angles_deg[i] > angles_deg[i - 1]))
            throw ContractViolation("sweep angles must be strictly increasing");

    const Scalar k = incident.wavenumber();
    const Scalar bound = assignment.gammas.cwiseAbs().sum();
    BeamPattern<Scalar> out{angles_deg, PhasorVector<Scalar>(static_cast<Eigen::Index>(angles_deg.size())), Scalar(0)};
    for (std::size_t a = 0; a < angles_deg.size(); ++a) {
        const Vector3<Scalar> u = plane.direction(angles_deg[a]);
        const RealVector<Scalar> path = k * (geometry.positions().transpose() * (u - incident.direction()));
        Phasor<Scalar> sum{0, 0};
        for (Eigen::Index i = 0; i < geometry.size(); ++i)
            sum += assignment.gammas(i) * unit_phasor(path(i));
        sum *= geometry.element_directivity(u, k);
        if (std::abs(sum) > bound * (Scalar(1) + Scalar(1e-12)) + Scalar(1e-12))
            throw ContractViolation("array factor exceeds the sum of coefficient magnitudes");
        out.response(static_cast<Eigen::Index>(a)) = sum;
        out.normalization = std::max(out.normalization, std::abs(sum));
    }
    return out;
}

template <typename Scalar = double>
struct Lobe
{
    Scalar angle_deg;
    Scalar level; // normalized to the main lobe

    friend bool operator==(const Lobe &, const Lobe &) = default;
};

template <typename Scalar = double>
struct BeamMetrics
{
    Scalar main_lobe_deg{0};
    Scalar main_lobe_mag{0};
    std::vector<Lobe<Scalar>> side_lobes; // descending level
    Scalar hpbw_deg{0};
    bool hpbw_truncated{false}; // a half-power crossing fell outside a non-cyclic sweep

    Scalar max_side_lobe() const { return side_lobes.empty() ? Scalar(0) : side_lobes.front().level; }

    friend bool operator==(const BeamMetrics &, const BeamMetrics &) = default;
};

/// Main lobe (global maximum, first on ties), every other local maximum whose normalized level
/// exceeds `floor`, and the half-power beamwidth found by linear interpolation at 1/sqrt(2).
template <typename Scalar>
BeamMetrics<Scalar> beam_metrics(const BeamPattern<Scalar> &pattern, Scalar floor = Scalar(0.05))
{
    const auto n = static_cast<long long>(pattern.size());
    if (n < 3 || static_cast<long long>(pattern.angles_deg.size()) != n)
        throw ContractViolation("beam pattern needs at least three samples");
    const RealVector<Scalar> mag = pattern.response.cwiseAbs();
    const Scalar peak = mag.maxCoeff();
    if (!(peak > 0) || peak - mag.minCoeff() <= peak * Scalar(1e-12))
        throw NoLobes("beam pattern is flat");

    const bool cyclic = pattern.cyclic();
    const Scalar period = Scalar(360);
    long long main = 0;
    for (long long i = 1; i < n; ++i)
        if (mag(i) > mag(main))
            main = i;

    auto at = [&](long long i) { return mag(((i % n) + n) % n); };
    auto angle = [&](long long i) {
        const long long w = ((i % n) + n) % n;
        const long long turns = (i - w) / n;
        return pattern.angles_deg[static_cast<std::size_t>(w)] + static_cast<Scalar>(turns) * period;
    };

    BeamMetrics<Scalar> m;
    m.main_lobe_deg = pattern.angles_deg[static_cast<std::size_t>(main)];
    m.main_lobe_mag = peak;

    for (long long i = 0; i < n; ++i) {
        if (i == main)
            continue;
        if (!cyclic && (i == 0 || i == n - 1))
            continue;
        // Strict rise on the left, non-strict on the right, so a plateau reports its first sample.
        if (at(i) > at(i - 1) && at(i) >= at(i + 1) && at(i) / peak > floor)
            m.side_lobes.push_back({pattern.angles_deg[static_cast<std::size_t>(i)], at(i) / peak});
    }
    std::stable_sort(m.side_lobes.begin(), m.side_lobes.end(),
                     [](const Lobe<Scalar> &a, const Lobe<Scalar> &b) { return a.level > b.level; });

    const Scalar half = peak / std::sqrt(Scalar(2));
    auto crossing = [&](int dir) {
        long long i = main;
        for (long long steps = 0; steps < n; ++steps) {
            const long long next = i + dir;
            if (!cyclic && (next < 0 || next >= n)) {
                m.hpbw_truncated = true;
                return angle(i);
            }
            if (at(next) < half) {
                const Scalar t = (at(i) - half) / (at(i) - at(next));
                return angle(i) + t * (angle(next) - angle(i));
            }
            i = next;
        }
        m.hpbw_truncated = true;
        return angle(i);
    };
    const Scalar left = crossing(-1);
    const Scalar right = crossing(+1);
    m.hpbw_deg = right - left;
    return m;
}

template <typename Scalar = double>
struct SchemeResult
{
    std::string name;
    GammaAssignment<Scalar> assignment;
    BeamPattern<Scalar> pattern;
    BeamMetrics<Scalar> metrics;
};

template <typename Scalar = double>
struct SchemeDelta
{
    std::string a;
    std::string b;
    Scalar main_lobe_deg; // a - b
    Scalar max_side_lobe; // a - b, normalized levels
    Scalar hpbw_deg;      // a - b
};

template <typename Scalar = double>
struct SchemeComparison
{
    std::vector<SchemeResult<Scalar>> results;
    std::vector<SchemeDelta<Scalar>> deltas; // every unordered pair, in result order
};

template <typename Scalar>
SchemeDelta<Scalar> scheme_delta(const SchemeResult<Scalar> &a, const SchemeResult<Scalar> &b)
{
    return {a.name, b.name, a.metrics.main_lobe_deg - b.metrics.main_lobe_deg,
            a.metrics.max_side_lobe() - b.metrics.max_side_lobe(), a.metrics.hpbw_deg - b.metrics.hpbw_deg};
}

/// Configures each scheme on the same scenario and sweep. With a catalog, a synthetic scheme is
/// followed by a "synthetic-quantized" entry evaluating the realized hardware states.
template <typename Scalar>
SchemeComparison<Scalar> compare_schemes(const ArrayGeometry<Scalar> &geometry, const PlaneWave<Scalar> &incident,
                                         const std::type_identity_t<Vector3<Scalar>> &target, const std::vector<Scheme> &schemes,
                                         const SweepPlane<Scalar> &plane, const std::vector<Scalar> &angles_deg,
                                         const std::optional<HardwareCatalog> &catalog = std::nullopt,
                                         const SynthesisOptions<Scalar> &options = {}, Scalar floor = Scalar(0.05))
{
    if (schemes.size() < 2)
        throw ContractViolation("compare_schemes needs at least two schemes");
    SchemeComparison<Scalar> out;
    auto add = [&](std::string name, GammaAssignment<Scalar> assignment) {
        BeamPattern<Scalar> pattern = array_factor(geometry, assignment, incident, plane, angles_deg);
        BeamMetrics<Scalar> metrics = beam_metrics(pattern, floor);
        out.results.push_back({std::move(name), std::move(assignment), std::move(pattern), std::move(metrics)});
    };
    for (const Scheme s : schemes) {
        switch (s) {
        case Scheme::Synthetic: {
            GammaAssignment<Scalar> a = configure_synthetic(geometry, incident, target, catalog, options);
            const bool quantized = a.quantized_gammas.has_value();
            add("synthetic", a);
            if (quantized)
                add("synthetic-quantized", a.realized());
            break;
        }
        case Scheme::OneBit:
        case Scheme::TwoBit:
            add(to_string(s), configure_coded(geometry, incident, target, s));
            break;
        case Scheme::Explicit:
            throw ContractViolation("explicit assignments cannot be compared by scheme name");
        }
    }
    for (std::size_t i = 0; i < out.results.size(); ++i)
        for (std::size_t j = i + 1; j < out.results.size(); ++j)
            out.deltas.push_back(scheme_delta(out.results[i], out.results[j]));
    return out;
}

} // namespace uaris
