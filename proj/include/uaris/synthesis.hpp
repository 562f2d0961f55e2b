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
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uaris/array.hpp"
#include "uaris/load_hardware.hpp"

namespace uaris {

template <typename Scalar = double>
struct PairSolution
{
    Scalar a1{0}; // coefficient of the first element, applied in phase (negative means antiphase)
    Scalar a2{0}; // coefficient of the second element, applied in quadrature
    Scalar scale_applied{1};

    /// a1 e^{j phi1} + a2 e^{j(phi2 + pi/2)}
    Phasor<Scalar> combined(Scalar phi1, Scalar phi2) const
    {
        return a1 * unit_phasor(phi1) + a2 * unit_phasor(phi2 + kPi<Scalar> / 2);
    }
};

/// Finds real a1, a2 with a1 e^{j phi1} + a2 e^{j(phi2 + pi/2)} = amplitude e^{j phi_r}.
///
/// Real and imaginary parts give the system
///   [cos phi1  -sin phi2] [a1]   [amplitude cos phi_r]
///   [sin phi1   cos phi2] [a2] = [amplitude sin phi_r]
/// whose determinant is cos(phi1 - phi2).
template <typename Scalar>
PairSolution<Scalar> solve_pair(Angle<Scalar> phi1, Angle<Scalar> phi2, Angle<Scalar> phi_r, Scalar amplitude)
{
    if (!(amplitude >= 0))
        throw DomainError("pair target amplitude must be non-negative");
    using std::cos, std::sin;
    Eigen::Matrix<Scalar, 2, 2> m;
    m << cos(phi1.radians), -sin(phi2.radians), sin(phi1.radians), cos(phi2.radians);
    const Scalar det = m.determinant();
    if (std::abs(det) < Scalar(1e-6))
        throw SingularPairing("pair basis phasors are colinear (|cos(phi1 - phi2)| < 1e-6)");
    const Eigen::Matrix<Scalar, 2, 1> rhs(amplitude * cos(phi_r.radians), amplitude * sin(phi_r.radians));

    Eigen::Matrix<Scalar, 2, 2> m1 = m, m2 = m;
    m1.col(0) = rhs;
    m2.col(1) = rhs;
    return {m1.determinant() / det, m2.determinant() / det, Scalar(1)};
}

/// Shrinks (a1, a2) uniformly so that neither exceeds gamma_max.
template <typename Scalar>
PairSolution<Scalar> scale_to_passive(Scalar a1, Scalar a2, Scalar gamma_max)
{
    if (!(gamma_max > 0 && gamma_max <= 1))
        throw DomainError("gamma_max must lie in (0, 1]");
    const Scalar worst = std::max(std::abs(a1), std::abs(a2));
    if (worst <= gamma_max)
        return {a1, a2, Scalar(1)};
    const Scalar s = gamma_max / worst;
    return {a1 * s, a2 * s, s};
}

enum class Scheme { Synthetic, OneBit, TwoBit, Explicit };

inline std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::Synthetic: return "synthetic";
    case Scheme::OneBit: return "1bit";
    case Scheme::TwoBit: return "2bit";
    case Scheme::Explicit: return "explicit";
    }
    return "?";
}

inline Scheme scheme_from_string(const std::string &s)
{
    if (s == "synthetic") return Scheme::Synthetic;
    if (s == "1bit") return Scheme::OneBit;
    if (s == "2bit") return Scheme::TwoBit;
    if (s == "explicit") return Scheme::Explicit;
    throw InputError("scheme", "unknown scheme '" + s + "' (expected synthetic, 1bit, 2bit or explicit)");
}

/// Per-element reflection coefficients, in the order of `ids`.
template <typename Scalar = double>
struct GammaAssignment
{
    std::vector<int> ids;
    PhasorVector<Scalar> gammas;
    Scheme scheme{Scheme::Explicit};

    /// Hardware states and the coefficients they realize, when a catalog was applied.
    std::optional<std::vector<LoadState>> quantized_states{};
    std::optional<PhasorVector<Scalar>> quantized_gammas{};

    /// Synthetic scheme bookkeeping.
    std::optional<Pairing> pairing{};
    Scalar passivity_scale{1};

    GammaAssignment() = default;
    GammaAssignment(std::vector<int> element_ids, PhasorVector<Scalar> values, Scheme s)
        : ids(std::move(element_ids)), gammas(std::move(values)), scheme(s)
    {
        check();
    }

    void check() const
    {
        if (static_cast<Eigen::Index>(ids.size()) != gammas.size())
            throw ContractViolation("assignment ids and gammas differ in length");
        for (Eigen::Index i = 0; i < gammas.size(); ++i)
            if (!(std::abs(gammas(i)) <= Scalar(1) + Scalar(1e-12)))
                throw DomainError("reflection coefficient of element " + std::to_string(ids[i]) +
                                  " exceeds unit magnitude");
    }

    /// The assignment the hardware actually realizes (the quantized one when present).
    GammaAssignment realized() const
    {
        if (!quantized_gammas)
            return *this;
        GammaAssignment q = *this;
        q.gammas = *quantized_gammas;
        return q;
    }

    Phasor<Scalar> gamma_of(int id) const
    {
        const auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end())
            throw ContractViolation("assignment has no element " + std::to_string(id));
        return gammas(it - ids.begin());
    }
};

template <typename Scalar>
void apply_catalog(GammaAssignment<Scalar> &assignment, const HardwareCatalog &catalog, double frequency)
{
    const CatalogQuantizer quantizer(catalog, frequency);
    std::vector<LoadState> states;
    PhasorVector<Scalar> realized(assignment.gammas.size());
    for (Eigen::Index i = 0; i < assignment.gammas.size(); ++i) {
        const auto g = assignment.gammas(i);
        const CatalogEntry &e = quantizer.nearest({static_cast<double>(g.real()), static_cast<double>(g.imag())});
        states.push_back(e.state);
        realized(i) = {static_cast<Scalar>(e.gamma.real()), static_cast<Scalar>(e.gamma.imag())};
    }
    assignment.quantized_states = std::move(states);
    assignment.quantized_gammas = std::move(realized);
}

template <typename Scalar = double>
struct SynthesisOptions
{
    Scalar gamma_max{0.9};
    Scalar target_amplitude{1};
    std::optional<Scalar> pairing_tolerance{}; // meters; defaults to wavelength / 64
    std::optional<std::vector<Scalar>> pair_weights{}; // amplitude taper, one per pair in pairing order
};

/// Phase each element must apply, k p . (d - u), so that its reflection toward `target_dir`
/// adds coherently with an element at the origin.
template <typename Scalar>
RealVector<Scalar> steering_phases(const ArrayGeometry<Scalar> &geometry, const PlaneWave<Scalar> &incident,
                                   const std::type_identity_t<Vector3<Scalar>> &target_dir)
{
    const Vector3<Scalar> delta = incident.direction() - target_dir;
    return incident.wavenumber() * (geometry.positions().transpose() * delta);
}

template <typename Scalar>
Vector3<Scalar> checked_unit(const Vector3<Scalar> &v, const char *what)
{
    const Scalar n = v.norm();
    if (!(n > 0) || !std::isfinite(n))
        throw DomainError(std::string(what) + " must be a finite non-zero vector");
    return v / n;
}

/// Synthetic reflection: elements on a common reflected wavefront are paired, and each pair
/// combines an in-phase and a quadrature reflection so that the pair radiates with the phase
/// -k c demanded by its wavefront offset c along the target direction.
template <typename Scalar>
GammaAssignment<Scalar> configure_synthetic(const ArrayGeometry<Scalar> &geometry, const PlaneWave<Scalar> &incident,
                                            const std::type_identity_t<Vector3<Scalar>> &target_direction,
                                            const std::optional<HardwareCatalog> &catalog = std::nullopt,
                                            const SynthesisOptions<Scalar> &options = {})
{
    const Vector3<Scalar> target = checked_unit(target_direction, "target direction");
    if (!(options.gamma_max > 0 && options.gamma_max <= 1))
        throw DomainError("gamma_max must lie in (0, 1]");
    if (!(options.target_amplitude >= 0))
        throw DomainError("target amplitude must be non-negative");

    const Scalar k = incident.wavenumber();
    const Scalar tol = options.pairing_tolerance.value_or(incident.wavelength() / Scalar(64));
    Pairing pairing = pair_reflectors(geometry, target, tol);
    if (pairing.pairs.empty())
        throw NoPairs("no two elements share a reflected wavefront toward the target direction");
    if (options.pair_weights && options.pair_weights->size() != pairing.pairs.size())
        throw ContractViolation("pair_weights must have one entry per pair");

    const RealVector<Scalar> phi = incident_phases(geometry, incident);

    std::vector<PairSolution<Scalar>> solutions;
    solutions.reserve(pairing.pairs.size());
    Scalar worst{0};
    for (std::size_t p = 0; p < pairing.pairs.size(); ++p) {
        const auto [first, second] = pairing.pairs[p];
        const Eigen::Index i = geometry.index_of(first);
        const Eigen::Index j = geometry.index_of(second);
        const Scalar c = geometry.position(i).dot(target);
        const Scalar amplitude = options.target_amplitude * (options.pair_weights ? (*options.pair_weights)[p] : Scalar(1));
        try {
            solutions.push_back(solve_pair(Angle<Scalar>{phi(i)}, Angle<Scalar>{phi(j)},
                                           Angle<Scalar>{normalize_angle(-k * c)}, amplitude));
        } catch (const SingularPairing &e) {
            throw SingularPairing(std::string(e.what()) + " for pair (" + std::to_string(first) + ", " +
                                      std::to_string(second) + ")",
                                  first, second);
        }
        worst = std::max({worst, std::abs(solutions.back().a1), std::abs(solutions.back().a2)});
    }
    const Scalar scale = worst > options.gamma_max ? options.gamma_max / worst : Scalar(1);

    PhasorVector<Scalar> gammas = PhasorVector<Scalar>::Zero(geometry.size());
    for (std::size_t p = 0; p < pairing.pairs.size(); ++p) {
        const auto [first, second] = pairing.pairs[p];
        gammas(geometry.index_of(first)) = Phasor<Scalar>(solutions[p].a1 * scale, 0);
        gammas(geometry.index_of(second)) = Phasor<Scalar>(0, solutions[p].a2 * scale);
    }
    if (!pairing.unpaired.empty()) {
        const RealVector<Scalar> theta = steering_phases(geometry, incident, target);
        for (const int id : pairing.unpaired) {
            const Eigen::Index i = geometry.index_of(id);
            const Scalar ideal = scale * options.target_amplitude * std::cos(theta(i));
            gammas(i) = Phasor<Scalar>(std::clamp(ideal, -options.gamma_max, options.gamma_max), 0);
        }
    }

    GammaAssignment<Scalar> out(geometry.ids(), std::move(gammas), Scheme::Synthetic);
    out.pairing = std::move(pairing);
    out.passivity_scale = scale;
    if (catalog)
        apply_catalog(out, *catalog, static_cast<double>(incident.frequency()));
    return out;
}

/// Conventional coding baseline: every element takes the discrete state whose phase is closest
/// to its ideal steering phase. One bit chooses between open (+1) and short (-1); two bits add
/// the +-0.9j reactive stages.
template <typename Scalar>
GammaAssignment<Scalar> configure_coded(const ArrayGeometry<Scalar> &geometry, const PlaneWave<Scalar> &incident,
                                        const std::type_identity_t<Vector3<Scalar>> &target_direction, Scheme scheme)
{
    if (scheme != Scheme::OneBit && scheme != Scheme::TwoBit)
        throw ContractViolation("configure_coded supports the 1bit and 2bit schemes only");
    const Vector3<Scalar> target = checked_unit(target_direction, "target direction");
    const RealVector<Scalar> theta = steering_phases(geometry, incident, target);

    struct Level
    {
        Phasor<Scalar> gamma;
        LoadState state;
    };
    // Checked in tie-break order.
    const std::vector<Level> levels = scheme == Scheme::OneBit
        ? std::vector<Level>{{{1, 0}, LoadState::open()}, {{-1, 0}, LoadState::short_circuit()}}
        : std::vector<Level>{{{1, 0}, LoadState::open()},
                             {{0, Scalar(0.9)}, LoadState::inductive(3)},
                             {{-1, 0}, LoadState::short_circuit()},
                             {{0, Scalar(-0.9)}, LoadState::capacitive(3)}};

    PhasorVector<Scalar> gammas(geometry.size());
    std::vector<LoadState> states;
    for (Eigen::Index i = 0; i < geometry.size(); ++i) {
        std::size_t best = 0;
        Scalar best_d = circular_distance(theta(i), phase(levels[0].gamma));
        for (std::size_t l = 1; l < levels.size(); ++l) {
            const Scalar d = circular_distance(theta(i), phase(levels[l].gamma));
            if (d < best_d - Scalar(1e-12)) {
                best = l;
                best_d = d;
            }
        }
        gammas(i) = levels[best].gamma;
        states.push_back(levels[best].state);
    }
    GammaAssignment<Scalar> out(geometry.ids(), gammas, scheme);
    out.quantized_states = std::move(states);
    out.quantized_gammas = std::move(gammas);
    return out;
}

} // namespace uaris
