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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "uaris/errors.hpp"

namespace uaris {

template <typename Scalar>
using Phasor = std::complex<Scalar>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using PhasorVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Wraps an angle in radians onto (-pi, pi].
template <typename Scalar>
Scalar normalize_angle(Scalar radians)
{
    Scalar r = std::remainder(radians, kTwoPi<Scalar>);
    if (r <= -kPi<Scalar>)
        r += kTwoPi<Scalar>;
    return r;
}

/// Shortest angular separation, always in [0, pi].
template <typename Scalar>
Scalar circular_distance(Scalar a, Scalar b)
{
    return std::abs(normalize_angle(a - b));
}

template <typename Scalar>
constexpr Scalar deg2rad(Scalar deg) { return deg * kPi<Scalar> / Scalar(180); }

template <typename Scalar>
constexpr Scalar rad2deg(Scalar rad) { return rad * Scalar(180) / kPi<Scalar>; }

/// Phase angle of a phasor on (-pi, pi]; std::arg returns -pi for negative reals with a -0 imaginary part.
template <typename Scalar>
Scalar phase(const Phasor<Scalar> &p)
{
    return normalize_angle(std::arg(p));
}

/// Unit phasor e^{j theta}.
template <typename Scalar>
Phasor<Scalar> unit_phasor(Scalar theta)
{
    return std::polar(Scalar(1), theta);
}

/// An angle in radians. Stored as given; `normalized()` wraps it onto (-pi, pi].
template <typename Scalar = double>
struct Angle
{
    Scalar radians{0};

    static Angle from_degrees(Scalar deg) { return {deg2rad(deg)}; }
    Scalar degrees() const { return rad2deg(radians); }
    Angle normalized() const { return {normalize_angle(radians)}; }
    Scalar distance_to(const Angle &other) const { return circular_distance(radians, other.radians); }
};

/// Unit vector for an azimuth (from +x toward +y) and elevation (from the x-y plane toward +z), in degrees.
template <typename Scalar>
Vector3<Scalar> direction_from_az_el(Scalar azimuth_deg, Scalar elevation_deg)
{
    const Scalar az = deg2rad(azimuth_deg);
    const Scalar el = deg2rad(elevation_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

/// Monochromatic plane wave travelling along `direction`.
template <typename Scalar = double>
class PlaneWave
{
public:
    PlaneWave(Scalar frequency, const Vector3<Scalar> &direction, Scalar amplitude = Scalar(1),
              Scalar sound_speed = Scalar(1500))
        : frequency_(frequency), amplitude_(amplitude), direction_(direction), sound_speed_(sound_speed)
    {
        if (!(frequency > 0))
            throw DomainError("plane wave frequency must be positive");
        if (!(sound_speed > 0))
            throw DomainError("sound speed must be positive");
        const Scalar n = direction.norm();
        if (!(n > 0) || !std::isfinite(n))
            throw DomainError("propagation direction must be a finite non-zero vector");
        direction_ /= n;
    }

    /// A wave arriving from `toward_source`, i.e. travelling along its negation.
    static PlaneWave arriving_from(const Vector3<Scalar> &toward_source, Scalar frequency,
                                   Scalar amplitude = Scalar(1), Scalar sound_speed = Scalar(1500))
    {
        return PlaneWave(frequency, -toward_source, amplitude, sound_speed);
    }

    Scalar frequency() const { return frequency_; }
    Scalar amplitude() const { return amplitude_; }
    Scalar sound_speed() const { return sound_speed_; }
    const Vector3<Scalar> &direction() const { return direction_; }
    Scalar wavelength() const { return sound_speed_ / frequency_; }
    Scalar wavenumber() const { return kTwoPi<Scalar> / wavelength(); }

private:
    Scalar frequency_;
    Scalar amplitude_;
    Vector3<Scalar> direction_;
    Scalar sound_speed_;
};

/// 20 log10(v_new / v_base): the gain of one pressure or voltage amplitude over another.
inline double db_from_amplitude_ratio(double v_new, double v_base)
{
    if (!(v_new > 0) || !(v_base > 0))
        throw DomainError("amplitudes must be positive to form a decibel ratio");
    return 20.0 * std::log10(v_new / v_base);
}

inline double amplitude_ratio_from_db(double db) { return std::pow(10.0, db / 20.0); }

} // namespace uaris
