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

#include <random>

#include "uaris/core.hpp"

using namespace uaris;

TEST_CASE("normalize_angle maps onto (-pi, pi]")
{
    const double pi = kPi<double>;
    CHECK(normalize_angle(pi) == doctest::Approx(pi));
    CHECK(normalize_angle(-pi) == doctest::Approx(pi));
    CHECK(normalize_angle(3 * pi) == doctest::Approx(pi));
    CHECK(normalize_angle(-3 * pi / 2) == doctest::Approx(pi / 2));
    CHECK(normalize_angle(0.25) == 0.25);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 1000; ++i) {
        const double a = normalize_angle(u(rng));
        CHECK(a > -pi);
        CHECK(a <= pi);
    }
}

TEST_CASE("circular distance is symmetric and bounded by pi")
{
    CHECK(circular_distance(kPi<double> - 0.1, -kPi<double> + 0.1) == doctest::Approx(0.2));
    CHECK(circular_distance(0.0, kPi<double>) == doctest::Approx(kPi<double>));
    CHECK(Angle<double>::from_degrees(350).distance_to(Angle<double>::from_degrees(10)) ==
          doctest::Approx(deg2rad(20.0)));
    CHECK(Angle<double>{deg2rad(540.0)}.normalized().degrees() == doctest::Approx(180));
}

TEST_CASE("phase of a phasor lies in (-pi, pi]")
{
    CHECK(phase(Phasor<double>(-1.0, -0.0)) == doctest::Approx(kPi<double>));
    CHECK(phase(Phasor<double>(0.0, -2.0)) == doctest::Approx(-kPi<double> / 2));
}

TEST_CASE("phasor products multiply magnitudes and add phases")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> mag(0.01, 10), ang(-kPi<double>, kPi<double>);
    for (int i = 0; i < 10000; ++i) {
        const Phasor<double> p = std::polar(mag(rng), ang(rng));
        const Phasor<double> q = std::polar(mag(rng), ang(rng));
        CHECK(std::abs(p * q) == doctest::Approx(std::abs(p) * std::abs(q)).epsilon(1e-12));
        CHECK(circular_distance(phase(p * q), phase(p) + phase(q)) < 1e-12);
    }
}

TEST_CASE("decibel ratio of amplitudes")
{
    CHECK(db_from_amplitude_ratio(1.28, 1.0) == doctest::Approx(2.144).epsilon(1e-3));
    CHECK(db_from_amplitude_ratio(2.83, 1.75) == doctest::Approx(4.175).epsilon(1e-3));
    CHECK(db_from_amplitude_ratio(3.3, 3.3) == 0.0);
    CHECK_THROWS_AS(db_from_amplitude_ratio(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(db_from_amplitude_ratio(1.0, -2.0), DomainError);
    CHECK(amplitude_ratio_from_db(db_from_amplitude_ratio(1.4, 1.0)) == doctest::Approx(1.4));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng), b = u(rng);
        CHECK(db_from_amplitude_ratio(a, b) == doctest::Approx(-db_from_amplitude_ratio(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("plane wave normalizes its direction and derives wavelength")
{
    const PlaneWave<double> w(28000, Vector3<double>(0, 3, 4));
    CHECK(std::abs(w.direction().norm() - 1) < 1e-12);
    CHECK(w.direction().y() == doctest::Approx(0.6));
    CHECK(w.wavelength() == doctest::Approx(1500.0 / 28000));
    CHECK(w.wavenumber() == doctest::Approx(2 * kPi<double> * 28000 / 1500));

    const auto from = PlaneWave<double>::arriving_from(Vector3<double>(0, 0, 1), 1000);
    CHECK(from.direction().z() == doctest::Approx(-1));

    CHECK_THROWS_AS(PlaneWave<double>(0, Vector3<double>::UnitX()), DomainError);
    CHECK_THROWS_AS(PlaneWave<double>(1, Vector3<double>::UnitX(), 1, -1500), DomainError);
    CHECK_THROWS_AS(PlaneWave<double>(1, Vector3<double>::Zero()), DomainError);
}

TEST_CASE("azimuth and elevation give unit directions")
{
    const auto d = direction_from_az_el(90.0, 0.0);
    CHECK(d.y() == doctest::Approx(1));
    CHECK(std::abs(d.x()) < 1e-15);
    const auto up = direction_from_az_el(12.0, 90.0);
    CHECK(up.z() == doctest::Approx(1));
    CHECK(direction_from_az_el(33.0, -21.0).norm() == doctest::Approx(1));
}

TEST_CASE("core types work with float scalars")
{
    const PlaneWave<float> w(1000.0f, Vector3<float>(1, 0, 0));
    CHECK(w.wavelength() == doctest::Approx(1.5f));
    CHECK(normalize_angle(7.0f) == doctest::Approx(7.0f - 2 * kPi<float>));
}
