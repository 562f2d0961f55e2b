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

#include "oracles.hpp"
#include "uaris/beam.hpp"
#include "uaris/synthesis.hpp"

using namespace uaris;
using V3 = Vector3<double>;
using A = Angle<double>;

namespace {

constexpr double kF = 28000;
const double kLambda = 1500.0 / kF;

Phasor<double> af_at(const ArrayGeometry<double> &g, const PhasorVector<double> &gammas, const PlaneWave<double> &w,
                     const V3 &u)
{
    Phasor<double> s{0, 0};
    for (Eigen::Index i = 0; i < g.size(); ++i)
        s += gammas(i) * std::polar(1.0, w.wavenumber() * g.position(i).dot(u - w.direction()));
    return s;
}

} // namespace

TEST_CASE("solve_pair worked values")
{
    const auto a = solve_pair(A{0}, A{0}, A{0}, 1.0);
    CHECK(a.a1 == doctest::Approx(1));
    CHECK(std::abs(a.a2) < 1e-15);

    const auto b = solve_pair(A{0}, A{0}, A{kPi<double> / 4}, 1.0);
    CHECK(b.a1 == doctest::Approx(0.70710678));
    CHECK(b.a2 == doctest::Approx(0.70710678));

    const auto c = solve_pair(A{kPi<double> / 6}, A{0}, A{kPi<double> / 3}, 1.0);
    CHECK(c.a1 == doctest::Approx(0.57735027));
    CHECK(c.a2 == doctest::Approx(0.57735027));

    CHECK_THROWS_AS(solve_pair(A{0}, A{kPi<double> / 2}, A{1.0}, 1.0), SingularPairing);
    CHECK_THROWS_AS(solve_pair(A{0}, A{0}, A{0}, -1.0), DomainError);
}

TEST_CASE("solve_pair satisfies the substitution identity")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ang(-kPi<double>, kPi<double>), amp(0, 2);
    int checked = 0;
    while (checked < 10000) {
        const double p1 = ang(rng), p2 = ang(rng), pr = ang(rng), r = amp(rng);
        if (std::abs(std::cos(p1 - p2)) < 1e-3)
            continue;
        const auto s = solve_pair(A{p1}, A{p2}, A{pr}, r);
        const Phasor<double> lhs = s.a1 * std::exp(Phasor<double>(0, p1)) + s.a2 * std::exp(Phasor<double>(0, p2 + kPi<double> / 2));
        CHECK(std::abs(lhs - std::polar(r, pr)) < 1e-9);
        ++checked;
    }
}

TEST_CASE("scale_to_passive")
{
    const auto a = scale_to_passive(1.8, 0.6, 0.9);
    CHECK(a.a1 == doctest::Approx(0.9));
    CHECK(a.a2 == doctest::Approx(0.3));
    CHECK(a.scale_applied == doctest::Approx(0.5));

    const auto b = scale_to_passive(0.5, 0.5, 0.9);
    CHECK(b.a1 == 0.5);
    CHECK(b.a2 == 0.5);
    CHECK(b.scale_applied == 1.0);

    const auto z = scale_to_passive(0.0, 0.0, 0.9);
    CHECK(z.a1 == 0.0);
    CHECK(z.a2 == 0.0);

    CHECK_THROWS_AS(scale_to_passive(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(scale_to_passive(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("scale_to_passive preserves the pair phase")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-5, 5), ang(-kPi<double>, kPi<double>), gm(0.05, 1);
    for (int i = 0; i < 5000; ++i) {
        const double a1 = u(rng), a2 = u(rng), p1 = ang(rng), p2 = ang(rng), g = gm(rng);
        const auto s = scale_to_passive(a1, a2, g);
        CHECK(std::max(std::abs(s.a1), std::abs(s.a2)) <= g + 1e-15);
        const PairSolution<double> raw{a1, a2, 1};
        CHECK(circular_distance(phase(s.combined(p1, p2)), phase(raw.combined(p1, p2))) < 1e-9);
    }
}

TEST_CASE("normal incidence toward the mirror direction")
{
    const auto g = ArrayGeometry<double>::grid(2, 4, 2 * kLambda);
    const auto w = PlaneWave<double>::arriving_from(V3::UnitZ(), kF);
    const auto a = configure_synthetic(g, w, V3::UnitZ());
    REQUIRE(a.pairing);
    CHECK(a.pairing->pairs.size() == 4);
    // Every pair sees phase 0 and must radiate phase 0: all in phase, nothing in quadrature.
    for (const auto &[first, second] : a.pairing->pairs) {
        CHECK(a.gamma_of(first) == Phasor<double>(0.9, 0));
        CHECK(std::abs(a.gamma_of(second)) < 1e-15);
    }
    CHECK(a.passivity_scale == doctest::Approx(0.9));

    const auto coded = configure_coded(g, w, V3::UnitZ(), Scheme::OneBit);
    for (Eigen::Index i = 0; i < g.size(); ++i)
        CHECK(coded.gammas(i) == Phasor<double>(1, 0));
    for (const auto &s : *coded.quantized_states)
        CHECK(s.name() == "open");
    // Here 1-bit coding beats synthesis at the target: 8 elements at 1 against 4 at 0.9.
    CHECK(std::abs(a.gammas.sum()) == doctest::Approx(3.6));
    CHECK(std::abs(coded.gammas.sum()) == doctest::Approx(8.0));
}

TEST_CASE("pairs exactly on one wavefront radiate with identical phase")
{
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> az(0, 360), el(15, 85), tilt(10, 80);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        // Steer within the y-z plane so every pair (same row, different column) shares a wavefront.
        const auto g = ArrayGeometry<double>::grid(4, 2, 2 * kLambda);
        const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(az(rng), el(rng)), kF);
        const V3 target = direction_from_az_el(90.0, tilt(rng));
        GammaAssignment<double> a;
        try {
            a = configure_synthetic(g, w, target);
        } catch (const SingularPairing &) {
            continue;
        }
        ++solved;
        REQUIRE(a.pairing->pairs.size() == 4);
        CHECK(a.pairing->unpaired.empty());
        const Phasor<double> total = af_at(g, a.gammas, w, target);
        double sum_of_magnitudes = 0;
        for (const auto &[first, second] : a.pairing->pairs) {
            PhasorVector<double> only = PhasorVector<double>::Zero(g.size());
            only(g.index_of(first)) = a.gamma_of(first);
            only(g.index_of(second)) = a.gamma_of(second);
            const auto c = af_at(g, only, w, target);
            CHECK(circular_distance(phase(c), phase(total)) < 1e-9);
            sum_of_magnitudes += std::abs(c);
        }
        CHECK(std::abs(total) == doctest::Approx(sum_of_magnitudes).epsilon(1e-9));
    }
    CHECK(solved > 250);
}

TEST_CASE("unpaired elements keep only the in-phase part of their ideal coefficient")
{
    // Three elements on one wavefront: one pair plus a leftover.
    ArrayGeometry<double>::Positions p(3, 3);
    p.col(0) = V3(0, 0, 0);
    p.col(1) = V3(0.3 * kLambda, 0, 0);
    p.col(2) = V3(0.8 * kLambda, 0, 0);
    const ArrayGeometry<double> g({0, 1, 2}, p, V3::UnitZ());
    const PlaneWave<double> w(kF, V3(0.6, 0, -0.8));
    const auto a = configure_synthetic(g, w, V3::UnitZ());
    REQUIRE(a.pairing->unpaired == std::vector<int>{2});
    const double theta = w.wavenumber() * p.col(2).dot(w.direction() - V3::UnitZ());
    const double expected = std::clamp(a.passivity_scale * std::cos(theta), -0.9, 0.9);
    CHECK(a.gamma_of(2).real() == doctest::Approx(expected));
    CHECK(a.gamma_of(2).imag() == 0.0);
}

TEST_CASE("solver failures carry the offending pair")
{
    // Quarter-wavelength apart along the incident direction: the basis phasors coincide.
    ArrayGeometry<double>::Positions p(3, 2);
    p.col(0) = V3::Zero();
    p.col(1) = V3(kLambda / 4, 0, 0);
    const ArrayGeometry<double> g({7, 9}, p, V3::UnitZ());
    const PlaneWave<double> w(kF, V3::UnitX());
    try {
        configure_synthetic(g, w, V3::UnitZ());
        FAIL("expected SingularPairing");
    } catch (const SingularPairing &e) {
        CHECK(e.first_id == 7);
        CHECK(e.second_id == 9);
        CHECK(std::string(e.what()).find("(7, 9)") != std::string::npos);
    }

    const double s = 1 / std::sqrt(2.0);
    CHECK_THROWS_AS(configure_synthetic(g, w, V3(s, 0, s)), NoPairs);
}

TEST_CASE("quantized synthesis records realizable states")
{
    const auto g = ArrayGeometry<double>::grid(4, 2, 2 * kLambda, V3::UnitX(), V3(0, -1, 1));
    const auto w = PlaneWave<double>::arriving_from(V3(0, 0, -1), kF);
    const HardwareCatalog cat;
    const auto a = configure_synthetic(g, w, direction_from_az_el(270.0, -45.0), cat);
    REQUIRE(a.quantized_states);
    REQUIRE(a.quantized_gammas);
    const CatalogQuantizer q(cat, kF);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const auto &e = q.nearest(a.gammas(i));
        CHECK((*a.quantized_states)[i] == e.state);
        CHECK((*a.quantized_gammas)(i) == e.gamma);
    }
    CHECK(a.realized().gammas == *a.quantized_gammas);
}

TEST_CASE("pair weights taper the pair amplitudes")
{
    const auto g = ArrayGeometry<double>::grid(2, 2, 2 * kLambda);
    const auto w = PlaneWave<double>::arriving_from(V3::UnitZ(), kF);
    SynthesisOptions<double> opt;
    opt.pair_weights = std::vector<double>{1.0, 0.5};
    const auto a = configure_synthetic(g, w, V3::UnitZ(), std::nullopt, opt);
    const auto &pairs = a.pairing->pairs;
    CHECK(a.gamma_of(pairs[1].first).real() == doctest::Approx(0.5 * a.gamma_of(pairs[0].first).real()));
    opt.pair_weights = std::vector<double>{1.0};
    CHECK_THROWS_AS(configure_synthetic(g, w, V3::UnitZ(), std::nullopt, opt), ContractViolation);
}

TEST_CASE("one-bit coding is the sign of the ideal in-phase component")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1, 1), az(0, 360), el(5, 85);
    for (int trial = 0; trial < 200; ++trial) {
        ArrayGeometry<double>::Positions p(3, 6);
        for (int i = 0; i < 6; ++i)
            p.col(i) = V3(u(rng), u(rng), 0) * 3 * kLambda;
        const ArrayGeometry<double> g({0, 1, 2, 3, 4, 5}, p, V3::UnitZ());
        const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(az(rng), el(rng)), kF);
        const V3 t = direction_from_az_el(az(rng), el(rng));
        const auto a = configure_coded(g, w, t, Scheme::OneBit);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            const double theta = w.wavenumber() * g.position(i).dot(w.direction() - t);
            CHECK(a.gammas(i).real() == (std::cos(theta) >= 0 ? 1.0 : -1.0));
        }
    }
}

TEST_CASE("two-bit coding picks the nearest of four phases")
{
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> u(-1, 1), az(0, 360), el(5, 85);
    const std::vector<Phasor<double>> levels{{1, 0}, {-1, 0}, {0, 0.9}, {0, -0.9}};
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = ArrayGeometry<double>::grid(3, 3, (0.3 + std::abs(u(rng))) * kLambda);
        const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(az(rng), el(rng)), kF);
        const V3 t = direction_from_az_el(az(rng), el(rng));
        const auto a = configure_coded(g, w, t, Scheme::TwoBit);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            const double theta = w.wavenumber() * g.position(i).dot(w.direction() - t);
            double best = 10;
            for (const auto &l : levels)
                best = std::min(best, circular_distance(theta, std::arg(l)));
            CHECK(circular_distance(theta, std::arg(a.gammas(i))) == doctest::Approx(best));
        }
        for (const auto &s : *a.quantized_states)
            CHECK((s.name() == "open" || s.name() == "short" || s.name() == "L0.9" || s.name() == "C0.9"));
    }
}

TEST_CASE("two-bit ties go to open, then to the inductive stage")
{
    // theta = pi/4 lies halfway between +1 and +0.9j.
    ArrayGeometry<double>::Positions p(3, 2);
    p.col(0) = V3::Zero();
    p.col(1) = V3(kLambda / 8, 0, 0);
    const ArrayGeometry<double> g({0, 1}, p, V3::UnitZ());
    const PlaneWave<double> w(kF, V3(1, 0, 0));
    const auto a = configure_coded(g, w, V3::UnitZ(), Scheme::TwoBit);
    CHECK(a.gammas(1) == Phasor<double>(1, 0));
    CHECK_THROWS_AS(configure_coded(g, w, V3::UnitZ(), Scheme::Synthetic), ContractViolation);
}

TEST_CASE("a coded 4x6 grid steers its main beam to 90 degrees azimuth")
{
    // Grid in the x-z plane facing +y; source at 60 degrees azimuth.
    const auto g = ArrayGeometry<double>::grid(4, 6, kLambda / 2, V3::UnitX(), V3::UnitZ());
    const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(60.0, 0.0), kF);
    const auto a = configure_coded(g, w, direction_from_az_el(90.0, 0.0), Scheme::TwoBit);
    const auto pattern = array_factor(g, a, w, SweepPlane<double>::named("xy"), angle_grid(0.0, 360.0, 0.5));
    const auto m = beam_metrics(pattern);
    CHECK(std::abs(m.main_lobe_deg - 90) <= 2.0);
}

TEST_CASE("assignments never exceed unit magnitude")
{
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> az(0, 360), el(10, 85), sp(0.2, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = ArrayGeometry<double>::grid(2 + trial % 3, 2 + trial % 4, sp(rng) * kLambda);
        const auto w = PlaneWave<double>::arriving_from(direction_from_az_el(az(rng), el(rng)), kF);
        const V3 t = direction_from_az_el(az(rng), el(rng));
        for (const Scheme s : {Scheme::OneBit, Scheme::TwoBit})
            CHECK(configure_coded(g, w, t, s).gammas.cwiseAbs().maxCoeff() <= 1.0);
        try {
            const auto a = configure_synthetic(g, w, t, std::nullopt, SynthesisOptions<double>{.pairing_tolerance = 0.5});
            CHECK(a.gammas.cwiseAbs().maxCoeff() <= 0.9 + 1e-12);
        } catch (const SingularPairing &) {
        } catch (const NoPairs &) {
        }
    }
    CHECK_THROWS_AS(GammaAssignment<double>({0}, PhasorVector<double>::Constant(1, {1.0, 0.5}), Scheme::Explicit),
                    DomainError);
}

TEST_CASE("scheme names")
{
    for (const Scheme s : {Scheme::Synthetic, Scheme::OneBit, Scheme::TwoBit, Scheme::Explicit})
        CHECK(scheme_from_string(to_string(s)) == s);
    try {
        scheme_from_string("3bit");
        FAIL("expected InputError");
    } catch (const InputError &e) {
        CHECK(e.field == "scheme");
    }
}

TEST_CASE("synthesis works with float scalars")
{
    const auto g = ArrayGeometry<float>::grid(2, 2, 0.1f);
    const auto w = PlaneWave<float>::arriving_from(Vector3<float>::UnitZ(), 28000.0f);
    const auto a = configure_synthetic(g, w, Vector3<float>(Vector3<float>::UnitZ()));
    CHECK(a.gammas(0).real() == doctest::Approx(0.9f));
}
