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

#include "uaris/channel.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace uaris {

namespace {

void check_taps(const std::vector<TankTap> &taps, const char *what)
{
    for (const TankTap &t : taps) {
        if (!(t.amplitude >= 0) || !std::isfinite(t.amplitude))
            throw DomainError(std::string(what) + " amplitudes must be finite and non-negative");
        if (!(t.delay >= 0) || !std::isfinite(t.delay))
            throw DomainError(std::string(what) + " delays must be finite and non-negative");
        if (!std::isfinite(t.phase))
            throw DomainError(std::string(what) + " phases must be finite");
    }
}

void add_taps(Eigen::VectorXd &out, const std::vector<TankTap> &taps, Phasor<double> weight, double amplitude,
              double frequency, double sample_rate)
{
    const double w = kTwoPi<double> * frequency;
    for (const TankTap &tap : taps) {
        const Phasor<double> c = weight * amplitude * std::polar(tap.amplitude, tap.phase);
        const auto first = static_cast<Eigen::Index>(std::ceil(tap.delay * sample_rate - 1e-9));
        for (Eigen::Index i = std::max<Eigen::Index>(first, 0); i < out.size(); ++i) {
            const double t = static_cast<double>(i) / sample_rate;
            out(i) += (c * unit_phasor(w * (t - tap.delay))).real();
        }
    }
}

} // namespace

void TankChannel::validate() const
{
    check_taps(static_taps, "static tap");
    check_taps(reflector_taps, "reflector tap");
}

double TankChannel::max_delay() const
{
    double d = 0;
    for (const auto *taps : {&static_taps, &reflector_taps})
        for (const TankTap &t : *taps)
            d = std::max(d, t.delay);
    return d;
}

Waveform simulate_received(const TankChannel &channel, Phasor<double> gamma, const PlaneWave<double> &source,
                           double duration, double sample_rate)
{
    channel.validate();
    if (!(sample_rate > 2 * source.frequency()))
        throw DomainError("sample rate must exceed twice the tone frequency");
    if (!(duration >= channel.max_delay()) || !std::isfinite(duration))
        throw DomainError("duration must cover the longest tap delay");

    const auto n = static_cast<Eigen::Index>(std::floor(duration * sample_rate)) + 1;
    Waveform w{sample_rate, Eigen::VectorXd::Zero(n)};
    add_taps(w.samples, channel.static_taps, 1.0, source.amplitude(), source.frequency(), sample_rate);
    add_taps(w.samples, channel.reflector_taps, gamma, source.amplitude(), source.frequency(), sample_rate);
    return w;
}

Phasor<double> steady_state_phasor(const TankChannel &channel, Phasor<double> gamma, double frequency)
{
    const double w = kTwoPi<double> * frequency;
    auto sum = [w](const std::vector<TankTap> &taps) {
        Phasor<double> s{0, 0};
        for (const TankTap &t : taps)
            s += std::polar(t.amplitude, t.phase - w * t.delay);
        return s;
    };
    return sum(channel.static_taps) + gamma * sum(channel.reflector_taps);
}

Waveform differential_component(const Waveform &r_a, const Waveform &r_b)
{
    if (r_a.size() != r_b.size() || r_a.sample_rate != r_b.sample_rate)
        throw ContractViolation("differential inputs must share length and sample rate");
    return {r_a.sample_rate, (r_a.samples - r_b.samples) / 2.0};
}

double differential_ratio(Phasor<double> gamma_a, Phasor<double> gamma_b, Phasor<double> ref_a, Phasor<double> ref_b)
{
    const double ref = std::abs(ref_a - ref_b);
    if (!(ref > 0))
        throw DomainError("reference coefficients must differ");
    return std::abs(gamma_a - gamma_b) / ref;
}

double tone_amplitude(const Waveform &w, double frequency, double from_time)
{
    const auto first = static_cast<Eigen::Index>(std::ceil(from_time * w.sample_rate - 1e-9));
    const Eigen::Index n = w.size() - std::max<Eigen::Index>(first, 0);
    if (n < 3)
        throw DomainError("not enough samples to fit a tone");
    Eigen::MatrixXd basis(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = w.time(first + i);
        basis(i, 0) = std::cos(kTwoPi<double> * frequency * t);
        basis(i, 1) = std::sin(kTwoPi<double> * frequency * t);
    }
    const Eigen::Vector2d ab = basis.colPivHouseholderQr().solve(w.samples.tail(n));
    return ab.norm();
}

void write_waveform_csv(const Waveform &w, std::ostream &out)
{
    out << "t_s,value\n";
    std::array<char, 64> buf{};
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        std::snprintf(buf.data(), buf.size(), "%.17g,%.17g\n", w.time(i), w.samples(i));
        out << buf.data();
    }
}

namespace {

template <typename T>
void put_le(std::ostream &out, T value)
{
    for (std::size_t b = 0; b < sizeof(T); ++b)
        out.put(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xff));
}

} // namespace

void write_waveform_wav(const Waveform &w, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    const auto rate = static_cast<std::uint32_t>(std::lround(w.sample_rate));
    const auto data_bytes = static_cast<std::uint32_t>(w.size() * 2);
    const double peak = w.size() > 0 ? w.samples.cwiseAbs().maxCoeff() : 0.0;
    const double gain = peak > 0 ? 32767.0 / peak : 0.0;

    out.write("RIFF", 4);
    put_le<std::uint32_t>(out, 36 + data_bytes);
    out.write("WAVEfmt ", 8);
    put_le<std::uint32_t>(out, 16);
    put_le<std::uint16_t>(out, 1); // PCM
    put_le<std::uint16_t>(out, 1); // mono
    put_le<std::uint32_t>(out, rate);
    put_le<std::uint32_t>(out, rate * 2);
    put_le<std::uint16_t>(out, 2);
    put_le<std::uint16_t>(out, 16);
    out.write("data", 4);
    put_le<std::uint32_t>(out, data_bytes);
    for (Eigen::Index i = 0; i < w.size(); ++i)
        put_le<std::uint16_t>(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::lround(w.samples(i) * gain))));
    if (!out)
        throw Error("failed writing " + path);
}

} // namespace uaris
