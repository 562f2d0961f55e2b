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

#include <iosfwd>
#include <string>
#include <vector>

#include "uaris/core.hpp"

namespace uaris {

/// One propagation path of the tank: amplitude, phase shift (radians) and delay (seconds).
struct TankTap
{
    double amplitude{0};
    double phase{0};
    double delay{0};

    friend bool operator==(const TankTap &, const TankTap &) = default;
};

/// Single-bounce multipath model. Static taps are every path that never touches the reflector;
/// reflector taps are paths reflected once by it and are scaled by its coefficient.
struct TankChannel
{
    std::vector<TankTap> static_taps;
    std::vector<TankTap> reflector_taps;

    void validate() const;
    double max_delay() const;

    friend bool operator==(const TankChannel &, const TankChannel &) = default;
};

struct Waveform
{
    double sample_rate{0};
    Eigen::VectorXd samples;

    double time(Eigen::Index i) const { return static_cast<double>(i) / sample_rate; }
    Eigen::Index size() const { return samples.size(); }
};

/// Received waveform for a tone switched on at t = 0. Each tap contributes
/// Re(a e^{j psi} e^{j 2 pi f (t - tau)}) once t >= tau; reflector taps are multiplied by `gamma`.
Waveform simulate_received(const TankChannel &channel, Phasor<double> gamma, const PlaneWave<double> &source,
                           double duration, double sample_rate);

/// Complex amplitude of the received tone once every path has arrived.
Phasor<double> steady_state_phasor(const TankChannel &channel, Phasor<double> gamma, double frequency);

/// (r_a - r_b) / 2 sample by sample.
Waveform differential_component(const Waveform &r_a, const Waveform &r_b);

/// |gamma_a - gamma_b| / |ref_a - ref_b|: the amplitude of one differential signal relative to
/// another that shares the same reflector paths.
double differential_ratio(Phasor<double> gamma_a, Phasor<double> gamma_b, Phasor<double> ref_a, Phasor<double> ref_b);

/// Least-squares amplitude of a tone at `frequency` over the samples at or after `from_time`.
double tone_amplitude(const Waveform &w, double frequency, double from_time);

/// "t_s,value" rows.
void write_waveform_csv(const Waveform &w, std::ostream &out);

/// 16-bit mono PCM, peak-normalized.
void write_waveform_wav(const Waveform &w, const std::string &path);

} // namespace uaris
