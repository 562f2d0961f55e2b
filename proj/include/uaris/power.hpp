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

#include <map>
#include <string>
#include <vector>

namespace uaris {

/// Supply voltage, standby currents and the measured active powers of the controller board.
struct PowerConfig
{
    double vcc{2.0};
    double mcu_standby_current{650e-9};
    double extender_standby_current{500e-9};
    int extender_count{12};
    double potentiometer_standby_current{5e-6};
    int potentiometer_count{6};
    std::map<double, double> peak_power_by_vcc{{2.0, 14.2e-3}, {4.0, 53e-3}};
    std::map<double, double> maintain_power_by_vcc{{2.0, 9.3e-3}, {3.0, 19.9e-3}, {4.0, 35.3e-3}};

    void validate() const;

    friend bool operator==(const PowerConfig &, const PowerConfig &) = default;
};

enum class BusProtocol { I2C, SPI };

std::string to_string(BusProtocol p);
BusProtocol bus_protocol_from_string(const std::string &s);

/// Load-configuration traffic on one bus.
struct BusTransfer
{
    BusProtocol protocol{BusProtocol::I2C};
    int payload_bytes{0};
    double baud{0};
    int framing_bits_per_message{0};
    int bytes_per_message{1};

    /// Three-byte messages: start, 3 x (8 data + ack), stop = 29 bits.
    static BusTransfer i2c(int payload_bytes, double baud);
    /// Two-byte messages framed at 9 bits per byte.
    static BusTransfer spi(int payload_bytes, double baud);

    void validate() const;
    int message_count() const;
    double duration() const; // seconds on the bus

    friend bool operator==(const BusTransfer &, const BusTransfer &) = default;
};

/// Piecewise-linear lookup; throws DomainError outside the tabulated voltages.
double interpolate_by_vcc(const std::map<double, double> &table, double vcc);

double standby_power(const PowerConfig &config);
double peak_power(const PowerConfig &config);
double maintain_power(const PowerConfig &config);

/// Energy to push all transfers at peak power.
double phase1_energy(const std::vector<BusTransfer> &transfers, const PowerConfig &config);

/// Energy to hold the programmed loads for `duration` seconds.
double phase2_energy(double duration, const PowerConfig &config);

/// One cell of the measured active-mode energy table. Phase II cells are the energy of one
/// second of load maintenance and carry baud 0.
struct ReferenceCell
{
    double vcc;
    std::string protocol; // "I2C", "SPI" or "-" for phase II
    double baud;
    double energy_uj;
    std::string phase; // "I" or "II"

    friend bool operator==(const ReferenceCell &, const ReferenceCell &) = default;
};

/// Measured table in CSV form: vcc,protocol,baud,energy_uJ,phase.
const std::string &reference_table_csv();
std::vector<ReferenceCell> reference_table();

struct PowerReportRow
{
    ReferenceCell reference;
    double model_uj;
    double deviation_pct; // (model - reference) / reference * 100

    friend bool operator==(const PowerReportRow &, const PowerReportRow &) = default;
};

/// Model against every reference cell, for the 72-byte I2C and 48-byte SPI payloads.
std::vector<PowerReportRow> power_report(const PowerConfig &base, int i2c_payload_bytes = 72, int spi_payload_bytes = 48);

} // namespace uaris
