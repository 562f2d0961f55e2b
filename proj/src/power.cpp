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

#include "uaris/power.hpp"

#include <cmath>
#include <iterator>
#include <sstream>

#include "uaris/errors.hpp"

namespace uaris {

std::string to_string(BusProtocol p) { return p == BusProtocol::I2C ? "I2C" : "SPI"; }

BusProtocol bus_protocol_from_string(const std::string &s)
{
    if (s == "I2C" || s == "i2c")
        return BusProtocol::I2C;
    if (s == "SPI" || s == "spi")
        return BusProtocol::SPI;
    throw InputError("protocol", "unknown bus protocol '" + s + "' (expected I2C or SPI)");
}

void PowerConfig::validate() const
{
    if (!(vcc > 0) || !std::isfinite(vcc))
        throw DomainError("vcc must be positive");
    if (!(mcu_standby_current >= 0 && extender_standby_current >= 0 && potentiometer_standby_current >= 0))
        throw DomainError("standby currents must be non-negative");
    if (extender_count < 0 || potentiometer_count < 0)
        throw DomainError("peripheral counts must be non-negative");
    for (const auto *table : {&peak_power_by_vcc, &maintain_power_by_vcc}) {
        if (table->empty())
            throw DomainError("power tables need at least one entry");
        for (const auto &[v, p] : *table)
            if (!(v > 0) || !(p >= 0))
                throw DomainError("power tables need positive voltages and non-negative powers");
    }
}

BusTransfer BusTransfer::i2c(int payload_bytes, double baud) { return {BusProtocol::I2C, payload_bytes, baud, 29, 3}; }

BusTransfer BusTransfer::spi(int payload_bytes, double baud) { return {BusProtocol::SPI, payload_bytes, baud, 18, 2}; }

void BusTransfer::validate() const
{
    if (!(baud > 0) || !std::isfinite(baud))
        throw DomainError("baud must be positive");
    if (bytes_per_message <= 0)
        throw DomainError("bytes_per_message must be positive");
    if (payload_bytes < 0 || framing_bits_per_message < 0)
        throw DomainError("payload and framing must be non-negative");
    if (payload_bytes % bytes_per_message != 0)
        throw ContractViolation("payload of " + std::to_string(payload_bytes) + " bytes is not a whole number of " +
                                std::to_string(bytes_per_message) + "-byte messages");
}

int BusTransfer::message_count() const
{
    validate();
    return payload_bytes / bytes_per_message;
}

double BusTransfer::duration() const { return message_count() * static_cast<double>(framing_bits_per_message) / baud; }

double interpolate_by_vcc(const std::map<double, double> &table, double vcc)
{
    if (table.empty())
        throw DomainError("empty power table");
    const auto exact = table.find(vcc);
    if (exact != table.end())
        return exact->second;
    const auto hi = table.upper_bound(vcc);
    if (hi == table.begin() || hi == table.end())
        throw DomainError("vcc " + std::to_string(vcc) + " V is outside the tabulated range [" +
                          std::to_string(table.begin()->first) + ", " + std::to_string(table.rbegin()->first) + "]");
    const auto lo = std::prev(hi);
    const double t = (vcc - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

double standby_power(const PowerConfig &c)
{
    c.validate();
    return c.vcc * (c.mcu_standby_current + c.extender_count * c.extender_standby_current +
                    c.potentiometer_count * c.potentiometer_standby_current);
}

double peak_power(const PowerConfig &c)
{
    c.validate();
    return interpolate_by_vcc(c.peak_power_by_vcc, c.vcc);
}

double maintain_power(const PowerConfig &c)
{
    c.validate();
    return interpolate_by_vcc(c.maintain_power_by_vcc, c.vcc);
}

double phase1_energy(const std::vector<BusTransfer> &transfers, const PowerConfig &config)
{
    double seconds = 0;
    for (const BusTransfer &t : transfers)
        seconds += t.duration();
    if (seconds == 0)
        return 0;
    return peak_power(config) * seconds;
}

double phase2_energy(double duration, const PowerConfig &config)
{
    if (!(duration >= 0) || !std::isfinite(duration))
        throw DomainError("maintenance duration must be non-negative");
    return maintain_power(config) * duration;
}

const std::string &reference_table_csv()
{
    static const std::string csv = "vcc,protocol,baud,energy_uJ,phase\n"
                                   "2,I2C,50000,198.5,I\n"
                                   "2,I2C,200000,56.6,I\n"
                                   "2,I2C,400000,38.4,I\n"
                                   "2,SPI,125000,48.9,I\n"
                                   "2,SPI,500000,15.3,I\n"
                                   "2,SPI,2000000,8.8,I\n"
                                   "2,-,0,9300,II\n"
                                   "3,I2C,50000,397.0,I\n"
                                   "3,I2C,200000,112.4,I\n"
                                   "3,I2C,400000,73.7,I\n"
                                   "3,SPI,125000,98.1,I\n"
                                   "3,SPI,500000,33.6,I\n"
                                   "3,SPI,2000000,18.0,I\n"
                                   "3,-,0,19900,II\n"
                                   "4,I2C,50000,694.7,I\n"
                                   "4,I2C,200000,198.4,I\n"
                                   "4,I2C,400000,127.7,I\n"
                                   "4,SPI,125000,172.5,I\n"
                                   "4,SPI,500000,58.6,I\n"
                                   "4,SPI,2000000,31.8,I\n"
                                   "4,-,0,35300,II\n";
    return csv;
}

std::vector<ReferenceCell> reference_table()
{
    std::istringstream in(reference_table_csv());
    std::string line;
    std::getline(in, line); // header
    std::vector<ReferenceCell> cells;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string vcc, protocol, baud, energy, phase;
        std::getline(row, vcc, ',');
        std::getline(row, protocol, ',');
        std::getline(row, baud, ',');
        std::getline(row, energy, ',');
        std::getline(row, phase, ',');
        cells.push_back({std::stod(vcc), protocol, std::stod(baud), std::stod(energy), phase});
    }
    return cells;
}

std::vector<PowerReportRow> power_report(const PowerConfig &base, int i2c_payload_bytes, int spi_payload_bytes)
{
    std::vector<PowerReportRow> rows;
    for (const ReferenceCell &cell : reference_table()) {
        PowerConfig cfg = base;
        cfg.vcc = cell.vcc;
        double model_j = 0;
        if (cell.phase == "II") {
            model_j = phase2_energy(1.0, cfg);
        } else {
            const BusTransfer t = bus_protocol_from_string(cell.protocol) == BusProtocol::I2C
                                      ? BusTransfer::i2c(i2c_payload_bytes, cell.baud)
                                      : BusTransfer::spi(spi_payload_bytes, cell.baud);
            model_j = phase1_energy({t}, cfg);
        }
        const double model_uj = model_j * 1e6;
        rows.push_back({cell, model_uj, (model_uj - cell.energy_uj) / cell.energy_uj * 100.0});
    }
    return rows;
}

} // namespace uaris
