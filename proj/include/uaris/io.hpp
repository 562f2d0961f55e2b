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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "uaris/beam.hpp"
#include "uaris/channel.hpp"
#include "uaris/link.hpp"
#include "uaris/load_hardware.hpp"
#include "uaris/power.hpp"
#include "uaris/synthesis.hpp"

namespace uaris::io {

using json = nlohmann::ordered_json;

/// Reads one JSON object field by field and rejects anything it was not asked about.
/// Every error names the full path of the offending field.
class StrictObject
{
public:
    StrictObject(const json &value, std::string path);

    bool has(const std::string &key) const;
    const json &raw(const std::string &key);
    std::string child_path(const std::string &key) const;

    double number(const std::string &key);
    double number_or(const std::string &key, double fallback);
    std::optional<double> optional_number(const std::string &key);
    int integer(const std::string &key);
    int integer_or(const std::string &key, int fallback);
    std::string string(const std::string &key);
    std::string string_or(const std::string &key, const std::string &fallback);
    bool boolean_or(const std::string &key, bool fallback);
    Eigen::Vector3d vector3(const std::string &key);
    Eigen::Vector3d vector3_or(const std::string &key, const Eigen::Vector3d &fallback);

    /// Throws InputError for the first key that was never read.
    void finish() const;

    const std::string &path() const { return path_; }

private:
    const json &value_;
    std::string path_;
    mutable std::set<std::string> seen_;
};

double as_number(const json &value, const std::string &path);
int as_integer(const json &value, const std::string &path);
std::string as_string(const json &value, const std::string &path);
Eigen::Vector3d as_vector3(const json &value, const std::string &path);

json parse_document(const std::string &text, const std::string &origin);
json read_json_file(const std::string &path);

/// Writes `doc` as two-space indented JSON followed by a newline.
void write_json_file(const json &doc, const std::string &path);
void write_text_file(const std::string &text, const std::string &path);
std::string dump(const json &doc);

/// %.17g, the shortest fixed format that round-trips every double.
std::string format_double(double v);

json phasor_to_json(Phasor<double> g);
Phasor<double> phasor_from_json(const json &value, const std::string &path);

json catalog_to_json(const HardwareCatalog &catalog);
HardwareCatalog catalog_from_json(const json &value, const std::string &path = "catalog");

json assignment_to_json(const GammaAssignment<double> &a);
GammaAssignment<double> assignment_from_json(const json &value, const std::string &path = "assignment");

json metrics_to_json(const BeamMetrics<double> &m);
BeamMetrics<double> metrics_from_json(const json &value, const std::string &path = "metrics");

json pattern_to_json(const BeamPattern<double> &p);
/// Header angle_deg,magnitude,phase_rad,normalized; one row per sweep sample.
std::string pattern_to_csv(const BeamPattern<double> &p);

json channel_to_json(const TankChannel &c);
TankChannel channel_from_json(const json &value, const std::string &path = "channel");

json link_params_to_json(const LinkBudgetParams &p);
LinkBudgetParams link_params_from_json(const json &value, const std::string &path = "link");

json power_config_to_json(const PowerConfig &c);
PowerConfig power_config_from_json(const json &value, const std::string &path = "power", const PowerConfig &base = {});

json transfer_to_json(const BusTransfer &t);
BusTransfer transfer_from_json(const json &value, const std::string &path);

json comparison_to_json(const SchemeComparison<double> &c);

/// One range/rate evaluation.
struct LinkCase
{
    LinkBudgetParams params;
    double r_y_km{0};
    double extension_pct{0};
    double rate_multiplier{1};

    friend bool operator==(const LinkCase &, const LinkCase &) = default;
};

struct LinkReport
{
    double frequency_hz{0};
    SeawaterConditions environment;
    double modeled_absorption_db_per_km{0};
    bool beta_from_model{false};
    std::vector<LinkCase> cases;

    friend bool operator==(const LinkReport &, const LinkReport &) = default;
};

json link_report_to_json(const LinkReport &r);
LinkReport link_report_from_json(const json &value, const std::string &path = "link_report");

struct PowerSummary
{
    PowerConfig config;
    double standby_w{0};
    double peak_w{0};
    double maintain_w{0};
    std::vector<BusTransfer> transfers;
    double phase1_j{0};
    double phase2_duration_s{0};
    double phase2_j{0};
    std::vector<PowerReportRow> reference;

    friend bool operator==(const PowerSummary &, const PowerSummary &) = default;
};

json power_summary_to_json(const PowerSummary &s);
PowerSummary power_summary_from_json(const json &value, const std::string &path = "power_report");

} // namespace uaris::io
