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

#include "uaris/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uaris::io {

StrictObject::StrictObject(const json &value, std::string path) : value_(value), path_(std::move(path))
{
    if (!value_.is_object())
        throw InputError(path_.empty() ? "document" : path_, "expected an object");
}

std::string StrictObject::child_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

bool StrictObject::has(const std::string &key) const { return value_.contains(key); }

const json &StrictObject::raw(const std::string &key)
{
    if (!value_.contains(key))
        throw InputError(child_path(key), "required field is missing");
    seen_.insert(key);
    return value_.at(key);
}

double StrictObject::number(const std::string &key) { return as_number(raw(key), child_path(key)); }

double StrictObject::number_or(const std::string &key, double fallback)
{
    return has(key) ? number(key) : fallback;
}

std::optional<double> StrictObject::optional_number(const std::string &key)
{
    if (!has(key))
        return std::nullopt;
    return number(key);
}

int StrictObject::integer(const std::string &key) { return as_integer(raw(key), child_path(key)); }

int StrictObject::integer_or(const std::string &key, int fallback) { return has(key) ? integer(key) : fallback; }

std::string StrictObject::string(const std::string &key) { return as_string(raw(key), child_path(key)); }

std::string StrictObject::string_or(const std::string &key, const std::string &fallback)
{
    return has(key) ? string(key) : fallback;
}

bool StrictObject::boolean_or(const std::string &key, bool fallback)
{
    if (!has(key))
        return fallback;
    const json &v = raw(key);
    if (!v.is_boolean())
        throw InputError(child_path(key), "expected true or false");
    return v.get<bool>();
}

Eigen::Vector3d StrictObject::vector3(const std::string &key) { return as_vector3(raw(key), child_path(key)); }

Eigen::Vector3d StrictObject::vector3_or(const std::string &key, const Eigen::Vector3d &fallback)
{
    return has(key) ? vector3(key) : fallback;
}

void StrictObject::finish() const
{
    for (const auto &item : value_.items())
        if (!seen_.contains(item.key()))
            throw InputError(child_path(item.key()), "unknown field");
}

double as_number(const json &value, const std::string &path)
{
    if (!value.is_number())
        throw InputError(path, "expected a number");
    const double v = value.get<double>();
    if (!std::isfinite(v))
        throw InputError(path, "must be finite");
    return v;
}

int as_integer(const json &value, const std::string &path)
{
    if (!value.is_number_integer())
        throw InputError(path, "expected an integer");
    return value.get<int>();
}

std::string as_string(const json &value, const std::string &path)
{
    if (!value.is_string())
        throw InputError(path, "expected a string");
    return value.get<std::string>();
}

Eigen::Vector3d as_vector3(const json &value, const std::string &path)
{
    if (!value.is_array() || value.size() != 3)
        throw InputError(path, "expected an array of three numbers");
    return {as_number(value[0], path + "[0]"), as_number(value[1], path + "[1]"), as_number(value[2], path + "[2]")};
}

json parse_document(const std::string &text, const std::string &origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(origin, std::string("malformed JSON: ") + e.what());
    }
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), path);
}

std::string dump(const json &doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string &text, const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw Error("failed writing " + path);
}

void write_json_file(const json &doc, const std::string &path) { write_text_file(dump(doc), path); }

std::string format_double(double v)
{
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf.data();
}

json phasor_to_json(Phasor<double> g) { return {{"re", g.real()}, {"im", g.imag()}}; }

Phasor<double> phasor_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    const Phasor<double> g(o.number("re"), o.number("im"));
    o.finish();
    return g;
}

namespace {

json phasor_list(const std::vector<Phasor<double>> &list)
{
    json out = json::array();
    for (const auto &g : list)
        out.push_back(phasor_to_json(g));
    return out;
}

std::vector<Phasor<double>> phasor_list_from(const json &value, const std::string &path)
{
    if (!value.is_array())
        throw InputError(path, "expected an array");
    std::vector<Phasor<double>> out;
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(phasor_from_json(value[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json tap_list(const std::vector<TankTap> &taps)
{
    json out = json::array();
    for (const TankTap &t : taps)
        out.push_back({{"amplitude", t.amplitude}, {"phase_deg", rad2deg(t.phase)}, {"delay_s", t.delay}});
    return out;
}

std::vector<TankTap> tap_list_from(const json &value, const std::string &path)
{
    if (!value.is_array())
        throw InputError(path, "expected an array of taps");
    std::vector<TankTap> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        StrictObject o(value[i], path + "[" + std::to_string(i) + "]");
        TankTap t{o.number("amplitude"), deg2rad(o.number_or("phase_deg", 0.0)), o.number("delay_s")};
        o.finish();
        out.push_back(t);
    }
    return out;
}

json power_table(const std::map<double, double> &table)
{
    json out = json::array();
    for (const auto &[v, p] : table)
        out.push_back({{"vcc", v}, {"watts", p}});
    return out;
}

std::map<double, double> power_table_from(const json &value, const std::string &path)
{
    if (!value.is_array() || value.empty())
        throw InputError(path, "expected a non-empty array of {vcc, watts}");
    std::map<double, double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        StrictObject o(value[i], path + "[" + std::to_string(i) + "]");
        const double v = o.number("vcc");
        const double w = o.number("watts");
        o.finish();
        if (!out.emplace(v, w).second)
            throw InputError(o.path(), "duplicate vcc");
    }
    return out;
}

template <typename F>
auto checked(const std::string &path, F &&f)
{
    try {
        return f();
    } catch (const InputError &) {
        throw;
    } catch (const DomainError &e) {
        throw InputError(path, e.what());
    }
}

} // namespace

json catalog_to_json(const HardwareCatalog &c)
{
    return {{"z0", c.z0},
            {"wiper_resistance", c.wiper_resistance},
            {"max_resistance", c.max_resistance},
            {"potentiometer_steps", c.potentiometer_steps},
            {"cap_stage_gammas", phasor_list(c.cap_stage_gammas)},
            {"ind_stage_gammas", phasor_list(c.ind_stage_gammas)},
            {"gamma_max", c.gamma_max}};
}

HardwareCatalog catalog_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    HardwareCatalog c;
    c.z0 = o.number_or("z0", c.z0);
    c.wiper_resistance = o.number_or("wiper_resistance", c.wiper_resistance);
    c.max_resistance = o.number_or("max_resistance", c.max_resistance);
    c.potentiometer_steps = o.integer_or("potentiometer_steps", c.potentiometer_steps);
    if (o.has("cap_stage_gammas"))
        c.cap_stage_gammas = phasor_list_from(o.raw("cap_stage_gammas"), o.child_path("cap_stage_gammas"));
    if (o.has("ind_stage_gammas"))
        c.ind_stage_gammas = phasor_list_from(o.raw("ind_stage_gammas"), o.child_path("ind_stage_gammas"));
    c.gamma_max = o.number_or("gamma_max", c.gamma_max);
    o.finish();
    checked(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

json assignment_to_json(const GammaAssignment<double> &a)
{
    json elements = json::object();
    for (std::size_t i = 0; i < a.ids.size(); ++i) {
        json e = phasor_to_json(a.gammas(static_cast<Eigen::Index>(i)));
        if (a.quantized_states)
            e["state"] = (*a.quantized_states)[i].name();
        if (a.quantized_gammas)
            e["quantized"] = phasor_to_json((*a.quantized_gammas)(static_cast<Eigen::Index>(i)));
        elements[std::to_string(a.ids[i])] = std::move(e);
    }
    json out = {{"scheme", to_string(a.scheme)}, {"passivity_scale", a.passivity_scale}, {"elements", elements}};
    if (a.pairing) {
        json pairs = json::array();
        for (const auto &[x, y] : a.pairing->pairs)
            pairs.push_back({x, y});
        out["pairs"] = pairs;
        out["unpaired"] = a.pairing->unpaired;
    }
    return out;
}

GammaAssignment<double> assignment_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    GammaAssignment<double> a;
    const std::string scheme = o.string("scheme");
    try {
        a.scheme = scheme_from_string(scheme);
    } catch (const InputError &) {
        throw InputError(o.child_path("scheme"), "unknown scheme '" + scheme + "'");
    }
    a.passivity_scale = o.number_or("passivity_scale", 1.0);

    const json &elements = o.raw("elements");
    const std::string epath = o.child_path("elements");
    if (!elements.is_object() || elements.empty())
        throw InputError(epath, "expected a non-empty object keyed by element id");
    std::vector<Phasor<double>> gammas, quantized;
    std::vector<LoadState> states;
    for (const auto &item : elements.items()) {
        const std::string p = epath + "." + item.key();
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(item.key(), &used);
            if (used != item.key().size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::logic_error &) {
            throw InputError(p, "element keys must be integer ids");
        }
        StrictObject e(item.value(), p);
        a.ids.push_back(id);
        gammas.emplace_back(e.number("re"), e.number("im"));
        if (e.has("state"))
            states.push_back(LoadState::from_name(e.string("state")));
        if (e.has("quantized"))
            quantized.push_back(phasor_from_json(e.raw("quantized"), e.child_path("quantized")));
        e.finish();
    }
    const auto n = static_cast<Eigen::Index>(gammas.size());
    a.gammas = Eigen::Map<const PhasorVector<double>>(gammas.data(), n);
    if (!states.empty()) {
        if (states.size() != gammas.size())
            throw InputError(epath, "either every element or none carries a state");
        a.quantized_states = std::move(states);
    }
    if (!quantized.empty()) {
        if (quantized.size() != gammas.size())
            throw InputError(epath, "either every element or none carries a quantized coefficient");
        a.quantized_gammas = PhasorVector<double>(Eigen::Map<const PhasorVector<double>>(quantized.data(), n));
    }
    if (o.has("pairs")) {
        Pairing pairing;
        const json &pairs = o.raw("pairs");
        if (!pairs.is_array())
            throw InputError(o.child_path("pairs"), "expected an array of id pairs");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::string p = o.child_path("pairs") + "[" + std::to_string(i) + "]";
            if (!pairs[i].is_array() || pairs[i].size() != 2)
                throw InputError(p, "expected [first, second]");
            pairing.pairs.emplace_back(as_integer(pairs[i][0], p), as_integer(pairs[i][1], p));
        }
        const json &unpaired = o.raw("unpaired");
        if (!unpaired.is_array())
            throw InputError(o.child_path("unpaired"), "expected an array of ids");
        for (const auto &id : unpaired)
            pairing.unpaired.push_back(as_integer(id, o.child_path("unpaired")));
        a.pairing = std::move(pairing);
    }
    o.finish();
    checked(path, [&] {
        a.check();
        return 0;
    });
    return a;
}

json metrics_to_json(const BeamMetrics<double> &m)
{
    json lobes = json::array();
    for (const auto &l : m.side_lobes)
        lobes.push_back({{"angle_deg", l.angle_deg}, {"level", l.level}});
    return {{"main_lobe_deg", m.main_lobe_deg},
            {"main_lobe_mag", m.main_lobe_mag},
            {"hpbw_deg", m.hpbw_deg},
            {"hpbw_truncated", m.hpbw_truncated},
            {"max_side_lobe", m.max_side_lobe()},
            {"side_lobes", lobes}};
}

BeamMetrics<double> metrics_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    BeamMetrics<double> m;
    m.main_lobe_deg = o.number("main_lobe_deg");
    m.main_lobe_mag = o.number("main_lobe_mag");
    m.hpbw_deg = o.number("hpbw_deg");
    m.hpbw_truncated = o.boolean_or("hpbw_truncated", false);
    o.optional_number("max_side_lobe"); // derived from side_lobes
    const json &lobes = o.raw("side_lobes");
    if (!lobes.is_array())
        throw InputError(o.child_path("side_lobes"), "expected an array");
    for (std::size_t i = 0; i < lobes.size(); ++i) {
        StrictObject l(lobes[i], o.child_path("side_lobes") + "[" + std::to_string(i) + "]");
        m.side_lobes.push_back({l.number("angle_deg"), l.number("level")});
        l.finish();
    }
    o.finish();
    return m;
}

json pattern_to_json(const BeamPattern<double> &p)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i)
        rows.push_back({{"angle_deg", p.angles_deg[static_cast<std::size_t>(i)]},
                        {"magnitude", p.magnitude(i)},
                        {"phase_rad", phase(p.response(i))},
                        {"normalized", p.normalized(i)}});
    return {{"normalization", p.normalization}, {"samples", rows}};
}

std::string pattern_to_csv(const BeamPattern<double> &p)
{
    std::string out = "angle_deg,magnitude,phase_rad,normalized\n";
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        out += format_double(p.angles_deg[static_cast<std::size_t>(i)]);
        out += ',' + format_double(p.magnitude(i));
        out += ',' + format_double(phase(p.response(i)));
        out += ',' + format_double(p.normalized(i));
        out += '\n';
    }
    return out;
}

json channel_to_json(const TankChannel &c)
{
    return {{"static_taps", tap_list(c.static_taps)}, {"reflector_taps", tap_list(c.reflector_taps)}};
}

TankChannel channel_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    TankChannel c;
    if (o.has("static_taps"))
        c.static_taps = tap_list_from(o.raw("static_taps"), o.child_path("static_taps"));
    c.reflector_taps = tap_list_from(o.raw("reflector_taps"), o.child_path("reflector_taps"));
    o.finish();
    checked(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

json link_params_to_json(const LinkBudgetParams &p)
{
    return {{"alpha", p.alpha}, {"beta_db_per_km", p.beta}, {"r_x_km", p.r_x}, {"delta_snr_db", p.delta_snr}};
}

LinkBudgetParams link_params_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    LinkBudgetParams p;
    p.alpha = o.number("alpha");
    p.beta = o.number("beta_db_per_km");
    p.r_x = o.number("r_x_km");
    p.delta_snr = o.number("delta_snr_db");
    o.finish();
    checked(path, [&] {
        p.validate();
        return 0;
    });
    return p;
}

json power_config_to_json(const PowerConfig &c)
{
    return {{"vcc", c.vcc},
            {"mcu_standby_current", c.mcu_standby_current},
            {"extender_standby_current", c.extender_standby_current},
            {"extender_count", c.extender_count},
            {"potentiometer_standby_current", c.potentiometer_standby_current},
            {"potentiometer_count", c.potentiometer_count},
            {"peak_power_by_vcc", power_table(c.peak_power_by_vcc)},
            {"maintain_power_by_vcc", power_table(c.maintain_power_by_vcc)}};
}

PowerConfig power_config_from_json(const json &value, const std::string &path, const PowerConfig &base)
{
    StrictObject o(value, path);
    PowerConfig c = base;
    c.vcc = o.number_or("vcc", c.vcc);
    c.mcu_standby_current = o.number_or("mcu_standby_current", c.mcu_standby_current);
    c.extender_standby_current = o.number_or("extender_standby_current", c.extender_standby_current);
    c.extender_count = o.integer_or("extender_count", c.extender_count);
    c.potentiometer_standby_current = o.number_or("potentiometer_standby_current", c.potentiometer_standby_current);
    c.potentiometer_count = o.integer_or("potentiometer_count", c.potentiometer_count);
    if (o.has("peak_power_by_vcc"))
        c.peak_power_by_vcc = power_table_from(o.raw("peak_power_by_vcc"), o.child_path("peak_power_by_vcc"));
    if (o.has("maintain_power_by_vcc"))
        c.maintain_power_by_vcc =
            power_table_from(o.raw("maintain_power_by_vcc"), o.child_path("maintain_power_by_vcc"));
    o.finish();
    checked(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

json transfer_to_json(const BusTransfer &t)
{
    return {{"protocol", to_string(t.protocol)},
            {"payload_bytes", t.payload_bytes},
            {"baud", t.baud},
            {"framing_bits_per_message", t.framing_bits_per_message},
            {"bytes_per_message", t.bytes_per_message}};
}

BusTransfer transfer_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    const std::string proto = o.string("protocol");
    BusProtocol protocol{};
    try {
        protocol = bus_protocol_from_string(proto);
    } catch (const InputError &) {
        throw InputError(o.child_path("protocol"), "unknown bus protocol '" + proto + "' (expected I2C or SPI)");
    }
    const int payload = o.integer("payload_bytes");
    const double baud = o.number("baud");
    BusTransfer t = protocol == BusProtocol::I2C ? BusTransfer::i2c(payload, baud) : BusTransfer::spi(payload, baud);
    t.framing_bits_per_message = o.integer_or("framing_bits_per_message", t.framing_bits_per_message);
    t.bytes_per_message = o.integer_or("bytes_per_message", t.bytes_per_message);
    o.finish();
    try {
        t.validate();
    } catch (const Error &e) {
        throw InputError(path, e.what());
    }
    return t;
}

json comparison_to_json(const SchemeComparison<double> &c)
{
    json schemes = json::array();
    for (const auto &r : c.results)
        schemes.push_back({{"name", r.name}, {"metrics", metrics_to_json(r.metrics)}});
    json deltas = json::array();
    for (const auto &d : c.deltas)
        deltas.push_back({{"a", d.a},
                          {"b", d.b},
                          {"main_lobe_deg", d.main_lobe_deg},
                          {"max_side_lobe", d.max_side_lobe},
                          {"hpbw_deg", d.hpbw_deg}});
    return {{"schemes", schemes}, {"deltas", deltas}};
}

json link_report_to_json(const LinkReport &r)
{
    json cases = json::array();
    for (const auto &c : r.cases)
        cases.push_back({{"params", link_params_to_json(c.params)},
                         {"r_y_km", c.r_y_km},
                         {"extension_pct", c.extension_pct},
                         {"rate_multiplier", c.rate_multiplier}});
    return {{"frequency_hz", r.frequency_hz},
            {"environment",
             {{"temperature_c", r.environment.temperature_c},
              {"salinity_ppt", r.environment.salinity_ppt},
              {"ph", r.environment.ph},
              {"depth_m", r.environment.depth_m}}},
            {"modeled_absorption_db_per_km", r.modeled_absorption_db_per_km},
            {"beta_from_model", r.beta_from_model},
            {"cases", cases}};
}

LinkReport link_report_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    LinkReport r;
    r.frequency_hz = o.number("frequency_hz");
    StrictObject env(o.raw("environment"), o.child_path("environment"));
    r.environment = {env.number("temperature_c"), env.number("salinity_ppt"), env.number("ph"), env.number("depth_m")};
    env.finish();
    r.modeled_absorption_db_per_km = o.number("modeled_absorption_db_per_km");
    r.beta_from_model = o.boolean_or("beta_from_model", false);
    const json &cases = o.raw("cases");
    if (!cases.is_array())
        throw InputError(o.child_path("cases"), "expected an array");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        StrictObject c(cases[i], o.child_path("cases") + "[" + std::to_string(i) + "]");
        LinkCase lc;
        lc.params = link_params_from_json(c.raw("params"), c.child_path("params"));
        lc.r_y_km = c.number("r_y_km");
        lc.extension_pct = c.number("extension_pct");
        lc.rate_multiplier = c.number("rate_multiplier");
        c.finish();
        r.cases.push_back(lc);
    }
    o.finish();
    return r;
}

json power_summary_to_json(const PowerSummary &s)
{
    json transfers = json::array();
    for (const auto &t : s.transfers)
        transfers.push_back(transfer_to_json(t));
    json table = json::array();
    for (const auto &row : s.reference)
        table.push_back({{"vcc", row.reference.vcc},
                         {"protocol", row.reference.protocol},
                         {"baud", row.reference.baud},
                         {"phase", row.reference.phase},
                         {"reference_uJ", row.reference.energy_uj},
                         {"model_uJ", row.model_uj},
                         {"deviation_pct", row.deviation_pct}});
    return {{"config", power_config_to_json(s.config)},
            {"standby_W", s.standby_w},
            {"peak_W", s.peak_w},
            {"maintain_W", s.maintain_w},
            {"transfers", transfers},
            {"phase1_J", s.phase1_j},
            {"phase2_duration_s", s.phase2_duration_s},
            {"phase2_J", s.phase2_j},
            {"reference_table", table}};
}

PowerSummary power_summary_from_json(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    PowerSummary s;
    s.config = power_config_from_json(o.raw("config"), o.child_path("config"));
    s.standby_w = o.number("standby_W");
    s.peak_w = o.number("peak_W");
    s.maintain_w = o.number("maintain_W");
    const json &transfers = o.raw("transfers");
    if (!transfers.is_array())
        throw InputError(o.child_path("transfers"), "expected an array");
    for (std::size_t i = 0; i < transfers.size(); ++i)
        s.transfers.push_back(transfer_from_json(transfers[i], o.child_path("transfers") + "[" + std::to_string(i) + "]"));
    s.phase1_j = o.number("phase1_J");
    s.phase2_duration_s = o.number("phase2_duration_s");
    s.phase2_j = o.number("phase2_J");
    const json &table = o.raw("reference_table");
    if (!table.is_array())
        throw InputError(o.child_path("reference_table"), "expected an array");
    for (std::size_t i = 0; i < table.size(); ++i) {
        StrictObject r(table[i], o.child_path("reference_table") + "[" + std::to_string(i) + "]");
        PowerReportRow row{};
        row.reference.vcc = r.number("vcc");
        row.reference.protocol = r.string("protocol");
        row.reference.baud = r.number("baud");
        row.reference.phase = r.string("phase");
        row.reference.energy_uj = r.number("reference_uJ");
        row.model_uj = r.number("model_uJ");
        row.deviation_pct = r.number("deviation_pct");
        r.finish();
        s.reference.push_back(row);
    }
    o.finish();
    return s;
}

} // namespace uaris::io
