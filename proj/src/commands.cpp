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

#include "uaris/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace uaris {

namespace fs = std::filesystem;
using io::json;

namespace {

GammaAssignment<double> explicit_assignment(const Scenario &s, const ArrayGeometry<double> &geometry)
{
    PhasorVector<double> gammas(geometry.size());
    for (Eigen::Index i = 0; i < geometry.size(); ++i) {
        const int id = geometry.ids()[static_cast<std::size_t>(i)];
        const auto it = s.explicit_gammas.find(id);
        if (it == s.explicit_gammas.end())
            throw InputError("explicit_gammas." + std::to_string(id), "missing coefficient for array element");
        gammas(i) = it->second;
    }
    for (const auto &[id, g] : s.explicit_gammas)
        if (std::find(geometry.ids().begin(), geometry.ids().end(), id) == geometry.ids().end())
            throw InputError("explicit_gammas." + std::to_string(id), "no array element has this id");
    return {geometry.ids(), gammas, Scheme::Explicit};
}

void write_pattern(const BeamPattern<double> &p, const fs::path &stem, const std::string &format)
{
    if (format == "json")
        io::write_json_file(io::pattern_to_json(p), stem.string() + ".json");
    else
        io::write_text_file(io::pattern_to_csv(p), stem.string() + ".csv");
}

void warn_ignored(const Scenario &s, const std::string &command, std::ostream &err,
                  std::initializer_list<const char *> used)
{
    const std::map<std::string, bool> present{{"array", s.array.has_value()},   {"incident", s.incident.has_value()},
                                              {"target", s.target.has_value()}, {"link", s.link.has_value()},
                                              {"power", s.power.has_value()},   {"tank", s.tank.has_value()}};
    for (const auto &[name, has] : present) {
        if (!has)
            continue;
        if (std::find_if(used.begin(), used.end(), [&](const char *u) { return name == u; }) == used.end())
            err << "warning: section '" << name << "' is ignored by " << command << "\n";
    }
}

std::string catalog_table(const std::vector<CatalogEntry> &entries, const std::string &format)
{
    if (format == "json") {
        json rows = json::array();
        for (const auto &e : entries)
            rows.push_back({{"state", e.state.name()},
                            {"re", e.gamma.real()},
                            {"im", e.gamma.imag()},
                            {"magnitude", std::abs(e.gamma)},
                            {"phase_deg", rad2deg(phase(e.gamma))}});
        return io::dump(rows);
    }
    std::string out = "state,re,im,magnitude,phase_deg\n";
    for (const auto &e : entries)
        out += e.state.name() + ',' + io::format_double(e.gamma.real()) + ',' + io::format_double(e.gamma.imag()) +
               ',' + io::format_double(std::abs(e.gamma)) + ',' + io::format_double(rad2deg(phase(e.gamma))) + '\n';
    return out;
}

std::string safe_name(const std::string &name)
{
    std::string out;
    for (const char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

} // namespace

SteerResult run_steer(const Scenario &s, bool quantize)
{
    const ArrayGeometry<double> geometry = s.geometry();
    const PlaneWave<double> wave = s.incident_wave();
    const auto catalog = (quantize || s.catalog) ? std::optional(s.catalog.value_or(HardwareCatalog{})) : std::nullopt;

    GammaAssignment<double> assignment;
    switch (s.scheme) {
    case Scheme::Synthetic:
        assignment = configure_synthetic(geometry, wave, s.target_direction(), catalog, s.synthesis);
        break;
    case Scheme::OneBit:
    case Scheme::TwoBit:
        assignment = configure_coded(geometry, wave, s.target_direction(), s.scheme);
        break;
    case Scheme::Explicit:
        assignment = explicit_assignment(s, geometry);
        if (catalog)
            apply_catalog(assignment, *catalog, s.frequency_hz);
        break;
    }

    const SweepPlane<double> plane = s.sweep_plane();
    const std::vector<double> angles = s.sweep_angles();
    BeamPattern<double> ideal = array_factor(geometry, assignment, wave, plane, angles);
    BeamMetrics<double> ideal_metrics = beam_metrics(ideal, s.lobe_floor);
    if (!quantize || !assignment.quantized_gammas)
        return {std::move(assignment), std::move(ideal), std::move(ideal_metrics)};

    BeamPattern<double> realized = array_factor(geometry, assignment.realized(), wave, plane, angles);
    BeamMetrics<double> realized_metrics = beam_metrics(realized, s.lobe_floor);
    return {std::move(assignment), std::move(realized), std::move(realized_metrics), std::move(ideal),
            std::move(ideal_metrics)};
}

SchemeComparison<double> run_compare(const Scenario &s, bool quantize)
{
    const auto catalog = (quantize || s.catalog) ? std::optional(s.catalog.value_or(HardwareCatalog{})) : std::nullopt;
    return compare_schemes(s.geometry(), s.incident_wave(), s.target_direction(), s.compare_schemes, s.sweep_plane(),
                           s.sweep_angles(), catalog, s.synthesis, s.lobe_floor);
}

io::LinkReport run_link(const Scenario &s)
{
    if (!s.link)
        throw InputError("link", "required field is missing");
    const LinkSpec &l = *s.link;
    io::LinkReport r;
    r.frequency_hz = s.frequency_hz;
    r.environment = l.environment;
    try {
        r.modeled_absorption_db_per_km = absorption_fg(s.frequency_hz, l.environment);
    } catch (const DomainError &e) {
        throw InputError("link", e.what());
    }
    r.beta_from_model = !l.beta_db_per_km;
    const double beta = l.beta_db_per_km.value_or(r.modeled_absorption_db_per_km);
    for (const double alpha : l.alphas)
        for (const double snr : l.delta_snr_db) {
            io::LinkCase c;
            c.params = {alpha, beta, l.r_x_km, snr};
            c.r_y_km = range_extension(c.params);
            c.extension_pct = (c.r_y_km / l.r_x_km - 1.0) * 100.0;
            c.rate_multiplier = rate_multiplier(snr);
            r.cases.push_back(c);
        }
    return r;
}

io::PowerSummary run_power(const Scenario &s)
{
    if (!s.power)
        throw InputError("power", "required field is missing");
    const PowerSpec &p = *s.power;
    io::PowerSummary out;
    out.config = p.config;
    try {
        out.standby_w = standby_power(p.config);
        out.peak_w = peak_power(p.config);
        out.maintain_w = maintain_power(p.config);
    } catch (const DomainError &e) {
        throw InputError("power.config.vcc", e.what());
    }
    out.transfers = p.transfers;
    out.phase1_j = phase1_energy(p.transfers, p.config);
    out.phase2_duration_s = p.phase2_duration_s;
    out.phase2_j = phase2_energy(p.phase2_duration_s, p.config);
    out.reference = power_report(p.config);
    return out;
}

TankReport run_tank(const Scenario &s)
{
    if (!s.tank)
        throw InputError("tank", "required field is missing");
    const TankSpec &t = *s.tank;
    const PlaneWave<double> tone(s.frequency_hz, Eigen::Vector3d::UnitX(), 1.0, s.sound_speed_mps);
    TankReport r;
    r.sample_rate_hz = t.sample_rate_hz.value_or(16.0 * s.frequency_hz);
    r.settle_time_s = t.channel.max_delay();
    for (const TankCase &c : t.cases) {
        TankCaseResult cr;
        cr.spec = c;
        const Waveform ra = simulate_received(t.channel, c.gamma_a, tone, t.duration_s, r.sample_rate_hz);
        const Waveform rb = simulate_received(t.channel, c.gamma_b, tone, t.duration_s, r.sample_rate_hz);
        cr.differential = differential_component(ra, rb);
        cr.simulated_amplitude = tone_amplitude(cr.differential, s.frequency_hz, r.settle_time_s);
        r.cases.push_back(std::move(cr));
    }
    const TankCase &ref = t.cases.front();
    const double ref_amp = r.cases.front().simulated_amplitude;
    for (auto &cr : r.cases) {
        cr.predicted_ratio = differential_ratio(cr.spec.gamma_a, cr.spec.gamma_b, ref.gamma_a, ref.gamma_b);
        cr.simulated_ratio = ref_amp > 0 ? cr.simulated_amplitude / ref_amp : 0.0;
    }
    return r;
}

json run_self_check(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi<double>, kPi<double>);
    std::uniform_real_distribution<double> amp(0.0, 1.0);

    constexpr int kTrials = 10000;
    int solved = 0, singular = 0;
    double worst = 0;
    for (int i = 0; i < kTrials; ++i) {
        const double p1 = angle(rng), p2 = angle(rng), pr = angle(rng), a = amp(rng);
        try {
            const auto sol = solve_pair(Angle<double>{p1}, Angle<double>{p2}, Angle<double>{pr}, a);
            worst = std::max(worst, std::abs(sol.combined(p1, p2) - std::polar(a, pr)));
            ++solved;
        } catch (const SingularPairing &) {
            ++singular;
        }
    }
    const bool passed = worst < 1e-9;
    return {{"seed", seed},
            {"solve_pair_trials", kTrials},
            {"solved", solved},
            {"singular", singular},
            {"max_substitution_residual", worst},
            {"passed", passed}};
}

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names{"steer", "compare", "tank", "link", "power", "catalog", "check"};
    return names;
}

namespace {

// Console summaries; files keep full precision.
std::string brief(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int dispatch(const std::string &command, const CommandOptions &opt, std::ostream &out, std::ostream &err)
{
    if (opt.format != "csv" && opt.format != "json")
        throw InputError("--format", "expected csv or json");
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);

    if (command == "check") {
        const json report = run_self_check(opt.seed);
        io::write_json_file(report, (dir / "check.json").string());
        out << "check: " << (report["passed"].get<bool>() ? "passed" : "FAILED") << "\n";
        return report["passed"].get<bool>() ? kExitOk : kExitFailure;
    }

    if (opt.scenario_path.empty())
        throw InputError("--scenario", "a scenario file is required");
    const Scenario s = load_scenario(opt.scenario_path);

    if (command == "steer") {
        warn_ignored(s, command, err, {"array", "incident", "target", "link", "power"});
        const SteerResult r = run_steer(s, opt.quantize);
        write_pattern(r.pattern, dir / "pattern", opt.format);
        io::write_json_file(io::metrics_to_json(r.metrics), (dir / "metrics.json").string());
        io::write_json_file(io::assignment_to_json(r.assignment), (dir / "assignment.json").string());
        if (r.ideal_pattern) {
            write_pattern(*r.ideal_pattern, dir / "pattern_ideal", opt.format);
            io::write_json_file(io::metrics_to_json(*r.ideal_metrics), (dir / "metrics_ideal.json").string());
        }
        if (s.link)
            io::write_json_file(io::link_report_to_json(run_link(s)), (dir / "link.json").string());
        if (s.power)
            io::write_json_file(io::power_summary_to_json(run_power(s)), (dir / "power.json").string());
        out << "steer: main lobe " << brief(r.metrics.main_lobe_deg) << " deg, HPBW "
            << brief(r.metrics.hpbw_deg) << " deg, max side lobe "
            << brief(r.metrics.max_side_lobe()) << "\n";
        return kExitOk;
    }
    if (command == "compare") {
        warn_ignored(s, command, err, {"array", "incident", "target"});
        const SchemeComparison<double> c = run_compare(s, opt.quantize);
        io::write_json_file(io::comparison_to_json(c), (dir / "compare.json").string());
        for (const auto &r : c.results) {
            write_pattern(r.pattern, dir / ("pattern_" + safe_name(r.name)), opt.format);
            out << r.name << ": main lobe " << brief(r.metrics.main_lobe_deg) << " deg, HPBW "
                << brief(r.metrics.hpbw_deg) << " deg, max side lobe "
                << brief(r.metrics.max_side_lobe()) << "\n";
        }
        return kExitOk;
    }
    if (command == "tank") {
        warn_ignored(s, command, err, {"tank"});
        const TankReport r = run_tank(s);
        json cases = json::array();
        for (const auto &c : r.cases) {
            const std::string stem = "differential_" + safe_name(c.spec.name);
            std::ostringstream csv;
            write_waveform_csv(c.differential, csv);
            io::write_text_file(csv.str(), (dir / (stem + ".csv")).string());
            if (s.tank->write_wav)
                write_waveform_wav(c.differential, (dir / (stem + ".wav")).string());
            cases.push_back({{"name", c.spec.name},
                             {"a", io::phasor_to_json(c.spec.gamma_a)},
                             {"b", io::phasor_to_json(c.spec.gamma_b)},
                             {"predicted_ratio", c.predicted_ratio},
                             {"simulated_amplitude", c.simulated_amplitude},
                             {"simulated_ratio", c.simulated_ratio}});
            out << c.spec.name << ": predicted " << brief(c.predicted_ratio) << ", simulated "
                << brief(c.simulated_ratio) << "\n";
        }
        io::write_json_file({{"sample_rate_hz", r.sample_rate_hz},
                             {"settle_time_s", r.settle_time_s},
                             {"channel", io::channel_to_json(s.tank->channel)},
                             {"cases", cases}},
                            (dir / "tank.json").string());
        return kExitOk;
    }
    if (command == "link") {
        warn_ignored(s, command, err, {"link"});
        const io::LinkReport r = run_link(s);
        io::write_json_file(io::link_report_to_json(r), (dir / "link.json").string());
        for (const auto &c : r.cases)
            out << "alpha " << brief(c.params.alpha) << ", dSNR " << brief(c.params.delta_snr)
                << " dB: R_y " << brief(c.r_y_km) << " km, rate x" << brief(c.rate_multiplier)
                << "\n";
        return kExitOk;
    }
    if (command == "power") {
        warn_ignored(s, command, err, {"power"});
        const io::PowerSummary p = run_power(s);
        io::write_json_file(io::power_summary_to_json(p), (dir / "power.json").string());
        out << "standby " << brief(p.standby_w * 1e6) << " uW, phase I "
            << brief(p.phase1_j * 1e6) << " uJ, phase II " << brief(p.phase2_j * 1e3)
            << " mJ\n";
        return kExitOk;
    }
    if (command == "catalog") {
        warn_ignored(s, command, err, {});
        const auto entries = catalog_gammas(s.catalog.value_or(HardwareCatalog{}), s.frequency_hz);
        io::write_text_file(catalog_table(entries, opt.format), (dir / ("catalog." + opt.format)).string());
        out << entries.size() << " catalog states\n";
        return kExitOk;
    }
    throw InputError("command", "unknown subcommand '" + command + "'");
}

} // namespace

int run_command(const std::string &command, const CommandOptions &options, std::ostream &out, std::ostream &err)
{
    try {
        return dispatch(command, options, out, err);
    } catch (const InputError &e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SingularPairing &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NoPairs &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NoLobes &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const DomainError &e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace uaris
