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

#include "uaris/scenario.hpp"

namespace uaris {

using io::json;
using io::StrictObject;

namespace {

std::string indexed(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <typename F>
auto as_input_error(const std::string &path, F &&f)
{
    try {
        return f();
    } catch (const InputError &) {
        throw;
    } catch (const DomainError &e) {
        throw InputError(path, e.what());
    } catch (const ContractViolation &e) {
        throw InputError(path, e.what());
    }
}

DirectionSpec direction_from(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    DirectionSpec d;
    if (o.has("sweep_angle_deg")) {
        if (o.has("azimuth_deg") || o.has("elevation_deg"))
            throw InputError(path, "give either sweep_angle_deg or azimuth_deg/elevation_deg, not both");
        d.value = o.number("sweep_angle_deg");
    } else {
        d.value = std::pair{o.number("azimuth_deg"), o.number_or("elevation_deg", 0.0)};
    }
    o.finish();
    return d;
}

/// {re, im} or a load-state label such as "open" or "C0.9".
Phasor<double> gamma_from(const json &value, const std::string &path, const HardwareCatalog &catalog,
                          double frequency)
{
    if (value.is_string()) {
        try {
            return state_gamma(LoadState::from_name(value.get<std::string>()), catalog, frequency);
        } catch (const Error &e) {
            throw InputError(path, e.what());
        }
    }
    const Phasor<double> g = io::phasor_from_json(value, path);
    if (!(std::abs(g) <= 1.0))
        throw InputError(path, "reflection coefficient magnitude exceeds 1");
    return g;
}

std::vector<double> number_or_list(StrictObject &o, const std::string &key)
{
    const json &v = o.raw(key);
    const std::string path = o.child_path(key);
    if (v.is_number())
        return {io::as_number(v, path)};
    if (!v.is_array() || v.empty())
        throw InputError(path, "expected a number or a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(io::as_number(v[i], indexed(path, i)));
    return out;
}

std::variant<GridLayout, ExplicitLayout> array_from(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    if (o.has("grid")) {
        StrictObject g(o.raw("grid"), o.child_path("grid"));
        GridLayout layout;
        layout.rows = g.integer("rows");
        layout.cols = g.integer("cols");
        layout.spacing_wavelengths = g.number("spacing_wavelengths");
        layout.col_axis = g.vector3_or("col_axis", layout.col_axis);
        layout.row_axis = g.vector3_or("row_axis", layout.row_axis);
        layout.element_aperture_wavelengths = g.number_or("element_aperture_wavelengths", 0.0);
        g.finish();
        o.finish();
        if (layout.rows < 1 || layout.cols < 1)
            throw InputError(g.path(), "rows and cols must be at least 1");
        if (!(layout.spacing_wavelengths > 0))
            throw InputError(g.child_path("spacing_wavelengths"), "must be positive");
        if (!(layout.element_aperture_wavelengths >= 0))
            throw InputError(g.child_path("element_aperture_wavelengths"), "must be non-negative");
        return layout;
    }

    ExplicitLayout layout;
    const json &positions = o.raw("positions");
    if (!positions.is_array() || positions.empty())
        throw InputError(o.child_path("positions"), "expected a non-empty array of [x, y, z] in meters");
    for (std::size_t i = 0; i < positions.size(); ++i)
        layout.positions.push_back(io::as_vector3(positions[i], indexed(o.child_path("positions"), i)));
    if (o.has("ids")) {
        const json &ids = o.raw("ids");
        if (!ids.is_array() || ids.size() != positions.size())
            throw InputError(o.child_path("ids"), "expected one integer id per position");
        for (std::size_t i = 0; i < ids.size(); ++i)
            layout.ids.push_back(io::as_integer(ids[i], indexed(o.child_path("ids"), i)));
    } else {
        for (std::size_t i = 0; i < positions.size(); ++i)
            layout.ids.push_back(static_cast<int>(i));
    }
    layout.normal = o.vector3("normal");
    layout.element_aperture_m = o.number_or("element_aperture_m", 0.0);
    o.finish();
    return layout;
}

std::vector<Scheme> schemes_from(const json &value, const std::string &path)
{
    if (!value.is_array() || value.size() < 2)
        throw InputError(path, "expected an array of at least two scheme names");
    std::vector<Scheme> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string name = io::as_string(value[i], indexed(path, i));
        Scheme s{};
        try {
            s = scheme_from_string(name);
        } catch (const InputError &) {
            throw InputError(indexed(path, i), "unknown scheme '" + name + "'");
        }
        if (s == Scheme::Explicit)
            throw InputError(indexed(path, i), "explicit assignments cannot be compared by scheme name");
        out.push_back(s);
    }
    return out;
}

LinkSpec link_from(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    LinkSpec l;
    if (o.has("alpha"))
        l.alphas = number_or_list(o, "alpha");
    l.beta_db_per_km = o.optional_number("beta_db_per_km");
    l.r_x_km = o.number("r_x_km");
    l.delta_snr_db = number_or_list(o, "delta_snr_db");
    l.environment.temperature_c = o.number_or("temperature_c", l.environment.temperature_c);
    l.environment.salinity_ppt = o.number_or("salinity_ppt", l.environment.salinity_ppt);
    l.environment.ph = o.number_or("ph", l.environment.ph);
    l.environment.depth_m = o.number_or("depth_m", l.environment.depth_m);
    o.finish();
    for (const double a : l.alphas)
        if (!(a > 0))
            throw InputError(o.child_path("alpha"), "must be positive");
    if (l.beta_db_per_km && !(*l.beta_db_per_km >= 0))
        throw InputError(o.child_path("beta_db_per_km"), "must be non-negative");
    if (!(l.r_x_km > 0))
        throw InputError(o.child_path("r_x_km"), "must be positive");
    for (const double d : l.delta_snr_db)
        if (!(d >= 0))
            throw InputError(o.child_path("delta_snr_db"), "must be non-negative");
    return l;
}

PowerSpec power_from(const json &value, const std::string &path)
{
    StrictObject o(value, path);
    PowerSpec p;
    if (o.has("config"))
        p.config = io::power_config_from_json(o.raw("config"), o.child_path("config"));
    if (o.has("transfers")) {
        const json &t = o.raw("transfers");
        if (!t.is_array())
            throw InputError(o.child_path("transfers"), "expected an array");
        for (std::size_t i = 0; i < t.size(); ++i)
            p.transfers.push_back(io::transfer_from_json(t[i], indexed(o.child_path("transfers"), i)));
    }
    p.phase2_duration_s = o.number_or("phase2_duration_s", p.phase2_duration_s);
    o.finish();
    if (!(p.phase2_duration_s >= 0))
        throw InputError(o.child_path("phase2_duration_s"), "must be non-negative");
    return p;
}

TankSpec tank_from(const json &value, const std::string &path, const HardwareCatalog &catalog, double frequency)
{
    StrictObject o(value, path);
    TankSpec t;
    t.channel = io::channel_from_json(o.raw("channel"), o.child_path("channel"));
    t.duration_s = o.number("duration_s");
    t.sample_rate_hz = o.optional_number("sample_rate_hz");
    t.write_wav = o.boolean_or("wav", false);
    const json &cases = o.raw("cases");
    const std::string cpath = o.child_path("cases");
    if (!cases.is_array() || cases.empty())
        throw InputError(cpath, "expected a non-empty array; the first case is the reference");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        StrictObject c(cases[i], indexed(cpath, i));
        TankCase tc;
        tc.name = c.string_or("name", "case" + std::to_string(i));
        tc.gamma_a = gamma_from(c.raw("a"), c.child_path("a"), catalog, frequency);
        tc.gamma_b = gamma_from(c.raw("b"), c.child_path("b"), catalog, frequency);
        c.finish();
        t.cases.push_back(tc);
    }
    o.finish();
    if (!(t.duration_s > 0))
        throw InputError(o.child_path("duration_s"), "must be positive");
    if (t.sample_rate_hz && !(*t.sample_rate_hz > 2 * frequency))
        throw InputError(o.child_path("sample_rate_hz"), "must exceed twice the tone frequency");
    if (t.duration_s < t.channel.max_delay())
        throw InputError(o.child_path("duration_s"), "must cover the longest tap delay");
    return t;
}

} // namespace

Eigen::Vector3d DirectionSpec::resolve(const SweepPlane<double> &plane) const
{
    if (const auto *ae = std::get_if<std::pair<double, double>>(&value))
        return direction_from_az_el(ae->first, ae->second);
    return plane.direction(std::get<double>(value));
}

std::vector<double> Scenario::sweep_angles() const
{
    return as_input_error("sweep", [&] { return angle_grid(sweep.start_deg, sweep.stop_deg, sweep.step_deg); });
}

ArrayGeometry<double> Scenario::geometry() const
{
    if (!array)
        throw InputError("array", "required field is missing");
    return as_input_error("array", [&] {
        if (const auto *g = std::get_if<GridLayout>(&*array))
            return ArrayGeometry<double>::grid(g->rows, g->cols, g->spacing_wavelengths * wavelength(), g->col_axis,
                                               g->row_axis, g->element_aperture_wavelengths * wavelength());
        const auto &e = std::get<ExplicitLayout>(*array);
        ArrayGeometry<double>::Positions pos(3, static_cast<Eigen::Index>(e.positions.size()));
        for (std::size_t i = 0; i < e.positions.size(); ++i)
            pos.col(static_cast<Eigen::Index>(i)) = e.positions[i];
        return ArrayGeometry<double>(e.ids, pos, e.normal, e.element_aperture_m);
    });
}

PlaneWave<double> Scenario::incident_wave() const
{
    if (!incident)
        throw InputError("incident", "required field is missing");
    return as_input_error("incident", [&] {
        return PlaneWave<double>::arriving_from(incident->resolve(sweep_plane()), frequency_hz, 1.0, sound_speed_mps);
    });
}

Eigen::Vector3d Scenario::target_direction() const
{
    if (!target)
        throw InputError("target", "required field is missing");
    return target->resolve(sweep_plane());
}

Scenario scenario_from_json(const json &doc)
{
    StrictObject o(doc, "");
    Scenario s;
    s.frequency_hz = o.number("frequency_hz");
    if (!(s.frequency_hz > 0))
        throw InputError("frequency_hz", "must be positive");
    s.sound_speed_mps = o.number_or("sound_speed_mps", s.sound_speed_mps);
    if (!(s.sound_speed_mps > 0))
        throw InputError("sound_speed_mps", "must be positive");

    if (o.has("array"))
        s.array = array_from(o.raw("array"), "array");
    if (o.has("incident"))
        s.incident = direction_from(o.raw("incident"), "incident");
    if (o.has("target"))
        s.target = direction_from(o.raw("target"), "target");

    const std::string scheme = o.string_or("scheme", "synthetic");
    try {
        s.scheme = scheme_from_string(scheme);
    } catch (const InputError &) {
        throw InputError("scheme", "unknown scheme '" + scheme + "' (expected synthetic, 1bit, 2bit or explicit)");
    }
    if (o.has("schemes"))
        s.compare_schemes = schemes_from(o.raw("schemes"), "schemes");

    if (o.has("catalog"))
        s.catalog = io::catalog_from_json(o.raw("catalog"), "catalog");
    const HardwareCatalog catalog = s.catalog.value_or(HardwareCatalog{});

    if (o.has("explicit_gammas")) {
        const json &g = o.raw("explicit_gammas");
        if (!g.is_object())
            throw InputError("explicit_gammas", "expected an object keyed by element id");
        for (const auto &item : g.items()) {
            const std::string p = "explicit_gammas." + item.key();
            int id = 0;
            try {
                std::size_t used = 0;
                id = std::stoi(item.key(), &used);
                if (used != item.key().size())
                    throw std::invalid_argument("trailing characters");
            } catch (const std::logic_error &) {
                throw InputError(p, "element keys must be integer ids");
            }
            s.explicit_gammas[id] = gamma_from(item.value(), p, catalog, s.frequency_hz);
        }
    }
    if (s.scheme == Scheme::Explicit && s.explicit_gammas.empty())
        throw InputError("explicit_gammas", "required when scheme is explicit");

    if (o.has("synthesis")) {
        StrictObject y(o.raw("synthesis"), "synthesis");
        s.synthesis.gamma_max = y.number_or("gamma_max", catalog.gamma_max);
        s.synthesis.target_amplitude = y.number_or("target_amplitude", s.synthesis.target_amplitude);
        if (const auto tol = y.optional_number("pairing_tolerance_wavelengths"))
            s.synthesis.pairing_tolerance = *tol * s.wavelength();
        if (y.has("pair_weights")) {
            const json &w = y.raw("pair_weights");
            if (!w.is_array())
                throw InputError(y.child_path("pair_weights"), "expected an array of numbers");
            std::vector<double> weights;
            for (std::size_t i = 0; i < w.size(); ++i)
                weights.push_back(io::as_number(w[i], indexed(y.child_path("pair_weights"), i)));
            s.synthesis.pair_weights = std::move(weights);
        }
        y.finish();
        if (!(s.synthesis.gamma_max > 0 && s.synthesis.gamma_max <= 1))
            throw InputError("synthesis.gamma_max", "must lie in (0, 1]");
        if (!(s.synthesis.target_amplitude >= 0))
            throw InputError("synthesis.target_amplitude", "must be non-negative");
        if (s.synthesis.pairing_tolerance && !(*s.synthesis.pairing_tolerance >= 0))
            throw InputError("synthesis.pairing_tolerance_wavelengths", "must be non-negative");
    } else {
        s.synthesis.gamma_max = catalog.gamma_max;
    }

    if (o.has("sweep")) {
        StrictObject w(o.raw("sweep"), "sweep");
        s.sweep.plane = w.string_or("plane", s.sweep.plane);
        s.sweep.start_deg = w.number_or("start_deg", s.sweep.start_deg);
        s.sweep.stop_deg = w.number_or("stop_deg", s.sweep.stop_deg);
        s.sweep.step_deg = w.number_or("step_deg", s.sweep.step_deg);
        w.finish();
    }
    s.sweep_plane(); // validates the plane name
    s.sweep_angles();
    s.lobe_floor = o.number_or("lobe_floor", s.lobe_floor);
    if (!(s.lobe_floor >= 0 && s.lobe_floor < 1))
        throw InputError("lobe_floor", "must lie in [0, 1)");

    if (o.has("link"))
        s.link = link_from(o.raw("link"), "link");
    if (o.has("power"))
        s.power = power_from(o.raw("power"), "power");
    if (o.has("tank"))
        s.tank = tank_from(o.raw("tank"), "tank", catalog, s.frequency_hz);
    o.finish();
    return s;
}

Scenario load_scenario(const std::string &path) { return scenario_from_json(io::read_json_file(path)); }

} // namespace uaris
