#include "leo/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "leo/csv.hpp"

namespace leo {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct BadValue {};

double to_double(std::string_view text) {
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) throw BadValue{};
    return v;
}

template <typename Int>
Int to_int(std::string_view text) {
    Int v{};
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) throw BadValue{};
    return v;
}

bool to_bool(std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw BadValue{};
}

std::vector<double> to_list(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(to_double(trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

struct Field {
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <typename T>
Field number(T ScenarioConfig::*member) {
    Field f;
    f.set = [member](ScenarioConfig& c, std::string_view v) {
        if constexpr (std::is_floating_point_v<T>) {
            c.*member = to_double(v);
        } else {
            c.*member = to_int<T>(v);
        }
    };
    f.get = [member](const ScenarioConfig& c) {
        if constexpr (std::is_floating_point_v<T>) {
            return format_double(c.*member);
        } else {
            return std::to_string(c.*member);
        }
    };
    return f;
}

template <typename E>
Field choice(E ScenarioConfig::*member, std::vector<std::pair<std::string_view, E>> names) {
    Field f;
    f.set = [member, names](ScenarioConfig& c, std::string_view v) {
        for (const auto& [name, value] : names) {
            if (name == v) {
                c.*member = value;
                return;
            }
        }
        throw BadValue{};
    };
    f.get = [member](const ScenarioConfig& c) { return std::string(to_string(c.*member)); };
    return f;
}

const std::map<std::string, Field, std::less<>>& fields() {
    static const std::map<std::string, Field, std::less<>> table = [] {
        std::map<std::string, Field, std::less<>> t;
        using C = ScenarioConfig;
        t["num_satellites"] = number(&C::num_satellites);
        t["altitude_km"] = number(&C::altitude_km);
        t["cells_per_sat"] = number(&C::cells_per_sat);
        t["max_illuminated"] = number(&C::max_illuminated);
        t["beam_radius_km"] = number(&C::beam_radius_km);
        t["inter_sat_distance_km"] = number(&C::inter_sat_distance_km);
        t["serving_radius_km"] = number(&C::serving_radius_km);
        t["topology"] = choice(&C::topology, {{"homogeneous", OrbitTopology::homogeneous},
                                              {"homo", OrbitTopology::homogeneous},
                                              {"heterogeneous", OrbitTopology::heterogeneous},
                                              {"het", OrbitTopology::heterogeneous}});
        t["geometry"] = choice(&C::geometry, {{"planar", GeometryMode::planar}, {"spherical", GeometryMode::spherical}});
        t["placement"] =
            choice(&C::placement, {{"cells", UserPlacement::cells}, {"serving_disk", UserPlacement::serving_disk}});
        t["beam_mode"] = choice(&C::beam_mode, {{"BA", BeamMode::allocate}, {"NBA", BeamMode::full}});
        t["earth_fixed_cells"] = Field{[](C& c, std::string_view v) { c.earth_fixed_cells = to_bool(v); },
                                       [](const C& c) { return std::string(c.earth_fixed_cells ? "true" : "false"); }};
        t["sub_channels"] = number(&C::sub_channels);
        t["carrier_hz"] = number(&C::carrier_hz);
        t["bandwidth_hz"] = number(&C::bandwidth_hz);
        t["p_leo_dbm"] = number(&C::p_leo_dbm);
        t["p_beam_dbm"] = number(&C::p_beam_dbm);
        t["noise_psd_dbm_hz"] = number(&C::noise_psd_dbm_hz);
        t["doppler_compensation"] = number(&C::doppler_compensation);
        t["tx_gain_dbi"] = number(&C::tx_gain_dbi);
        t["rx_gain_dbi"] = number(&C::rx_gain_dbi);
        t["aperture_radius_m"] = number(&C::aperture_radius_m);
        t["theta_max_rad"] = number(&C::theta_max_rad);
        t["shadow_db"] = number(&C::shadow_db);
        t["shadow_sigma_db"] = number(&C::shadow_sigma_db);
        t["clutter_db"] = number(&C::clutter_db);
        t["atmospheric_db"] = number(&C::atmospheric_db);
        t["scintillation_db"] = number(&C::scintillation_db);
        t["num_users"] = number(&C::num_users);
        t["sat_speed_kms"] = number(&C::sat_speed_kms);
        t["user_speed_ms"] = number(&C::user_speed_ms);
        t["time_step_s"] = number(&C::time_step_s);
        t["epsilon"] = number(&C::epsilon);
        t["gamma_macro"] = number(&C::gamma_macro);
        t["gamma_micro"] = number(&C::gamma_micro);
        t["reward_scale"] = number(&C::reward_scale);
        t["iterations"] = number(&C::iterations);
        t["power_arm_cap"] = number(&C::power_arm_cap);
        t["beam_arm_cap"] = number(&C::beam_arm_cap);
        t["channel_arm_cap"] = number(&C::channel_arm_cap);
        t["joint_arm_cap"] = number(&C::joint_arm_cap);
        t["power_steps_db"] = Field{[](C& c, std::string_view v) { c.power_steps_db = to_list(v); },
                                    [](const C& c) {
                                        std::string out;
                                        for (double d : c.power_steps_db) out += (out.empty() ? "" : ",") + format_double(d);
                                        return out;
                                    }};
        t["power_allow_off"] = Field{[](C& c, std::string_view v) { c.power_allow_off = to_bool(v); },
                                     [](const C& c) { return std::string(c.power_allow_off ? "true" : "false"); }};
        t["outage_threshold_bps"] = number(&C::outage_threshold_bps);
        t["seed"] = number(&C::seed);
        return t;
    }();
    return table;
}

}  // namespace

std::string_view to_string(Scale scale) { return scale == Scale::desk ? "desk" : "full"; }

Scale parse_scale(std::string_view text) {
    if (text == "desk") return Scale::desk;
    if (text == "full") return Scale::full;
    throw ConfigError("scale must be 'desk' or 'full', got '" + std::string(text) + "'");
}

ScenarioConfig defaults_for(Scale scale) {
    return scale == Scale::desk ? desk_scale(ScenarioConfig{}) : ScenarioConfig{};
}

void apply_override(ScenarioConfig& config, std::string_view key, std::string_view value) {
    const auto it = fields().find(key);
    if (it == fields().end()) throw ConfigError("unknown key '" + std::string(key) + "'");
    try {
        it->second.set(config, trim(value));
    } catch (const BadValue&) {
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "'");
    }
}

ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base) {
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);

        const auto comment = line.find_first_of("#;");
        line = trim(line.substr(0, comment));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_override(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

ScenarioConfig load_config_file(const std::filesystem::path& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ScenarioConfig resolve_config(Scale scale, const std::optional<std::filesystem::path>& file,
                              const std::vector<Override>& overrides) {
    ScenarioConfig config = defaults_for(scale);
    if (file) config = load_config_file(*file, config);
    for (const auto& [key, value] : overrides) apply_override(config, key, value);
    validate(config);
    return config;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [key, field] : fields()) keys.push_back(key);
    return keys;
}

void write_config(std::ostream& out, const ScenarioConfig& config) {
    for (const auto& [key, field] : fields()) out << key << " = " << field.get(config) << '\n';
}

}  // namespace leo
