#include "uavcollect/model.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uavcollect/errors.hpp"
#include "uavcollect/random.hpp"

namespace uavcollect {

using nlohmann::json;

Decibel Decibel::from_db(double db) {
    Decibel d;
    d.db_ = db;
    d.linear_ = std::pow(10.0, db / 10.0);
    return d;
}

std::vector<Point> Scenario::sensor_positions() const {
    std::vector<Point> out;
    out.reserve(sensors.size());
    for (const auto& s : sensors) out.push_back(s.position);
    return out;
}

void validate_params(const ChannelParams& p) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ValidationError(std::string("channel parameter invariant violated: ") + what);
    };
    require(p.kappa > 0.0 && p.kappa < 1.0, "0 < kappa < 1");
    require(p.beta0 > 0.0, "beta0 > 0");
    require(p.noise_w > 0.0, "noise_w > 0");
    require(p.alpha > 0.0, "alpha > 0");
    require(p.uav_height_m > 0.0, "uav_height_m > 0");
    require(p.bandwidth_hz > 0.0, "bandwidth_hz > 0");
    require(p.p_sensor_w > 0.0 && p.p_uav_w > 0.0, "transmit powers > 0");
    require(p.snr_th_g2u.linear() > 1.0, "snr_th_g2u_db > 0");
    require(p.snr_th_u2u.linear() > 1.0, "snr_th_u2u_db > 0");
    require(p.snr_th_u2b.linear() > 1.0, "snr_th_u2b_db > 0");
}

void validate_scenario(const Scenario& s) {
    if (!(s.region_width_m > 0.0) || !(s.region_height_m > 0.0))
        throw ValidationError("region dimensions must be positive");
    if (!(s.v_max_mps > 0.0)) throw ValidationError("v_max_mps must be positive");
    if (!(s.d_safe_m >= 0.0)) throw ValidationError("d_safe_m must be non-negative");
    if (s.n_th < 1) throw ValidationError("n_th must be at least 1");
    if (!(s.bs_height_m >= 0.0) || !(s.bs_height_m < s.params.uav_height_m))
        throw ValidationError("bs_height_m must lie in [0, uav_height_m)");
    validate_params(s.params);
    for (const auto& n : s.sensors) {
        if (!(n.data_bits > 0.0))
            throw ValidationError("sensor " + std::to_string(n.id) + " has non-positive data_bits");
        const Point p = n.position;
        if (!(p.x >= 0.0 && p.x <= s.region_width_m && p.y >= 0.0 && p.y <= s.region_height_m))
            throw ValidationError("sensor " + std::to_string(n.id) + " lies outside the region");
    }
}

Scenario generate_scenario(double width_m, double height_m, std::int64_t n_sensors, double data_bits,
                           const ChannelParams& params, std::uint64_t seed) {
    if (!(width_m > 0.0) || !(height_m > 0.0)) throw InvalidArgument("region dimensions must be positive");
    if (n_sensors < 1) throw InvalidArgument("n_sensors must be at least 1");
    if (!(data_bits > 0.0)) throw InvalidArgument("data_bits must be positive");

    Scenario s;
    s.region_width_m = width_m;
    s.region_height_m = height_m;
    s.bs_position = {0.0, 0.0};
    s.params = params;
    s.rng_seed = seed;

    Rng rng(seed);
    s.sensors.reserve(static_cast<std::size_t>(n_sensors));
    for (std::int64_t i = 0; i < n_sensors; ++i) {
        const double x = rng.uniform(0.0, width_m);
        const double y = rng.uniform(0.0, height_m);
        s.sensors.push_back({i, {x, y}, data_bits});
    }
    validate_scenario(s);
    return s;
}

namespace {

json channel_to_json(const ChannelParams& p) {
    return json{{"a", p.a},
                {"b", p.b},
                {"kappa", p.kappa},
                {"alpha", p.alpha},
                {"beta0", p.beta0},
                {"uav_height_m", p.uav_height_m},
                {"bandwidth_hz", p.bandwidth_hz},
                {"p_sensor_w", p.p_sensor_w},
                {"p_uav_w", p.p_uav_w},
                {"noise_w", p.noise_w},
                {"snr_th_g2u_db", p.snr_th_g2u.db()},
                {"snr_th_u2u_db", p.snr_th_u2u.db()},
                {"snr_th_u2b_db", p.snr_th_u2b.db()}};
}

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(full, "missing required field '" + key + "'");
    try {
        if constexpr (std::is_floating_point_v<T>) {
            if (!it->is_number()) throw ParseError(full, "expected a number");
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) throw ParseError(full, "expected an integer");
        }
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ParseError(full, e.what());
    }
}

/// Reads `key` into `out` when present; used for override documents.
template <typename T>
bool maybe_field(const json& obj, const std::string& key, T& out) {
    if (!obj.contains(key)) return false;
    out = get_field<T>(obj, key, "");
    return true;
}

void channel_overrides(const json& obj, ChannelParams& p) {
    maybe_field(obj, "a", p.a);
    maybe_field(obj, "b", p.b);
    maybe_field(obj, "kappa", p.kappa);
    maybe_field(obj, "alpha", p.alpha);
    maybe_field(obj, "beta0", p.beta0);
    maybe_field(obj, "uav_height_m", p.uav_height_m);
    maybe_field(obj, "bandwidth_hz", p.bandwidth_hz);
    maybe_field(obj, "p_sensor_w", p.p_sensor_w);
    maybe_field(obj, "p_uav_w", p.p_uav_w);
    maybe_field(obj, "noise_w", p.noise_w);
    double db = 0.0;
    if (maybe_field(obj, "snr_th_g2u_db", db)) p.snr_th_g2u = Decibel::from_db(db);
    if (maybe_field(obj, "snr_th_u2u_db", db)) p.snr_th_u2u = Decibel::from_db(db);
    if (maybe_field(obj, "snr_th_u2b_db", db)) p.snr_th_u2b = Decibel::from_db(db);
}

ChannelParams channel_from_json(const json& obj) {
    const std::string path = "channel";
    ChannelParams p;
    p.a = get_field<double>(obj, "a", path);
    p.b = get_field<double>(obj, "b", path);
    p.kappa = get_field<double>(obj, "kappa", path);
    p.alpha = get_field<double>(obj, "alpha", path);
    p.beta0 = get_field<double>(obj, "beta0", path);
    p.uav_height_m = get_field<double>(obj, "uav_height_m", path);
    p.bandwidth_hz = get_field<double>(obj, "bandwidth_hz", path);
    p.p_sensor_w = get_field<double>(obj, "p_sensor_w", path);
    p.p_uav_w = get_field<double>(obj, "p_uav_w", path);
    p.noise_w = get_field<double>(obj, "noise_w", path);
    p.snr_th_g2u = Decibel::from_db(get_field<double>(obj, "snr_th_g2u_db", path));
    p.snr_th_u2u = Decibel::from_db(get_field<double>(obj, "snr_th_u2u_db", path));
    p.snr_th_u2b = Decibel::from_db(get_field<double>(obj, "snr_th_u2b_db", path));
    return p;
}

} // namespace

std::string scenario_to_json(const Scenario& s) {
    json sensors = json::array();
    for (const auto& n : s.sensors)
        sensors.push_back({{"id", n.id}, {"x_m", n.position.x}, {"y_m", n.position.y}, {"data_bits", n.data_bits}});
    json doc{{"region_width_m", s.region_width_m},
             {"region_height_m", s.region_height_m},
             {"bs_x_m", s.bs_position.x},
             {"bs_y_m", s.bs_position.y},
             {"bs_height_m", s.bs_height_m},
             {"n_th", s.n_th},
             {"v_max_mps", s.v_max_mps},
             {"d_safe_m", s.d_safe_m},
             {"rng_seed", s.rng_seed},
             {"channel", channel_to_json(s.params)},
             {"sensors", std::move(sensors)}};
    return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", e.what());
    }
    Scenario s;
    s.region_width_m = get_field<double>(doc, "region_width_m", "");
    s.region_height_m = get_field<double>(doc, "region_height_m", "");
    s.bs_position = {get_field<double>(doc, "bs_x_m", ""), get_field<double>(doc, "bs_y_m", "")};
    s.bs_height_m = get_field<double>(doc, "bs_height_m", "");
    s.n_th = get_field<std::int64_t>(doc, "n_th", "");
    s.v_max_mps = get_field<double>(doc, "v_max_mps", "");
    s.d_safe_m = get_field<double>(doc, "d_safe_m", "");
    s.rng_seed = get_field<std::uint64_t>(doc, "rng_seed", "");
    if (!doc.contains("channel")) throw ParseError("channel", "missing required field 'channel'");
    s.params = channel_from_json(doc["channel"]);
    if (!doc.contains("sensors") || !doc["sensors"].is_array())
        throw ParseError("sensors", "missing or non-array field 'sensors'");
    const auto& arr = doc["sensors"];
    s.sensors.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "sensors[" + std::to_string(i) + "]";
        SensorNode n;
        n.id = get_field<std::int64_t>(arr[i], "id", path);
        n.position = {get_field<double>(arr[i], "x_m", path), get_field<double>(arr[i], "y_m", path)};
        n.data_bits = get_field<double>(arr[i], "data_bits", path);
        s.sensors.push_back(n);
    }
    validate_scenario(s);
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << scenario_to_json(s);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void apply_overrides(Scenario& base, const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError("<config>", e.what());
    }
    if (!doc.is_object()) throw ParseError("<config>", "expected an object");
    // Channel keys may sit at top level or under "channel".
    channel_overrides(doc, base.params);
    if (doc.contains("channel")) channel_overrides(doc["channel"], base.params);
    maybe_field(doc, "bs_height_m", base.bs_height_m);
    maybe_field(doc, "n_th", base.n_th);
    maybe_field(doc, "v_max_mps", base.v_max_mps);
    maybe_field(doc, "d_safe_m", base.d_safe_m);
    validate_scenario(base);
}

} // namespace uavcollect
