#include "radarlab/config.hpp"

#include <fstream>
#include <set>
#include <vector>

#include "json.hpp"
#include "radarlab/csv.hpp"

namespace radarlab {

namespace {

using nlohmann::json;

/// Strict view over one JSON object: typed getters plus rejection of any key
/// that was never declared. Field errors name the full dotted path.
class StrictView {
public:
    StrictView(const json& node, std::string path)
        : node_(node), path_(std::move(path)) {
        if (!node_.is_object())
            throw ConfigError("config field '" + path_ + "' must be an object");
    }

    bool has(const std::string& key) {
        known_.insert(key);
        return node_.contains(key);
    }

    double number(const std::string& key, double fallback) {
        return has(key) ? as_number(key) : fallback;
    }

    double required_number(const std::string& key) {
        if (!has(key))
            throw ConfigError("missing required field '" + dotted(key) + "'");
        return as_number(key);
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_number_integer() || v.get<double>() < 0)
            throw ConfigError("config field '" + dotted(key) +
                              "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        return required_text(key);
    }

    std::string required_text(const std::string& key) {
        if (!has(key))
            throw ConfigError("missing required field '" + dotted(key) + "'");
        const json& v = node_.at(key);
        if (!v.is_string())
            throw ConfigError("config field '" + dotted(key) +
                              "' must be a string");
        return v.get<std::string>();
    }

    std::optional<StrictView> object(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return StrictView(node_.at(key), dotted(key));
    }

    StrictView required_object(const std::string& key) {
        if (!has(key))
            throw ConfigError("missing required field '" + dotted(key) + "'");
        return StrictView(node_.at(key), dotted(key));
    }

    std::vector<double> number_pair(const std::string& key,
                                    std::vector<double> fallback) {
        if (!has(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
            !v[1].is_number())
            throw ConfigError("config field '" + dotted(key) +
                              "' must be an array of two numbers");
        return {v[0].get<double>(), v[1].get<double>()};
    }

    /// Call after all getters: any key not touched is unknown and rejected.
    void finish() const {
        for (const auto& item : node_.items())
            if (!known_.contains(item.key()))
                throw ConfigError("unknown config field '" +
                                  dotted(item.key()) + "'");
    }

private:
    double as_number(const std::string& key) const {
        const json& v = node_.at(key);
        if (!v.is_number())
            throw ConfigError("config field '" + dotted(key) +
                              "' must be a number");
        return v.get<double>();
    }

    std::string dotted(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json& node_;
    std::string path_;
    std::set<std::string> known_;
};

RadarParams parse_radar(StrictView view) {
    RadarParams p;
    p.carrier_freq = view.required_number("carrier_freq");
    p.theta0 = view.number("theta0", p.theta0);
    p.amp_i = view.number("amp_i", p.amp_i);
    p.amp_q = view.number("amp_q", p.amp_q);
    p.dc_i = view.number("dc_i", p.dc_i);
    p.dc_q = view.number("dc_q", p.dc_q);
    p.noise_std = view.number("noise_std", p.noise_std);
    p.phase_noise_std = view.number("phase_noise_std", p.phase_noise_std);
    view.finish();
    return p;
}

MotionSource parse_motion(StrictView view,
                          const std::filesystem::path& config_dir) {
    const std::string type = view.required_text("type");
    if (type == "pendulum") {
        PendulumSpec spec;
        spec.arm_length = view.number("arm_length", spec.arm_length);
        spec.initial_amplitude =
            view.number("initial_amplitude", spec.initial_amplitude);
        spec.decay_time = view.number("decay_time", spec.decay_time);
        spec.initial_phase = view.number("initial_phase", spec.initial_phase);
        spec.gravity = view.number("gravity", spec.gravity);
        view.finish();
        return spec;
    }
    if (type == "sinusoid") {
        SinusoidSpec spec;
        spec.amplitude = view.required_number("amplitude");
        spec.freq = view.required_number("freq");
        spec.phase = view.number("phase", spec.phase);
        view.finish();
        return spec;
    }
    if (type == "trace") {
        const std::filesystem::path rel = view.required_text("path");
        view.finish();
        const auto full = rel.is_absolute() ? rel : config_dir / rel;
        try {
            return to_motion_trace(read_csv(full));
        } catch (const std::exception& e) {
            throw ConfigError("motion.path: " + std::string(e.what()));
        }
    }
    throw ConfigError(
        "motion.type must be one of pendulum, sinusoid, trace");
}

IfParams parse_if_params(StrictView view) {
    IfParams p;
    p.if_freq = view.number("if_freq", p.if_freq);
    p.if_sample_rate = view.number("if_sample_rate", p.if_sample_rate);
    p.decimation = static_cast<std::size_t>(
        view.integer("decimation", p.decimation));
    p.signal_amp = view.number("signal_amp", p.signal_amp);
    p.clutter_amp = view.number("clutter_amp", p.clutter_amp);
    p.clutter_phase = view.number("clutter_phase", p.clutter_phase);
    p.lpf_taps =
        static_cast<std::size_t>(view.integer("lpf_taps", p.lpf_taps));
    p.lpf_cutoff = view.number("lpf_cutoff", p.lpf_cutoff);
    view.finish();
    return p;
}

GdConfig parse_gd(StrictView view) {
    GdConfig cfg;
    cfg.learning_rate = view.number("learning_rate", cfg.learning_rate);
    cfg.max_iterations = static_cast<std::size_t>(
        view.integer("max_iterations", cfg.max_iterations));
    cfg.grad_tolerance = view.number("grad_tolerance", cfg.grad_tolerance);
    cfg.parameter_tolerance =
        view.number("parameter_tolerance", cfg.parameter_tolerance);
    view.finish();
    return cfg;
}

}  // namespace

ToolConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path.string() + ": " +
                          e.what());
    }

    StrictView view(root, "");
    const auto version = view.integer("schema_version", 0);
    if (version != 1)
        throw ConfigError("schema_version must be present and equal to 1");

    ToolConfig cfg;
    cfg.seed = view.integer("seed", 0);
    cfg.pipeline.radar = parse_radar(view.required_object("radar"));
    cfg.pipeline.radar.rng_seed = cfg.seed;
    cfg.pipeline.motion =
        parse_motion(view.required_object("motion"), path.parent_path());

    const std::string path_name = view.text("path", "direct_baseband");
    if (path_name == "direct_baseband")
        cfg.pipeline.path = SignalPath::direct_baseband;
    else if (path_name == "digital_if")
        cfg.pipeline.path = SignalPath::digital_if;
    else
        throw ConfigError("path must be direct_baseband or digital_if");

    if (auto sub = view.object("if_params"))
        cfg.pipeline.if_params = parse_if_params(*sub);
    if (auto sub = view.object("gd")) cfg.pipeline.gd = parse_gd(*sub);

    cfg.pipeline.duration = view.number("duration", cfg.pipeline.duration);
    cfg.pipeline.baseband_rate =
        view.number("baseband_rate", cfg.pipeline.baseband_rate);
    cfg.pipeline.n_segments = static_cast<std::size_t>(
        view.integer("n_segments", cfg.pipeline.n_segments));

    const std::string method = view.text("demod_method", "dacm");
    if (method == "arctangent")
        cfg.pipeline.demod_method = DemodSelection::arctangent;
    else if (method == "dacm")
        cfg.pipeline.demod_method = DemodSelection::dacm;
    else if (method == "both")
        cfg.pipeline.demod_method = DemodSelection::both;
    else
        throw ConfigError(
            "demod_method must be arctangent, dacm, or both");

    const auto band = view.number_pair(
        "search_band",
        {cfg.pipeline.search_band.lo, cfg.pipeline.search_band.hi});
    cfg.pipeline.search_band = Band{band[0], band[1]};

    if (view.has("input")) cfg.input = path.parent_path() /
                                       view.required_text("input");
    view.finish();
    return cfg;
}

}  // namespace radarlab
