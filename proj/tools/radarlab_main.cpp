// radarlab: command-line front end for the Doppler radar simulation toolkit.
//
// Subcommands mirror the processing stages: synth (baseband synthesis), ddc
// (digital-IF synthesis + down-conversion), fitdc (DC-offset circle fit),
// demod (displacement reconstruction), analyze (segment spectra), pipeline
// (the full chain). Every run writes its outputs plus a summary.json and,
// last, a manifest.json into --out. Exit codes: 0 success, 1 runtime/data
// error, 2 usage/config error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "radarlab/config.hpp"
#include "radarlab/csv.hpp"
#include "radarlab/manifest.hpp"
#include "radarlab/pipeline.hpp"
#include "radarlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace radarlab;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> method;
    std::optional<std::string> input;
};

/// Collects emitted files so the manifest can list all of them, and writes
/// the manifest last.
class Emitter {
public:
    Emitter(const CommonArgs& args, std::uint64_t seed)
        : out_dir_(args.out_dir), seed_(seed) {
        manifest_.config_path = args.config_path;
        manifest_.output_dir = args.out_dir;
        manifest_.seed = seed;
        fs::create_directories(out_dir_);
    }

    void table(const std::string& name, const std::string& role,
               const CsvTable& t) {
        write_csv(out_dir_ / name, t);
        manifest_.emitted_files.emplace_back(name, role);
    }

    void summary(const ordered_json& doc) {
        const auto path = out_dir_ / "summary.json";
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open for writing: " +
                                     path.string());
        out << doc.dump(2) << '\n';
        if (!out) throw std::runtime_error("write failed: " + path.string());
        manifest_.emitted_files.emplace_back("summary.json", "summary");
    }

    void finish() { write_manifest(out_dir_, manifest_); }

private:
    fs::path out_dir_;
    std::uint64_t seed_;
    RunManifest manifest_;
};

ToolConfig load_tool_config(const CommonArgs& args) {
    ToolConfig cfg = load_config(args.config_path);
    if (args.seed) {
        cfg.seed = *args.seed;
        cfg.pipeline.radar.rng_seed = *args.seed;
    }
    if (args.method) {
        if (*args.method == "arctangent")
            cfg.pipeline.demod_method = DemodSelection::arctangent;
        else if (*args.method == "dacm")
            cfg.pipeline.demod_method = DemodSelection::dacm;
        else if (*args.method == "both")
            cfg.pipeline.demod_method = DemodSelection::both;
        else
            throw ConfigError("--method must be arctangent, dacm, or both");
    }
    if (args.input) cfg.input = fs::path(*args.input);
    return cfg;
}

fs::path required_input(const ToolConfig& cfg, const char* command) {
    if (!cfg.input)
        throw ConfigError(std::string(command) +
                          " needs an input file: pass --in or set 'input' "
                          "in the config");
    return *cfg.input;
}

const char* method_name(DemodMethod m) {
    return m == DemodMethod::dacm ? "dacm" : "arctangent";
}

ordered_json fit_json(const CircleFit& fit) {
    ordered_json j;
    j["center_i"] = fit.center_i;
    j["center_q"] = fit.center_q;
    j["radius"] = fit.radius;
    j["residual_rms"] = fit.residual_rms;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["arc_coverage_deg"] = fit.arc_coverage_deg;
    j["short_arc"] = fit.short_arc();
    j["degenerate"] = fit.degenerate;
    return j;
}

ordered_json segment_json(const SpectrumReport& rep) {
    ordered_json j;
    j["segment_index"] = rep.segment_index;
    j["peak_freq_hz"] = rep.peak_freq;
    j["peak_amplitude_m"] = rep.peak_amplitude;
    j["snr_db"] = rep.snr_db;
    j["harmonic_levels_db"] = rep.harmonic_levels_db;
    return j;
}

void print_segments(const std::vector<SpectrumReport>& segments) {
    for (const auto& rep : segments) {
        std::printf("  segment %d: peak %.4f Hz, amplitude %.3f um",
                    rep.segment_index, rep.peak_freq,
                    rep.peak_amplitude * 1e6);
        if (rep.snr_defined) std::printf(", SNR %.1f dB", rep.snr_db);
        std::printf("\n");
    }
}

double rms_difference(const std::vector<double>& a,
                      const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

int cmd_synth(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const MotionTrace truth = ground_truth_motion(cfg.pipeline);
    const IQRecord iq = synthesize_iq(truth, cfg.pipeline.radar);
    emit.table("iq.csv", "iq", iq_table(iq));
    emit.table("truth.csv", "truth", motion_table(truth));

    ordered_json summary;
    summary["command"] = "synth";
    summary["rows"] = iq.i_samples.size();
    summary["sample_rate_hz"] = iq.sample_rate;
    summary["duration_s"] =
        static_cast<double>(iq.i_samples.size()) / iq.sample_rate;
    emit.summary(summary);
    emit.finish();

    std::printf("synth: %zu samples at %g Hz -> %s\n", iq.i_samples.size(),
                iq.sample_rate, args.out_dir.c_str());
    return 0;
}

int cmd_ddc(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const MotionTrace truth = ground_truth_motion(cfg.pipeline);
    const IfRecord ifrec =
        if_modulate(truth, cfg.pipeline.radar, cfg.pipeline.if_params);
    const DdcResult ddc = ddc_fs4(ifrec, cfg.pipeline.if_params);

    emit.table("if.csv", "if", if_table(ifrec));
    emit.table("iq.csv", "iq", iq_table(ddc.iq));
    emit.table("truth.csv", "truth", motion_table(truth));

    ordered_json summary;
    summary["command"] = "ddc";
    summary["if_rows"] = ifrec.samples.size();
    summary["rows"] = ddc.iq.i_samples.size();
    summary["sample_rate_hz"] = ddc.iq.sample_rate;
    summary["transient_samples"] = ddc.transient;
    emit.summary(summary);
    emit.finish();

    std::printf("ddc: %zu IF samples -> %zu baseband samples (%zu transient "
                "per end) -> %s\n",
                ifrec.samples.size(), ddc.iq.i_samples.size(), ddc.transient,
                args.out_dir.c_str());
    return 0;
}

int cmd_fitdc(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const IQRecord iq = to_iq_record(read_csv(required_input(cfg, "fitdc")));
    const CircleFit fit = gd_refine(iq, kasa_init(iq), cfg.pipeline.gd);
    emit.table("iq_centered.csv", "iq_centered", iq_table(remove_dc(iq, fit)));

    ordered_json summary;
    summary["command"] = "fitdc";
    summary["fit"] = fit_json(fit);
    emit.summary(summary);
    emit.finish();

    std::printf("fitdc: centre (%.6g, %.6g), radius %.6g, residual %.3g, "
                "%zu iterations%s\n",
                fit.center_i, fit.center_q, fit.radius, fit.residual_rms,
                fit.iterations, fit.short_arc() ? " [short arc]" : "");
    return 0;
}

int cmd_demod(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const IQRecord iq = to_iq_record(read_csv(required_input(cfg, "demod")));
    const double lambda = cfg.pipeline.radar.wavelength();

    std::vector<DisplacementEstimate> estimates;
    if (cfg.pipeline.demod_method == DemodSelection::dacm ||
        cfg.pipeline.demod_method == DemodSelection::both)
        estimates.push_back(dacm_demod(iq, lambda));
    if (cfg.pipeline.demod_method == DemodSelection::arctangent ||
        cfg.pipeline.demod_method == DemodSelection::both)
        estimates.push_back(arctan_demod(iq, lambda));

    ordered_json summary;
    summary["command"] = "demod";
    summary["methods"] = ordered_json::array();
    for (const auto& est : estimates) {
        const std::string name = method_name(est.method);
        emit.table("displacement_" + name + ".csv", "displacement",
                   displacement_table(est));
        ordered_json m;
        m["method"] = name;
        m["samples"] = est.displacements.size();
        m["ambiguous_steps"] = est.ambiguous_steps.size();
        summary["methods"].push_back(m);
    }
    if (estimates.size() == 2) {
        const double diff = rms_difference(estimates[0].displacements,
                                           estimates[1].displacements);
        summary["rms_difference_m"] = diff;
        std::printf("demod: cross-method RMS difference %.3g m\n", diff);
    }
    emit.summary(summary);
    emit.finish();

    std::printf("demod: %zu samples, %zu method(s) -> %s\n",
                iq.i_samples.size(), estimates.size(), args.out_dir.c_str());
    return 0;
}

int cmd_analyze(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const DisplacementEstimate est =
        to_displacement(read_csv(required_input(cfg, "analyze")));
    const auto segments = segment_analysis(est, cfg.pipeline.n_segments,
                                           cfg.pipeline.search_band);

    ordered_json summary;
    summary["command"] = "analyze";
    summary["segments"] = ordered_json::array();
    for (const auto& rep : segments) {
        emit.table("spectrum_seg" + std::to_string(rep.segment_index + 1) +
                       ".csv",
                   "spectrum", spectrum_table(rep));
        summary["segments"].push_back(segment_json(rep));
    }
    emit.summary(summary);
    emit.finish();

    std::printf("analyze: %zu segments\n", segments.size());
    print_segments(segments);
    return 0;
}

int cmd_pipeline(const CommonArgs& args) {
    const ToolConfig cfg = load_tool_config(args);
    Emitter emit(args, cfg.seed);

    const PipelineReport report = run_pipeline(cfg.pipeline);

    emit.table("iq.csv", "iq", iq_table(report.iq));
    emit.table("truth.csv", "truth", motion_table(report.truth));
    for (const auto& est : report.displacement)
        emit.table(std::string("displacement_") + method_name(est.method) +
                       ".csv",
                   "displacement", displacement_table(est));
    for (const auto& rep : report.segments)
        emit.table("spectrum_seg" + std::to_string(rep.segment_index + 1) +
                       ".csv",
                   "spectrum", spectrum_table(rep));

    ordered_json summary;
    summary["command"] = "pipeline";
    summary["fit"] = fit_json(report.circle_fit);
    summary["segments"] = ordered_json::array();
    for (const auto& rep : report.segments)
        summary["segments"].push_back(segment_json(rep));
    if (report.displacement.size() == 2)
        summary["rms_difference_m"] =
            rms_difference(report.displacement[0].displacements,
                           report.displacement[1].displacements);
    if (report.truth_metrics) {
        ordered_json t;
        t["rms_error_m"] = report.truth_metrics->rms_error;
        t["amplitude_errors"] = report.truth_metrics->amplitude_errors;
        t["freq_error_hz"] = report.truth_metrics->freq_error;
        summary["truth_metrics"] = t;
    }
    emit.summary(summary);
    emit.finish();

    std::printf("pipeline: fit centre (%.4g, %.4g) radius %.4g%s\n",
                report.circle_fit.center_i, report.circle_fit.center_q,
                report.circle_fit.radius,
                report.circle_fit.short_arc() ? " [short arc]" : "");
    print_segments(report.segments);
    if (report.truth_metrics)
        std::printf("  truth RMS error %.3g m\n",
                    report.truth_metrics->rms_error);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolVersion) +
                 " - continuous-wave Doppler radar simulation toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    const auto add_common = [&](CLI::App* cmd, bool takes_input) {
        cmd->add_option("--config", args.config_path, "JSON configuration")
            ->required();
        cmd->add_option("--out", args.out_dir, "output directory")->required();
        cmd->add_option("--seed", [&args](const CLI::results_t& res) {
            args.seed = std::stoull(res[0]);
            return true;
        }, "override the RNG seed");
        cmd->add_option("--method", [&args](const CLI::results_t& res) {
            args.method = res[0];
            return true;
        }, "demodulation method: arctangent|dacm|both");
        if (takes_input)
            cmd->add_option("--in", [&args](const CLI::results_t& res) {
                args.input = res[0];
                return true;
            }, "input CSV (overrides the config's 'input')");
    };

    add_common(app.add_subcommand("synth", "synthesize baseband I/Q"), false);
    add_common(app.add_subcommand(
                   "ddc", "synthesize via the digital-IF path and down-convert"),
               false);
    add_common(app.add_subcommand("fitdc", "estimate and remove DC offsets"),
               true);
    add_common(app.add_subcommand("demod", "reconstruct displacement"), true);
    add_common(app.add_subcommand("analyze", "segment spectra and SNR"), true);
    add_common(app.add_subcommand("pipeline", "run the full chain"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("synth")) return cmd_synth(args);
        if (app.got_subcommand("ddc")) return cmd_ddc(args);
        if (app.got_subcommand("fitdc")) return cmd_fitdc(args);
        if (app.got_subcommand("demod")) return cmd_demod(args);
        if (app.got_subcommand("analyze")) return cmd_analyze(args);
        if (app.got_subcommand("pipeline")) return cmd_pipeline(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
