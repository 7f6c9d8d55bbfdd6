#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "waveset/demo.hpp"
#include "waveset/io.hpp"
#include "waveset/svg.hpp"

namespace {

using waveset::json;

constexpr const char* kVersion = "0.2.0";
constexpr int kExitVerifyFail = 1;
constexpr int kExitConstructionError = 2;
constexpr int kExitConfigError = 3;

int max_threads() {
    // WAVESET_THREADS caps internal parallelism; evaluation is ordered, so
    // the cap never changes any output
    if (const char* env = std::getenv("WAVESET_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void write_text(const std::string& path, const std::string& body) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw waveset::error("cannot write '" + path + "'");
    out << body;
}

json base_report(const waveset::JobConfig& cfg) {
    json rep;
    rep["config"] = waveset::config_to_json(cfg);
    rep["version"] = kVersion;
    rep["reports"] = json::array();
    return rep;
}

void finish_report(json& rep, bool pass, double wall_time, const waveset::JobConfig& cfg,
                   const std::string& default_path) {
    rep["verdict"] = pass ? "pass" : "fail";
    rep["wall_time"] = wall_time;
    std::string path = default_path;
    if (auto it = cfg.output_paths.find("report"); it != cfg.output_paths.end()) path = it->second;
    if (!path.empty()) write_text(path, rep.dump(2) + "\n");
    std::cout << rep["verdict"].get<std::string>() << " (report: " << (path.empty() ? "-" : path)
              << ")\n";
}

waveset::ConstructionTrace run_construction(const waveset::JobConfig& cfg) {
    using namespace waveset;
    const json& p = cfg.construction_params;
    const std::string& name = cfg.construction_name;
    if (name == "diag-rot") {
        return construct_diag_rot(p.value("J", 10));
    }
    if (name == "rot-scale") {
        return construct_rot_scale(p.value("a", 2.0), p.value("m", 4),
                                   p.value("max_iters", 48), p.value("tol", 1e-5));
    }
    if (name == "dls-exchange") {
        const Region* E = cfg.region("E");
        const Region* F = cfg.region("F");
        if (!E || !F) throw config_error("config error at 'regions': dls-exchange needs E and F");
        if (!cfg.dilation) throw config_error("config error at 'dilation': missing key");
        return dls_exchange(*E, *F, *cfg.dilation, cfg.lattice.value_or(Lattice{}),
                            p.value("max_iters", 48), p.value("tol", 1e-6));
    }
    if (name == "exwave") {
        const Region* E = cfg.region("E");
        const Region* window = cfg.region("window");
        if (!E || !window) {
            throw config_error("config error at 'regions': exwave needs E and window");
        }
        if (!cfg.dilation) throw config_error("config error at 'dilation': missing key");
        ExwaveResult res = exwave_pipeline(*E, *cfg.dilation, cfg.lattice.value_or(Lattice{}),
                                           *window, p.value("tol", 1e-4));
        return res.trace;
    }
    throw config_error("config error at 'construction.name': unknown construction \"" + name +
                       "\"");
}

int cmd_construct(const waveset::JobConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    json rep = base_report(cfg);
    waveset::ConstructionTrace trace = run_construction(cfg);
    rep["trace"] = waveset::trace_to_json(trace);
    if (auto it = cfg.output_paths.find("svg"); it != cfg.output_paths.end()) {
        waveset::render_svg({{trace.result, cfg.construction_name}}, it->second);
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    finish_report(rep, true, dt, cfg, "construct_report.json");
    return 0;
}

int cmd_verify(const waveset::JobConfig& cfg) {
    using namespace waveset;
    const auto t0 = std::chrono::steady_clock::now();
    json rep = base_report(cfg);
    const Region* omega = cfg.region("omega");
    if (!omega) throw config_error("config error at 'regions.omega': missing key");
    const Region* window = cfg.region("window");
    const Region* target = cfg.region("target");
    const int K = cfg.truncation("K", 3);

    auto wants = [&cfg](const std::string& name, bool inferred) {
        if (cfg.checks.empty()) return inferred;
        return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
    };

    bool pass = true;
    if (wants("additive", cfg.lattice.has_value() && window != nullptr)) {
        TilingReport t = check_additive_tiling(*omega, *cfg.lattice, *window,
                                               cfg.tolerance("additive", 1e-6),
                                               cfg.tolerance("additive_gap", -1.0), Region(),
                                               cfg.geom);
        json jt = tiling_report_to_json(t);
        jt["kind"] = "additive-tiling";
        rep["reports"].push_back(jt);
        pass = pass && t.pass;
    }
    if (wants("multiplicative", cfg.dilation.has_value() && window != nullptr)) {
        const EnumeratedFamily fam = enumerate_dilations(*cfg.dilation);
        TilingReport t = check_mult_tiling(*omega, fam.matrices, *window,
                                           cfg.tolerance("multiplicative", 1e-6),
                                           cfg.tolerance("multiplicative_gap", -1.0), Region(),
                                           cfg.geom);
        json jt = tiling_report_to_json(t);
        jt["kind"] = "multiplicative-tiling";
        rep["reports"].push_back(jt);
        pass = pass && t.pass;
    }
    if (wants("spectral", cfg.lattice.has_value())) {
        SpectralReport g = check_spectral(*omega, *cfg.lattice, SpectralRoute::GramMatrix, K,
                                          cfg.tolerance("spectral", 1e-4), cfg.geom);
        rep["reports"].push_back(spectral_report_to_json(g));
        pass = pass && g.pass;
    }
    if (wants("wavelet", cfg.dilation.has_value() && cfg.lattice.has_value() &&
                             window != nullptr)) {
        const EnumeratedFamily fam = enumerate_dilations(*cfg.dilation);
        WaveletReport wr = check_wavelet_system(*omega, fam.matrices, *cfg.lattice, K, *window,
                                                cfg.tolerance("wavelet", 1e-3), cfg.geom);
        rep["reports"].push_back(wavelet_report_to_json(wr));
        pass = pass && wr.pass;
    }
    if (wants("parseval", cfg.dilation.has_value() && cfg.lattice.has_value() &&
                              target != nullptr)) {
        const EnumeratedFamily fam = enumerate_dilations(*cfg.dilation);
        const double defect = parseval_test(*omega, fam.matrices, *cfg.lattice, *target,
                                            cfg.truncation("parseval_K", 20), cfg.geom);
        const double tol = cfg.tolerance("parseval", 0.02);
        rep["reports"].push_back(json{{"kind", "parseval"},
                                      {"masses", json{{"defect", sig12(defect)}}},
                                      {"tol", tol},
                                      {"pass", defect <= tol}});
        pass = pass && defect <= tol;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    finish_report(rep, pass, dt, cfg, "verify_report.json");
    return pass ? 0 : kExitVerifyFail;
}

int cmd_render(const waveset::JobConfig& cfg) {
    using namespace waveset;
    std::vector<SvgLayer> layers;
    for (const auto& [name, region] : cfg.regions) layers.push_back({region, name});
    std::string path = "render.svg";
    if (auto it = cfg.output_paths.find("svg"); it != cfg.output_paths.end()) path = it->second;
    render_svg(layers, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_demo(const std::string& which, int J, double tol, const std::string& out_dir) {
    using namespace waveset;
    std::filesystem::create_directories(out_dir);
    JobConfig cfg;
    cfg.command = "demo";
    cfg.construction_name = which;
    json rep;
    rep["version"] = kVersion;
    rep["reports"] = json::array();
    bool pass = false;
    double dt = 0.0;
    if (which == "example-3-2") {
        cfg.construction_params = json{{"J", J}};
        Example32Result r = demo_example_32(J);
        json ja = tiling_report_to_json(r.additive);
        ja["kind"] = "additive-tiling";
        json jm = tiling_report_to_json(r.multiplicative);
        jm["kind"] = "multiplicative-tiling";
        rep["reports"].push_back(ja);
        rep["reports"].push_back(jm);
        rep["reports"].push_back(spectral_report_to_json(r.spectral_gram));
        rep["reports"].push_back(spectral_report_to_json(r.spectral_fuglede));
        rep["reports"].push_back(wavelet_report_to_json(r.wavelet));
        rep["trace"] = trace_to_json(r.trace);
        render_svg({{r.trace.result, "W"}}, out_dir + "/example-3-2.svg");
        pass = r.pass;
        dt = r.seconds;
    } else if (which == "example-3-1") {
        cfg.construction_params = json{{"a", 2.0}, {"m", 4}, {"tol", tol}};
        Example31Result r = demo_example_31(2.0, 4, tol);
        json ja = tiling_report_to_json(r.additive);
        ja["kind"] = "additive-tiling";
        json jm = tiling_report_to_json(r.sector_mult);
        jm["kind"] = "sector-multiplicative-tiling";
        rep["reports"].push_back(ja);
        rep["reports"].push_back(jm);
        rep["trace"] = trace_to_json(r.trace);
        render_svg({{r.trace.result, "W"}}, out_dir + "/example-3-1.svg");
        pass = r.pass;
        dt = r.seconds;
    } else {
        throw waveset::config_error("config error at 'demo': unknown example \"" + which + "\"");
    }
    rep["config"] = config_to_json(cfg);
    rep["verdict"] = pass ? "pass" : "fail";
    rep["wall_time"] = dt;
    write_text(out_dir + "/" + which + "-report.json", rep.dump(2) + "\n");
    std::cout << which << ": " << (pass ? "pass" : "fail") << " in " << dt << " s\n";
    return pass ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"waveset: construct and verify planar wavelet sets"};
    app.set_version_flag("--version", kVersion);
    (void)max_threads();

    std::string config_path;
    auto* construct = app.add_subcommand("construct", "run a construction from a config file");
    construct->add_option("--config", config_path, "JSON job config")->required();
    auto* verify = app.add_subcommand("verify", "run verification checks from a config file");
    verify->add_option("--config", config_path, "JSON job config")->required();
    auto* render = app.add_subcommand("render", "render configured regions to SVG");
    render->add_option("--config", config_path, "JSON job config")->required();

    std::string demo_name;
    int demo_J = 10;
    double demo_tol = 1e-5;
    std::string demo_out = "out";
    auto* demo = app.add_subcommand("demo", "run a bundled end-to-end example");
    demo->add_option("example", demo_name, "example-3-1 | example-3-2")->required();
    demo->add_option("--J", demo_J, "truncation depth (example-3-2)");
    demo->add_option("--tol", demo_tol, "residual tolerance (example-3-1)");
    demo->add_option("--out", demo_out, "output directory");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) return cmd_construct(waveset::load_config(config_path));
        if (*verify) return cmd_verify(waveset::load_config(config_path));
        if (*render) return cmd_render(waveset::load_config(config_path));
        if (*demo) return cmd_demo(demo_name, demo_J, demo_tol, demo_out);
    } catch (const waveset::config_error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const waveset::construction_error& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kExitConstructionError;
    } catch (const waveset::precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitConstructionError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstructionError;
    }
    return 0;
}
