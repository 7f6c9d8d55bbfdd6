#include "waveset/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace waveset {

double sig12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw config_error("config error at '" + path + "': " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path.empty() ? key : path + "." + key,
                                                "missing key \"" + key + "\"");
    return j.at(key);
}

double need_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

}  // namespace

json region_to_json(const Region& r) {
    json loops = json::array();
    for (const ConvexPolygon& p : r.pieces()) {
        json loop = json::array();
        for (const Point& v : p.vertices()) loop.push_back(json::array({v.x, v.y}));
        loops.push_back(std::move(loop));
    }
    return loops;
}

Region region_from_json(const json& j, const std::string& key_path, const Tolerances& tol) {
    if (!j.is_array()) fail(key_path, "region literal must be a list of polygons");
    std::vector<std::vector<Point>> loops;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& loop = j[i];
        if (!loop.is_array() || loop.size() < 3) {
            fail(key_path + "[" + std::to_string(i) + "]", "polygon needs >= 3 [x,y] vertices");
        }
        std::vector<Point> pts;
        for (std::size_t v = 0; v < loop.size(); ++v) {
            const json& pt = loop[v];
            if (!pt.is_array() || pt.size() != 2) {
                fail(key_path + "[" + std::to_string(i) + "][" + std::to_string(v) + "]",
                     "vertex must be [x, y]");
            }
            pts.push_back({need_number(pt[0], key_path), need_number(pt[1], key_path)});
        }
        loops.push_back(std::move(pts));
    }
    try {
        return Region::from_vertex_loops(loops, tol);
    } catch (const error& e) {
        fail(key_path, e.what());
    }
}

json mat2_to_json(const Mat2& m) {
    return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})});
}

Mat2 mat2_from_json(const json& j, const std::string& key_path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2) {
        fail(key_path, "matrix must be 2x2 row-major");
    }
    return {need_number(j[0][0], key_path), need_number(j[0][1], key_path),
            need_number(j[1][0], key_path), need_number(j[1][1], key_path)};
}

json dilation_spec_to_json(const DilationSpec& spec) {
    json extras = json::array();
    for (const Mat2& m : spec.extra_factors) extras.push_back(mat2_to_json(m));
    return json{{"rotation_order", spec.rotation_order},
                {"expansive_base", mat2_to_json(spec.expansive_base)},
                {"power_range", json::array({spec.n_min, spec.n_max})},
                {"extra_factors", extras},
                {"order", spec.order == FactorOrder::RotationsThenPowers
                              ? "rotations-then-powers"
                              : "powers-then-rotations"}};
}

DilationSpec dilation_spec_from_json(const json& j, const std::string& key_path) {
    DilationSpec spec;
    spec.rotation_order = need(j, "rotation_order", key_path).get<int>();
    if (spec.rotation_order < 1) fail(key_path + ".rotation_order", "must be >= 1");
    spec.expansive_base =
        mat2_from_json(need(j, "expansive_base", key_path), key_path + ".expansive_base");
    const json& pr = need(j, "power_range", key_path);
    if (!pr.is_array() || pr.size() != 2) fail(key_path + ".power_range", "must be [lo, hi]");
    spec.n_min = pr[0].get<int>();
    spec.n_max = pr[1].get<int>();
    if (spec.n_min > spec.n_max) fail(key_path + ".power_range", "lo must not exceed hi");
    if (j.contains("extra_factors")) {
        for (std::size_t i = 0; i < j["extra_factors"].size(); ++i) {
            spec.extra_factors.push_back(mat2_from_json(
                j["extra_factors"][i], key_path + ".extra_factors[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("order")) {
        const std::string o = j["order"].get<std::string>();
        if (o == "rotations-then-powers") {
            spec.order = FactorOrder::RotationsThenPowers;
        } else if (o == "powers-then-rotations") {
            spec.order = FactorOrder::PowersThenRotations;
        } else {
            fail(key_path + ".order", "unknown order convention \"" + o + "\"");
        }
    }
    return spec;
}

json lattice_to_json(const Lattice& lat) { return json{{"basis", mat2_to_json(lat.basis)}}; }

Lattice lattice_from_json(const json& j, const std::string& key_path) {
    Lattice lat;
    lat.basis = mat2_from_json(need(j, "basis", key_path), key_path + ".basis");
    if (std::abs(lat.basis.det()) <= 1e-12) fail(key_path + ".basis", "basis is singular");
    return lat;
}

json tiling_report_to_json(const TilingReport& rep) {
    return json{{"kind", "tiling"},
                {"masses",
                 json{{"total_overlap", sig12(rep.total_overlap)},
                      {"max_pairwise_overlap", sig12(rep.max_pairwise_overlap)},
                      {"gap_area", sig12(rep.gap_area)},
                      {"excluded_area", sig12(rep.excluded_area)}}},
                {"window_area", sig12(rep.window_area)},
                {"copies", rep.copies},
                {"truncation", rep.truncation},
                {"overlap_tol", rep.overlap_tol},
                {"gap_tol", rep.gap_tol},
                {"pass", rep.pass}};
}

json spectral_report_to_json(const SpectralReport& rep) {
    json out{{"kind", "spectral"},
             {"route", rep.route == SpectralRoute::FugledeTiling ? "fuglede-tiling"
                                                                 : "gram-matrix"},
             {"masses",
              json{{"max_offdiag", sig12(rep.max_offdiag)},
                   {"diag_deviation", sig12(rep.diag_deviation)}}},
             {"lattice_truncation", rep.lattice_truncation},
             {"tol", rep.tol},
             {"pass", rep.pass}};
    if (rep.tiling) out["tiling"] = tiling_report_to_json(*rep.tiling);
    return out;
}

json wavelet_report_to_json(const WaveletReport& rep) {
    json out{{"kind", "wavelet-system"},
             {"masses", json{{"cross_dilation_overlap", sig12(rep.cross_dilation_overlap)}}},
             {"tol", rep.tol},
             {"pass", rep.pass},
             {"dilation_count", rep.same_dilation_gram.size()}};
    if (!rep.same_dilation_gram.empty()) {
        out["gram"] = spectral_report_to_json(rep.same_dilation_gram.front());
    }
    if (rep.parseval_error) out["masses"]["parseval_error"] = sig12(*rep.parseval_error);
    json freq = json::array();
    json time = json::array();
    for (const Mat2& d : rep.frequency_family) freq.push_back(mat2_to_json(d));
    for (const Mat2& d : rep.time_domain_family) time.push_back(mat2_to_json(d));
    out["frequency_family"] = freq;
    out["time_domain_family"] = time;
    return out;
}

json trace_to_json(const ConstructionTrace& trace) {
    json steps = json::array();
    for (const ExchangeStep& s : trace.steps) {
        steps.push_back(json{{"iteration", s.iteration},
                             {"piece", region_to_json(s.piece)},
                             {"piece_area", sig12(s.piece.area())},
                             {"translation", json::array({s.translation.x, s.translation.y})},
                             {"dilation_index", s.dilation_index},
                             {"dilation_power", s.dilation_power},
                             {"dilation", mat2_to_json(s.dilation)}});
    }
    return json{{"construction", trace.construction},
                {"steps", steps},
                {"residual_area", sig12(trace.residual_area)},
                {"result", region_to_json(trace.result)},
                {"result_area", sig12(trace.result.area())},
                {"piece_count", trace.result.piece_count()},
                {"stages", trace.stages},
                {"converged", trace.converged},
                {"unconsumed_f_area", sig12(trace.unconsumed_f_area)},
                {"family", dilation_spec_to_json(trace.family)},
                {"lattice", lattice_to_json(trace.lattice)}};
}

// ---------------------------------------------------------------------------

double JobConfig::tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

int JobConfig::truncation(const std::string& name, int fallback) const {
    auto it = truncations.find(name);
    return it == truncations.end() ? fallback : it->second;
}

const Region* JobConfig::region(const std::string& name) const {
    auto it = regions.find(name);
    return it == regions.end() ? nullptr : &it->second;
}

JobConfig parse_config(const json& j) {
    if (!j.is_object()) throw config_error("config error at '': document must be an object");
    JobConfig cfg;
    cfg.command = need(j, "command", "").get<std::string>();
    if (cfg.command != "construct" && cfg.command != "verify" && cfg.command != "render" &&
        cfg.command != "demo") {
        fail("command", "must be one of construct|verify|render|demo");
    }
    if (j.contains("construction")) {
        const json& c = j["construction"];
        cfg.construction_name = need(c, "name", "construction").get<std::string>();
        cfg.construction_params = c;
        cfg.construction_params.erase("name");
    }
    if (cfg.command == "construct" && cfg.construction_name.empty()) {
        fail("construction", "missing key \"construction\"");
    }
    if (j.contains("dilation")) {
        cfg.dilation = dilation_spec_from_json(j["dilation"], "dilation");
    }
    if (j.contains("lattice")) {
        cfg.lattice = lattice_from_json(j["lattice"], "lattice");
    } else if (cfg.command == "construct" || cfg.command == "verify") {
        fail("lattice", "missing key \"lattice\"");
    }
    if (j.contains("tolerances")) {
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
            const double v = need_number(it.value(), "tolerances." + it.key());
            if (v <= 0.0) fail("tolerances." + it.key(), "tolerance must be positive");
            cfg.tolerances.emplace(it.key(), v);
        }
    }
    cfg.geom.geom = cfg.tolerance("eps_geom", cfg.geom.geom);
    cfg.geom.area = cfg.tolerance("eps_area", cfg.geom.area);
    cfg.geom.det = cfg.tolerance("eps_det", cfg.geom.det);
    cfg.geom.phase = cfg.tolerance("eps_phase", cfg.geom.phase);
    if (j.contains("regions")) {
        for (auto it = j["regions"].begin(); it != j["regions"].end(); ++it) {
            cfg.regions.emplace(it.key(),
                                region_from_json(it.value(), "regions." + it.key(), cfg.geom));
        }
    }
    if (j.contains("truncations")) {
        for (auto it = j["truncations"].begin(); it != j["truncations"].end(); ++it) {
            cfg.truncations.emplace(it.key(), it.value().get<int>());
        }
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_paths")) {
        for (auto it = j["output_paths"].begin(); it != j["output_paths"].end(); ++it) {
            cfg.output_paths.emplace(it.key(), it.value().get<std::string>());
        }
    }
    if (j.contains("checks")) {
        for (const json& c : j["checks"]) cfg.checks.push_back(c.get<std::string>());
    }
    return cfg;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config error at '" + path + "': cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config error at '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json config_to_json(const JobConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    if (!cfg.construction_name.empty()) {
        json c = cfg.construction_params;
        c["name"] = cfg.construction_name;
        j["construction"] = c;
    }
    if (cfg.dilation) j["dilation"] = dilation_spec_to_json(*cfg.dilation);
    if (cfg.lattice) j["lattice"] = lattice_to_json(*cfg.lattice);
    if (!cfg.regions.empty()) {
        json r = json::object();
        for (const auto& [name, region] : cfg.regions) r[name] = region_to_json(region);
        j["regions"] = r;
    }
    if (!cfg.tolerances.empty()) j["tolerances"] = cfg.tolerances;
    if (!cfg.truncations.empty()) j["truncations"] = cfg.truncations;
    j["seed"] = cfg.seed;
    if (!cfg.output_paths.empty()) j["output_paths"] = cfg.output_paths;
    if (!cfg.checks.empty()) j["checks"] = cfg.checks;
    return j;
}

std::string serialize_config(const JobConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

}  // namespace waveset
