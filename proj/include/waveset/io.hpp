#ifndef WAVESET_IO_HPP
#define WAVESET_IO_HPP

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "waveset/construct.hpp"
#include "waveset/dilation.hpp"
#include "waveset/geometry.hpp"
#include "waveset/verify.hpp"

namespace waveset {

using json = nlohmann::json;

struct config_error : error {
    using error::error;
};

/// Round to 12 significant digits (report mass convention).
double sig12(double v);

// region literal: list of polygons, each a CCW list of [x, y] pairs
json region_to_json(const Region& r);
Region region_from_json(const json& j, const std::string& key_path,
                        const Tolerances& tol = default_tolerances());

json mat2_to_json(const Mat2& m);
Mat2 mat2_from_json(const json& j, const std::string& key_path);

json dilation_spec_to_json(const DilationSpec& spec);
DilationSpec dilation_spec_from_json(const json& j, const std::string& key_path);

json lattice_to_json(const Lattice& lat);
Lattice lattice_from_json(const json& j, const std::string& key_path);

json tiling_report_to_json(const TilingReport& rep);
json spectral_report_to_json(const SpectralReport& rep);
json wavelet_report_to_json(const WaveletReport& rep);
json trace_to_json(const ConstructionTrace& trace);

// ---------------------------------------------------------------------------
// job configuration

struct JobConfig {
    std::string command;  // construct | verify | render | demo
    std::string construction_name;
    json construction_params = json::object();
    std::optional<DilationSpec> dilation;
    std::optional<Lattice> lattice;
    std::map<std::string, Region> regions;
    std::map<std::string, double> tolerances;
    std::map<std::string, int> truncations;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> output_paths;
    std::vector<std::string> checks;  // optional explicit check list
    // geometric tolerances, overridable via the tolerances map with keys
    // eps_geom, eps_area, eps_det, eps_phase
    Tolerances geom;

    double tolerance(const std::string& name, double fallback) const;
    int truncation(const std::string& name, int fallback) const;
    const Region* region(const std::string& name) const;
};

JobConfig parse_config(const json& j);
JobConfig load_config(const std::string& path);
json config_to_json(const JobConfig& cfg);
/// Canonical serialization (sorted keys, two-space indent, trailing newline);
/// serialize(load(x)) is byte-identical for canonical input.
std::string serialize_config(const JobConfig& cfg);

}  // namespace waveset

#endif
