// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Criterion 5's first clause
// is asserted against its analytic oracle and reported honestly; see the
// README's acceptance section for the expected verdicts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "waveset/demo.hpp"
#include "waveset/io.hpp"

using namespace waveset;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, bool expected_fail = false) {
    std::printf("CRITERION %d: %s%s — %s\n", criterion, pass ? "PASS" : "FAIL",
                (!pass && expected_fail) ? " (expected, see decisions ledger)" : "", detail.c_str());
    if (!pass && !expected_fail) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --------------------------------------------------------------------------
// criterion 1 + 2 + 5 share the J=10 construction

void criterion_1_example32(const Example32Result& r) {
    std::ostringstream os;
    bool pass = true;
    os << "additive overlap " << fmt(r.additive.total_overlap) << " gap "
       << fmt(r.additive.gap_area);
    pass = pass && r.additive.total_overlap <= 1e-6 && r.additive.gap_area <= 1e-4;
    os << "; mult overlap " << fmt(r.multiplicative.total_overlap) << " gap "
       << fmt(r.multiplicative.gap_area);
    pass = pass && r.multiplicative.total_overlap <= 1e-6 && r.multiplicative.gap_area <= 1e-3;
    os << "; gram offdiag " << fmt(r.spectral_gram.max_offdiag);
    pass = pass && r.spectral_gram.max_offdiag <= 1e-4;
    os << "; wavelet " << (r.wavelet.pass ? "pass" : "fail");
    pass = pass && r.wavelet.pass;
    os << "; " << fmt(r.seconds) << " s";
    pass = pass && r.seconds <= 60.0;
    report(1, pass, os.str());
}

void criterion_2_conservation() {
    bool pass = true;
    double j1_area = 0.0;
    for (int J = 1; J <= 12; ++J) {
        const ConstructionTrace t = construct_diag_rot(J);
        if (J == 1) j1_area = t.result.area();
        if (std::abs(t.result.area() + t.residual_area - 1.0) > 1e-9) pass = false;
    }
    const double j1_err = std::abs(j1_area - 8.0 / 9.0);
    pass = pass && j1_err <= 1e-12;
    report(2, pass,
           "area+residual = 1 within 1e-9 for J=1..12; |area(J=1) - 8/9| = " + fmt(j1_err));
}

void criterion_3_example31() {
    const Example31Result r = demo_example_31(2.0, 4, 1e-5);
    std::ostringstream os;
    bool pass = r.trace.converged && r.trace.residual_area <= 1e-5;
    os << "residual " << fmt(r.trace.residual_area);
    os << "; additive " << (r.additive.pass ? "pass" : "fail") << " (overlap "
       << fmt(r.additive.total_overlap) << ", gap " << fmt(r.additive.gap_area) << ")";
    pass = pass && r.additive.pass;
    os << "; sector mult " << (r.sector_mult.pass ? "pass" : "fail") << " (overlap "
       << fmt(r.sector_mult.total_overlap) << ", gap " << fmt(r.sector_mult.gap_area) << ")";
    pass = pass && r.sector_mult.pass;
    os << "; " << fmt(r.seconds) << " s";
    pass = pass && r.seconds <= 120.0;
    report(3, pass, os.str());
}

Region random_fundamental_domain(std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> uni(0.05, 0.9);
    Region domain = Region::rect(0, 0, 1, 1);
    const Point shifts[3] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    for (int swap = 0; swap < 3; ++swap) {
        const double x0 = uni(eng) * 0.6, y0 = uni(eng) * 0.6;
        const double w = 0.05 + 0.3 * uni(eng), h = 0.05 + 0.3 * uni(eng);
        const Region cut = region_intersect(Region::rect(x0, y0, x0 + w, y0 + h), domain);
        if (cut.empty()) continue;
        domain = region_union(region_subtract(domain, cut), translate(cut, shifts[swap]));
    }
    return domain;
}

void criterion_4_fuglede(const Region& w4, const Region& w8, const Region& w10) {
    const Lattice z2{};
    struct Case {
        std::string name;
        const Region* region;
    };
    const Region square = Region::rect(0, 0, 1, 1);
    const Region bad = Region::rect(0, 0, 1.5, 1);
    const Region random_fd = random_fundamental_domain(4242);
    const std::vector<Case> corpus = {{"unit-square", &square}, {"W(J=4)", &w4},
                                      {"W(J=8)", &w8},          {"W(J=10)", &w10},
                                      {"box-1.5x1", &bad},      {"random-domain", &random_fd}};
    bool pass = true;
    std::ostringstream os;
    for (const Case& c : corpus) {
        const SpectralReport g =
            check_spectral(*c.region, z2, SpectralRoute::GramMatrix, 3, 1e-3);
        const SpectralReport f =
            check_spectral(*c.region, z2, SpectralRoute::FugledeTiling, 3, 1e-3);
        if (g.pass != f.pass) {
            pass = false;
            os << c.name << " disagrees (gram " << g.pass << ", tiling " << f.pass << "); ";
        } else {
            os << c.name << (g.pass ? " both-pass; " : " both-fail; ");
        }
    }
    report(4, pass, os.str());
}

void criterion_5_parseval(const Region& w10) {
    const Lattice z2{};
    const Region target = Region::rect(1.6, 0.1, 1.9, 0.4);
    const EnumeratedFamily fam = enumerate_dilations(example32_dilations(8));
    const auto profile = parseval_profile(w10, fam.matrices, z2, target, 20);
    const double d20 = profile[20];
    const double d5 = profile[5];
    const bool decreasing = d20 < d5;
    const bool threshold = d20 <= 0.02;
    std::ostringstream os;
    os << "defect(K=20) = " << fmt(d20) << " (threshold 0.02), defect(K=5) = " << fmt(d5)
       << (decreasing ? ", decreasing" : ", not decreasing");
    // analytic oracle for the defect: product of 1-D truncated sinc energies
    auto axis_sum = [](int K) {
        double s = 0.09;
        for (int m = 1; m <= K; ++m) {
            const double sn = std::sin(0.3 * std::numbers::pi * m);
            s += 2.0 * sn * sn / (std::numbers::pi * std::numbers::pi * m * m);
        }
        return s;
    };
    const double oracle = std::abs(axis_sum(20) * axis_sum(20) / 0.09 - 1.0);
    const bool oracle_ok = std::abs(d20 - oracle) < 2e-3;
    if (!oracle_ok) {
        report(5, false, os.str() + "; ORACLE MISMATCH, expected " + fmt(oracle));
        return;
    }
    // the 2% clause cannot hold: the exact rectangle tail at K=20 is ~3.4%
    report(5, threshold && decreasing, os.str(), /*expected_fail=*/!threshold && decreasing);
}

void criterion_6_oracle_triangle() {
    const Region window = Region::rect(-2.5, -2.5, 2.5, 2.5);
    std::mt19937_64 eng(20260810);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::uniform_real_distribution<double> len(0.2, 1.2);
    std::uniform_int_distribution<int> npieces(1, 5);
    std::uniform_int_distribution<int> kind(0, 1);
    int raster_misses = 0;
    int mc_misses = 0;
    int cases = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Region r;
        const int n = npieces(eng);
        for (int i = 0; i < n; ++i) {
            const double x = uni(eng), y = uni(eng), w = len(eng), h = len(eng);
            Region piece;
            if (kind(eng) == 0) {
                piece = Region::rect(x, y, x + w, y + h);
            } else {
                auto tri = ConvexPolygon::make({{x, y}, {x + w, y}, {x + 0.4 * w, y + h}});
                if (!tri) continue;
                piece = Region({*tri});
            }
            r = region_union(r, region_intersect(piece, window));
        }
        if (r.empty()) continue;
        ++cases;
        const double exact = r.area();
        const double ras = raster_area(r, window, 2048);
        const double rbound = r.perimeter() * window.bbox().diameter() / 2048.0;
        if (std::abs(ras - exact) > rbound) ++raster_misses;
        const MonteCarloEstimate mc = monte_carlo_area(r, window, 1000000, 7000 + trial);
        if (std::abs(mc.estimate - exact) > 3.0 * mc.stderr_) ++mc_misses;
    }
    // the Monte Carlo bound is an ensemble statement: >= 99% of seeds within 3 sigma
    const bool pass = cases >= 95 && raster_misses == 0 && mc_misses <= 1;
    report(6, pass,
           std::to_string(cases) + " regions; raster misses " + std::to_string(raster_misses) +
               "; monte-carlo 3-sigma misses " + std::to_string(mc_misses) + "/100");
}

void criterion_7_refutation(const std::string& cli_path) {
    bool pass = true;
    std::ostringstream os;

    // non-tile additive failure via the CLI exit code
    if (!cli_path.empty()) {
        const std::string cfg_path = "acceptance_non_tile.json";
        {
            json cfg{{"command", "verify"},
                     {"lattice", lattice_to_json(Lattice{})},
                     {"regions",
                      {{"omega", region_to_json(Region::rect(0, 0, 1.5, 1))},
                       {"window", region_to_json(Region::rect(-2, -2, 2, 2))}}},
                     {"tolerances", {{"additive", 1e-6}}},
                     {"output_paths", {{"report", "acceptance_non_tile_report.json"}}}};
            std::ofstream out(cfg_path);
            out << cfg.dump(2) << "\n";
        }
        const int code = std::system((cli_path + " verify --config " + cfg_path +
                                      " > /dev/null 2>&1")
                                         .c_str());
        const int exit_code = WEXITSTATUS(code);
        os << "non-tile exit code " << exit_code;
        pass = pass && exit_code == 1;
    } else {
        os << "non-tile CLI check skipped (no --cli)";
        pass = false;
    }

    // non-direct product refutation
    const std::vector<Mat2> pm = {Mat2::identity(), Mat2::scalar(-1.0)};
    const bool direct = is_direct_product(pm, pm);
    os << "; {I,-I}x{I,-I} direct=" << direct;
    pass = pass && !direct;

    // non-expansive matrix: detected and fatal in the pipeline
    const Mat2 shear{1.0, 1.0, 0.0, 1.0};
    const bool exp = is_expansive(shear);
    os << "; shear expansive=" << exp;
    pass = pass && !exp;
    bool hypothesis_thrown = false;
    try {
        DilationSpec bad;
        bad.rotation_order = 4;
        bad.expansive_base = shear;
        bad.n_min = -4;
        bad.n_max = 4;
        exwave_pipeline(sector_annulus(2.0, 4, 0, 1), bad, Lattice{},
                        Region::rect(-4, -4, 4, 4), 1e-3);
    } catch (const hypothesis_error&) {
        hypothesis_thrown = true;
    }
    os << "; exwave hypothesis error=" << hypothesis_thrown;
    pass = pass && hypothesis_thrown;

    // overlapping dyadic family on the unit square
    std::vector<Mat2> powers = {Mat2::scalar(0.25), Mat2::scalar(0.5), Mat2::identity(),
                                Mat2::scalar(2.0)};
    const TilingReport t =
        check_mult_tiling(Region::rect(0, 0, 1, 1), powers, Region::rect(0, 0, 2, 2), 1e-6);
    os << "; dyadic-on-square overlap " << fmt(t.total_overlap) << " pass=" << t.pass;
    pass = pass && !t.pass && t.total_overlap >= 1.0;

    report(7, pass, os.str());
}

void criterion_8_composition(const Region& w10) {
    // N = union of A^n W over |n| <= 6; then {R^k N} must tile the window
    std::vector<Mat2> powers;
    for (int n = -6; n <= 6; ++n) powers.push_back(Mat2::diag(2, 3).pow(n));
    const InducedTile n_tile = induce_subspace_tile(w10, powers);
    std::vector<Mat2> rotations;
    for (int k = 0; k < 4; ++k) {
        rotations.push_back(Mat2::rotation(std::numbers::pi / 2 * k));
    }
    const Region window = region_subtract(Region::rect(-2, -2, 2, 2),
                                          Region::rect(-0.01, -0.01, 0.01, 0.01));
    // truncation exclusion: the core A^{-6}([0,2]x[0,3]) and its rotations
    std::vector<ConvexPolygon> core;
    const double cx = 2.0 * std::pow(2.0, -6.0);
    const double cy = 3.0 * std::pow(3.0, -6.0);
    core.push_back(ConvexPolygon::rect(0, 0, cx, cy));
    core.push_back(ConvexPolygon::rect(-cy, 0, 0, cx));
    core.push_back(ConvexPolygon::rect(-cx, -cy, 0, 0));
    core.push_back(ConvexPolygon::rect(0, -cx, cy, 0));
    const Region exclusion(std::move(core));

    const TilingReport rep =
        check_mult_tiling(n_tile.region, rotations, window, 1e-4, 1e-3, exclusion);
    const bool pass = rep.max_pairwise_overlap <= 1e-4 && rep.gap_area <= 1e-3;
    report(8, pass,
           "N overlap mass " + fmt(n_tile.overlap_mass) + "; rotation overlap " +
               fmt(rep.max_pairwise_overlap) + "; gap beyond truncation " + fmt(rep.gap_area));
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];
    }
    const auto t0 = std::chrono::steady_clock::now();

    const Example32Result ex32 = demo_example_32(10);
    criterion_1_example32(ex32);
    criterion_2_conservation();
    criterion_3_example31();
    const Region w4 = construct_diag_rot(4).result;
    const Region w8 = construct_diag_rot(8).result;
    criterion_4_fuglede(w4, w8, ex32.trace.result);
    criterion_5_parseval(ex32.trace.result);
    criterion_6_oracle_triangle();
    criterion_7_refutation(cli_path);
    criterion_8_composition(ex32.trace.result);

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance suite finished in %.1f s, unexpected failures: %d\n", total,
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
