#include "waveset/demo.hpp"

#include <chrono>
#include <cmath>

namespace waveset {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Example32Result demo_example_32(int truncation_J, const Tolerances& tol) {
    const auto t0 = std::chrono::steady_clock::now();
    Example32Result out;
    out.trace = construct_diag_rot(truncation_J, tol);
    const Region& w = out.trace.result;
    const Lattice z2{};

    // additive tiling on [-2,3]^2; the analytically known untranslated zone
    // A^{-J}E is excluded from the gap at every lattice copy
    const Region add_window = Region::rect(-2.0, -2.0, 3.0, 3.0);
    Region exclusion;
    {
        const double zx = std::pow(2.0, -truncation_J);
        const double zy = std::pow(3.0, -truncation_J);
        std::vector<ConvexPolygon> cells;
        const BBox reach = add_window.bbox().padded(1.0);
        for (const auto& [i, j] : lattice_indices_in_box(z2, reach)) {
            cells.push_back(
                ConvexPolygon::rect(i, j, i + zx, j + zy));
        }
        exclusion = Region(std::move(cells));
    }
    out.additive = check_additive_tiling(w, z2, add_window, 1e-6, 1e-4, exclusion, tol);

    // multiplicative tiling by the frequency family as enumerated
    const EnumeratedFamily family = enumerate_dilations(example32_dilations(8), tol);
    const Region mult_window = region_subtract(Region::rect(-2.0, -3.0, 2.0, 3.0),
                                               Region::rect(-0.01, -0.01, 0.01, 0.01), tol);
    out.multiplicative = check_mult_tiling(w, family.matrices, mult_window, 1e-6, 1e-3, Region(), tol);

    out.spectral_gram = check_spectral(w, z2, SpectralRoute::GramMatrix, 3, 1e-4, tol);
    out.spectral_fuglede = check_spectral(w, z2, SpectralRoute::FugledeTiling, 3, 1e-3, tol);
    out.wavelet = check_wavelet_system(w, family.matrices, z2, 3, mult_window, 1e-3, tol);

    out.pass = out.additive.pass && out.multiplicative.pass && out.spectral_gram.pass &&
               out.spectral_fuglede.pass && out.wavelet.pass;
    out.seconds = seconds_since(t0);
    return out;
}

Example31Result demo_example_31(double a, int m, double tol_residual, int max_iters,
                                const Tolerances& tol) {
    const auto t0 = std::chrono::steady_clock::now();
    Example31Result out;
    out.trace = construct_rot_scale(a, m, max_iters, tol_residual, tol);
    const Region& w = out.trace.result;
    const Lattice z2{};

    const Region add_window = Region::rect(-2.0, -2.0, 3.0, 3.0);
    out.additive = check_additive_tiling(w, z2, add_window, 1e-4, 1e-4, Region(), tol);

    // scaling-subgroup tiling on the matching polygonal sector annulus
    const int reach = out.trace.stages + 2;
    std::vector<Mat2> powers;
    for (int n = -reach; n <= reach; ++n) powers.push_back(Mat2::scalar(a).pow(n));
    const Region sector_window = sector_annulus(a, m, -3, 3, tol);
    out.sector_mult = check_mult_tiling(w, powers, sector_window, 1e-3, 1e-3, Region(), tol);

    out.pass = out.additive.pass && out.sector_mult.pass && out.trace.converged;
    out.seconds = seconds_since(t0);
    return out;
}

}  // namespace waveset
