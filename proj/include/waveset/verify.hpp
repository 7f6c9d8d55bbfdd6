#ifndef WAVESET_VERIFY_HPP
#define WAVESET_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "waveset/dilation.hpp"
#include "waveset/geometry.hpp"

namespace waveset {

// ---------------------------------------------------------------------------
// reports

struct TilingReport {
    double max_pairwise_overlap = 0.0;
    double total_overlap = 0.0;
    double gap_area = 0.0;
    Region window;
    std::string truncation;
    double window_area = 0.0;
    double excluded_area = 0.0;  // analytically known truncation mass removed from the gap
    std::size_t copies = 0;
    double overlap_tol = 0.0;  // pass thresholds are tol * area(window)
    double gap_tol = 0.0;
    bool pass = false;
};

enum class SpectralRoute { FugledeTiling, GramMatrix };

struct SpectralReport {
    SpectralRoute route = SpectralRoute::GramMatrix;
    double max_offdiag = 0.0;
    double diag_deviation = 0.0;
    int lattice_truncation = 0;
    double tol = 0.0;
    bool pass = false;
    std::optional<TilingReport> tiling;  // fuglede route: the underlying dual-lattice check
};

struct WaveletReport {
    std::vector<SpectralReport> same_dilation_gram;  // one per dilation
    double cross_dilation_overlap = 0.0;
    std::optional<double> parseval_error;
    double tol = 0.0;
    bool pass = false;
    // bookkeeping: the checked frequency-domain family and the time-domain
    // dilations it certifies (element-wise transposes)
    std::vector<Mat2> frequency_family;
    std::vector<Mat2> time_domain_family;
};

// ---------------------------------------------------------------------------
// checks

/// Translate omega over every lattice point within reach of the window, clip
/// to the window, and measure total / max pairwise overlap plus the gap
/// (window minus union minus the optional exclusion region).
/// Pass iff total_overlap <= tol * area(window) and gap <= gap_tol * area(window).
TilingReport check_additive_tiling(const Region& omega, const Lattice& lat, const Region& window,
                                   double tol, double gap_tol = -1.0,
                                   const Region& exclusion = Region(),
                                   const Tolerances& gtol = default_tolerances());

/// Same masses for the affine images {d omega} of the given family.
TilingReport check_mult_tiling(const Region& omega, const std::vector<Mat2>& family,
                               const Region& window, double tol, double gap_tol = -1.0,
                               const Region& exclusion = Region(),
                               const Tolerances& gtol = default_tolerances());

/// Spectral-pair check for the lattice spectrum.  The fuglede-tiling route
/// delegates to the additive check with the dual lattice on a window padded
/// around omega; the gram-matrix route evaluates the indicator transform at
/// lattice differences B(i,j), 0 < max(|i|,|j|) <= 2K, and normalizes by the
/// area.
SpectralReport check_spectral(const Region& omega, const Lattice& lat, SpectralRoute route,
                              int truncation_K, double tol,
                              const Tolerances& gtol = default_tolerances());

/// Frequency-domain wavelet-system check: the per-dilation Gram reduces by
/// the change of variables xi = d^T eta exactly to the spectral check on
/// omega, and across dilations the images d(omega) must not overlap.
/// `freq_family` holds the frequency-domain matrices (the transposes of the
/// time-domain dilations).
WaveletReport check_wavelet_system(const Region& omega, const std::vector<Mat2>& freq_family,
                                   const Lattice& lat, int truncation_K, const Region& window,
                                   double tol, const Tolerances& gtol = default_tolerances());

/// Relative Parseval defect |sum |c|^2 - area(target)| / area(target) for the
/// truncated system, coefficients evaluated in closed form:
///   c_{g,t} = |det g|^{1/2} * indicator_fourier(g^{-1}(target) ∩ omega, t).
double parseval_test(const Region& omega, const std::vector<Mat2>& freq_family,
                     const Lattice& lat, const Region& target, int truncation_K,
                     const Tolerances& gtol = default_tolerances());

/// Defect per K' = 0..truncation_K (cumulative rings), last entry equals
/// parseval_test at truncation_K.
std::vector<double> parseval_profile(const Region& omega, const std::vector<Mat2>& freq_family,
                                     const Lattice& lat, const Region& target, int truncation_K,
                                     const Tolerances& gtol = default_tolerances());

// test-support oracle: recompute tiling masses by rasterizing coverage counts
struct RasterTilingMasses {
    double total_overlap = 0.0;
    double gap_area = 0.0;
};
RasterTilingMasses raster_tiling_masses(const std::vector<Region>& images, const Region& window,
                                        int resolution);

}  // namespace waveset

#endif
