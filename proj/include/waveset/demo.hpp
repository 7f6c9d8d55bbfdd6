#ifndef WAVESET_DEMO_HPP
#define WAVESET_DEMO_HPP

#include <string>
#include <vector>

#include "waveset/construct.hpp"
#include "waveset/verify.hpp"

namespace waveset {

/// End-to-end run of the diag(2,3) rotation family construction: build W at
/// depth J and verify additive tiling on [-2,3]^2, multiplicative tiling by
/// the enumerated frequency family (|n| <= 8, k = 0..3) on the punctured
/// window ([-2,2]x[-3,3]) \ [-0.01,0.01]^2, the spectral pair on both routes
/// (K = 3), and the wavelet-system check.
struct Example32Result {
    ConstructionTrace trace;
    TilingReport additive;
    TilingReport multiplicative;
    SpectralReport spectral_gram;
    SpectralReport spectral_fuglede;
    WaveletReport wavelet;
    bool pass = false;
    double seconds = 0.0;
};

Example32Result demo_example_32(int truncation_J = 10,
                                const Tolerances& tol = default_tolerances());

/// End-to-end rotation-scaling construction (default a = 2, m = 4 with the
/// bounded annular-sector F): converge to the requested residual, then check
/// additive tiling on [-2,3]^2 (tol 1e-4) and the sector multiplicative
/// tiling by the scaling subgroup on a matching polygonal annulus (tol 1e-3).
struct Example31Result {
    ConstructionTrace trace;
    TilingReport additive;
    TilingReport sector_mult;
    bool pass = false;
    double seconds = 0.0;
};

Example31Result demo_example_31(double a = 2.0, int m = 4, double tol_residual = 1e-5,
                                int max_iters = 48, const Tolerances& tol = default_tolerances());

}  // namespace waveset

#endif
