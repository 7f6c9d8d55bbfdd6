#ifndef WAVESET_CONSTRUCT_HPP
#define WAVESET_CONSTRUCT_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "waveset/dilation.hpp"
#include "waveset/geometry.hpp"
#include "waveset/verify.hpp"

namespace waveset {

struct construction_error : error {
    using error::error;
};

/// No admissible (dilation, translation) pair for a positive-area residue.
struct stuck_exchange_error : construction_error {
    stuck_exchange_error(const std::string& msg, Region residue)
        : construction_error(msg), residue(std::move(residue)) {}
    Region residue;
};

/// Exchange did not reach the target residual within max_iters.
struct nonconvergence_error : construction_error {
    nonconvergence_error(const std::string& msg, Region residue, double residual)
        : construction_error(msg), residue(std::move(residue)), residual_area(residual) {}
    Region residue;
    double residual_area = 0.0;
};

/// A named hypothesis of the existence lemma failed.
struct hypothesis_error : construction_error {
    hypothesis_error(const std::string& hypothesis, const std::string& msg)
        : construction_error(hypothesis + ": " + msg), hypothesis(hypothesis) {}
    std::string hypothesis;
};

struct factorization_error : construction_error {
    using construction_error::construction_error;
};

// ---------------------------------------------------------------------------
// traces

/// One matched piece of the congruence exchange.  `piece` is the source-side
/// subset of E; the produced piece of the result is piece + translation, and
/// it lies inside dilation(F).
struct ExchangeStep {
    Region piece;
    Point translation;
    std::size_t dilation_index = 0;  // index into the trace's enumerated family
    int iteration = 0;
    Mat2 dilation = Mat2::identity();
    int dilation_power = 0;  // power of the family base carried by `dilation`
};

struct ConstructionTrace {
    std::vector<ExchangeStep> steps;
    double residual_area = 0.0;
    Region result;

    // reproducibility metadata
    std::string construction;
    Region source_e;
    Region source_f;
    DilationSpec family;  // power range widened to cover every step dilation
    Lattice lattice;
    int stages = 0;
    bool converged = true;
    double unconsumed_f_area = 0.0;
};

// ---------------------------------------------------------------------------
// constructions

/// Example construction for A = diag(2,3), D = {R^k_{pi/2} A^n}, T = Z^2,
/// E = [0,1]^2, F = ([0,2]x[0,3]) \ E.
///
/// Stage 1 reproduces the source pieces exactly:
///     W_{1,1} = (E \ A^{-1}E) + (1,0),   W_{2,1} = A^{-2}[(0,1)x(1,3)].
/// Later stages peel E by A^{-1}-annuli, translate each annulus by (1,0)
/// into F, and per stage contract one queued piece of still-unused F-mass
/// into the untouched zone A^{-j}E (smallest power that fits), queueing the
/// translation hole that the new home piece leaves behind in F.  This keeps
/// both congruences balanced, so the limit is a genuine multiplicative tile;
/// see the module tests for the tiling verdicts.
ConstructionTrace construct_diag_rot(int truncation_J,
                                     const Tolerances& tol = default_tolerances());

/// Rotation-scaling construction on the sector of angle 2 pi / m with the
/// scaling subgroup {a^n id} exchanged against a bounded annular-sector F
/// (arcs polygonalized with 64 segments per full turn).  E follows the
/// source family: [0,1]x[0,tan(2pi/m)] generally, [0,1]^2 for m = 4,
/// [-1,1]x[0,1] for m = 2; the degenerate m = 1 uses E = [-1/2,1/2]^2 and
/// F = aE \ E on the full plane.
ConstructionTrace construct_rot_scale(double a, int m, int max_iters, double tol_residual,
                                      const Tolerances& tol = default_tolerances());

/// Generic congruence exchange: finds the first enumerated dilation d0 and
/// lexicographically smallest lattice translation t0 with E + t0 inside
/// d0(F), reserves that destination for the annulus peeling, and drains the
/// remaining F-mass through a FIFO contraction queue (one item per stage,
/// each new home piece enqueueing its own reserved-zone hole).
ConstructionTrace dls_exchange(const Region& E, const Region& F, const DilationSpec& dils,
                               const Lattice& lat, int max_iters, double tol_residual,
                               const Tolerances& tol = default_tolerances());

/// Variant with a forced destination (d0 given by family parameters (n,k)
/// and translation t0); used where a construction pins the exchange layout.
ConstructionTrace dls_exchange_with_destination(const Region& E, const Region& F,
                                                const DilationSpec& dils, const Lattice& lat,
                                                int max_iters, double tol_residual, int dest_power,
                                                int dest_rotation, const Point& dest_translation,
                                                const Tolerances& tol = default_tolerances());

struct InducedTile {
    Region region;
    double overlap_mass = 0.0;
};

/// N = union of b(omega) over the list, normalized to disjoint pieces with
/// the pairwise overlap mass attached (near zero iff the images tile N).
InducedTile induce_subspace_tile(const Region& omega, const std::vector<Mat2>& b_list,
                                 const Tolerances& tol = default_tolerances());

enum class GroupFactor { Powers, Rotations };

/// Split the enumerated family as D = D1 * G with G the designated group
/// factor acting from the right; validates directness on the truncation.
std::pair<std::vector<Mat2>, std::vector<Mat2>> factor_dilation_set(
    const DilationSpec& spec, GroupFactor group_factor,
    const Tolerances& tol = default_tolerances());

struct ExwaveResult {
    ConstructionTrace trace;
    Region n_region;
    double n_overlap_mass = 0.0;
    TilingReport b_tiling_of_n;
    TilingReport dt_tiling_of_window;
};

/// Existence pipeline: verify the lemma hypotheses (expansive base, a*D = D
/// at the truncation, D^T E tiles the window), set b = a^T, N = union of
/// b^k E, and run the exchange for the cyclic group {b^k} against F' = E
/// with the lattice cell as starter tile.
ExwaveResult exwave_pipeline(const Region& E, const DilationSpec& dils, const Lattice& lat,
                             const Region& window, double tol_residual,
                             const Tolerances& tol = default_tolerances());

// helpers shared with the CLI demos

/// Polygonal annular sector {a^lo < r <= a^hi} of angle 2*pi/m (m = 1 gives
/// the square frame family for the full plane).  Arc discretization matches
/// construct_rot_scale so scaled copies tile crack-free.
Region sector_annulus(double a, int m, int pow_lo, int pow_hi,
                      const Tolerances& tol = default_tolerances());

Region example32_e();
Region example32_f();
DilationSpec example32_dilations(int power_reach);

}  // namespace waveset

#endif
