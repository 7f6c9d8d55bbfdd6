#include "waveset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace waveset {

namespace {

struct TilingMasses {
    double total_overlap = 0.0;
    double max_pairwise = 0.0;
    double gap = 0.0;
    std::size_t copies = 0;
};

// Shared mass computation over a list of candidate images clipped to the
// window.  Pairwise overlaps are summed in index order; the gap is the exact
// region cascade window \ exclusion \ union(images).
TilingMasses tiling_masses(const std::vector<Region>& images, const Region& window,
                           const Region& exclusion, const Tolerances& gtol) {
    TilingMasses out;
    std::vector<Region> clipped;
    clipped.reserve(images.size());
    for (const Region& img : images) {
        if (!img.bbox().overlaps(window.bbox())) continue;
        Region c = region_intersect(img, window, gtol);
        if (!c.empty()) clipped.push_back(std::move(c));
    }
    out.copies = clipped.size();
    for (std::size_t i = 0; i < clipped.size(); ++i) {
        for (std::size_t j = i + 1; j < clipped.size(); ++j) {
            if (!clipped[i].bbox().overlaps(clipped[j].bbox())) continue;
            const double a = region_intersect(clipped[i], clipped[j], gtol).area();
            out.total_overlap += a;
            out.max_pairwise = std::max(out.max_pairwise, a);
        }
    }
    Region gap = exclusion.empty() ? window : region_subtract(window, exclusion, gtol);
    for (const Region& c : clipped) {
        if (!gap.bbox().overlaps(c.bbox())) continue;
        gap = region_subtract(gap, c, gtol);
        if (gap.empty()) break;
    }
    out.gap = gap.area();
    return out;
}

}  // namespace

TilingReport check_additive_tiling(const Region& omega, const Lattice& lat, const Region& window,
                                   double tol, double gap_tol, const Region& exclusion,
                                   const Tolerances& gtol) {
    if (gap_tol < 0.0) gap_tol = tol;
    TilingReport rep;
    rep.window = window;
    rep.window_area = window.area();
    rep.excluded_area = exclusion.area();
    rep.overlap_tol = tol;
    rep.gap_tol = gap_tol;
    if (omega.empty() || window.empty()) {
        rep.gap_area = rep.window_area;
        rep.pass = rep.gap_area <= gap_tol * rep.window_area;
        return rep;
    }
    // lattice translates whose bbox can reach the window
    const BBox wb = window.bbox();
    const BBox ob = omega.bbox();
    const BBox reach{wb.xmin - ob.xmax, wb.ymin - ob.ymax, wb.xmax - ob.xmin, wb.ymax - ob.ymin};
    std::vector<Region> images;
    const auto idx = lattice_indices_in_box(lat, reach);
    images.reserve(idx.size());
    for (const auto& [i, j] : idx) {
        images.push_back(translate(omega, lat.point(i, j)));
    }
    const TilingMasses m = tiling_masses(images, window, exclusion, gtol);
    rep.total_overlap = m.total_overlap;
    rep.max_pairwise_overlap = m.max_pairwise;
    rep.gap_area = m.gap;
    rep.copies = m.copies;
    std::ostringstream osb;
    osb << "lattice translates within bbox reach (" << idx.size() << " candidates)";
    rep.truncation = osb.str();
    rep.pass = rep.total_overlap <= tol * rep.window_area &&
               rep.gap_area <= gap_tol * rep.window_area;
    return rep;
}

TilingReport check_mult_tiling(const Region& omega, const std::vector<Mat2>& family,
                               const Region& window, double tol, double gap_tol,
                               const Region& exclusion, const Tolerances& gtol) {
    if (gap_tol < 0.0) gap_tol = tol;
    TilingReport rep;
    rep.window = window;
    rep.window_area = window.area();
    rep.excluded_area = exclusion.area();
    rep.overlap_tol = tol;
    rep.gap_tol = gap_tol;
    std::vector<Region> images;
    images.reserve(family.size());
    for (const Mat2& d : family) {
        images.push_back(affine_image(omega, AffineMap::linear_map(d), gtol));
    }
    const TilingMasses m = tiling_masses(images, window, exclusion, gtol);
    rep.total_overlap = m.total_overlap;
    rep.max_pairwise_overlap = m.max_pairwise;
    rep.gap_area = m.gap;
    rep.copies = m.copies;
    std::ostringstream osb;
    osb << "family truncation (" << family.size() << " matrices)";
    rep.truncation = osb.str();
    rep.pass = rep.total_overlap <= tol * rep.window_area &&
               rep.gap_area <= gap_tol * rep.window_area;
    return rep;
}

SpectralReport check_spectral(const Region& omega, const Lattice& lat, SpectralRoute route,
                              int truncation_K, double tol, const Tolerances& gtol) {
    SpectralReport rep;
    rep.route = route;
    rep.lattice_truncation = truncation_K;
    rep.tol = tol;
    if (route == SpectralRoute::FugledeTiling) {
        const Lattice dual = dual_lattice(lat);
        // window: omega's bounding box padded by one dual cell in each direction
        const double pad =
            std::max({std::hypot(dual.basis.a, dual.basis.c), std::hypot(dual.basis.b, dual.basis.d),
                      1.0});
        const BBox b = omega.bbox().padded(1.5 * pad);
        const Region window = Region::rect(b.xmin, b.ymin, b.xmax, b.ymax);
        TilingReport t = check_additive_tiling(omega, dual, window, tol, tol, Region(), gtol);
        rep.max_offdiag = t.total_overlap / std::max(t.window_area, 1e-300);
        rep.diag_deviation = t.gap_area / std::max(t.window_area, 1e-300);
        rep.pass = t.pass;
        rep.tiling = std::move(t);
        return rep;
    }
    if (truncation_K < 1) throw precondition_error("check_spectral: truncation_K must be >= 1");
    const double a = omega.area();
    if (a <= 0.0) throw precondition_error("check_spectral: omega has zero area");
    // G_{ts} depends on s - t only; differences range over B(i,j), |i|,|j| <= 2K
    double max_off = 0.0;
    for (int i = -2 * truncation_K; i <= 2 * truncation_K; ++i) {
        for (int j = -2 * truncation_K; j <= 2 * truncation_K; ++j) {
            if (i == 0 && j == 0) continue;
            const double v = std::abs(indicator_fourier(omega, lat.point(i, j), gtol));
            max_off = std::max(max_off, v);
        }
    }
    rep.max_offdiag = max_off / a;
    rep.diag_deviation = 0.0;  // G_tt = chi-hat(0) = area by the short-circuit
    rep.pass = rep.max_offdiag <= tol && rep.diag_deviation <= tol;
    return rep;
}

WaveletReport check_wavelet_system(const Region& omega, const std::vector<Mat2>& freq_family,
                                   const Lattice& lat, int truncation_K, const Region& window,
                                   double tol, const Tolerances& gtol) {
    (void)window;
    WaveletReport rep;
    rep.tol = tol;
    // change of variables xi = d^T eta maps the Gram on d(omega) with
    // frequencies d^{-1}t exactly onto the Gram on omega with frequencies t,
    // so one spectral check covers every dilation
    SpectralReport gram =
        check_spectral(omega, lat, SpectralRoute::GramMatrix, truncation_K, tol, gtol);
    rep.same_dilation_gram.assign(freq_family.size(), gram);
    std::vector<Region> images;
    images.reserve(freq_family.size());
    for (const Mat2& d : freq_family) {
        images.push_back(affine_image(omega, AffineMap::linear_map(d), gtol));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            if (!images[i].bbox().overlaps(images[j].bbox())) continue;
            worst = std::max(worst, region_intersect(images[i], images[j], gtol).area());
        }
    }
    rep.cross_dilation_overlap = worst;
    rep.pass = gram.pass && worst <= tol;
    rep.frequency_family = freq_family;
    rep.time_domain_family.reserve(freq_family.size());
    for (const Mat2& d : freq_family) rep.time_domain_family.push_back(d.transpose());
    return rep;
}

namespace {

// Per-dilation clipped pullback g^{-1}(target) ∩ omega with weight |det g|.
struct ParsevalTerm {
    Region support;
    double det_abs;
};

std::vector<ParsevalTerm> parseval_terms(const Region& omega,
                                         const std::vector<Mat2>& freq_family,
                                         const Region& target, const Tolerances& gtol) {
    // precondition: target must be covered by the union of the images
    Region rem = target;
    for (const Mat2& g : freq_family) {
        const Region img = affine_image(omega, AffineMap::linear_map(g), gtol);
        if (rem.bbox().overlaps(img.bbox())) rem = region_subtract(rem, img, gtol);
        if (rem.empty()) break;
    }
    if (rem.area() > 1e-9 * std::max(1.0, target.area())) {
        throw precondition_error("parseval_test: target escapes the covered region (missing area " +
                                 std::to_string(rem.area()) + ")");
    }
    std::vector<ParsevalTerm> terms;
    for (const Mat2& g : freq_family) {
        const Mat2 ginv = g.inverse(gtol.det);
        const Region pulled = affine_image(target, AffineMap::linear_map(ginv), gtol);
        Region support = region_intersect(pulled, omega, gtol);
        if (support.area() <= gtol.area) continue;
        terms.push_back({std::move(support), std::abs(g.det())});
    }
    return terms;
}

}  // namespace

std::vector<double> parseval_profile(const Region& omega, const std::vector<Mat2>& freq_family,
                                     const Lattice& lat, const Region& target, int truncation_K,
                                     const Tolerances& gtol) {
    if (truncation_K < 0) throw precondition_error("parseval_test: truncation_K must be >= 0");
    const double ta = target.area();
    if (ta <= 0.0) throw precondition_error("parseval_test: target has zero area");
    const auto terms = parseval_terms(omega, freq_family, target, gtol);
    // ring sums: ring r contributes all t = B(i,j) with max(|i|,|j|) = r
    std::vector<double> ring(static_cast<std::size_t>(truncation_K) + 1, 0.0);
    for (int i = -truncation_K; i <= truncation_K; ++i) {
        for (int j = -truncation_K; j <= truncation_K; ++j) {
            const int r = std::max(std::abs(i), std::abs(j));
            const Point t = lat.point(i, j);
            double s = 0.0;
            for (const ParsevalTerm& term : terms) {
                const double c = std::abs(indicator_fourier(term.support, t, gtol));
                s += term.det_abs * c * c;
            }
            ring[static_cast<std::size_t>(r)] += s;
        }
    }
    std::vector<double> defect(ring.size());
    double acc = 0.0;
    for (std::size_t r = 0; r < ring.size(); ++r) {
        acc += ring[r];
        defect[r] = std::abs(acc - ta) / ta;
    }
    return defect;
}

double parseval_test(const Region& omega, const std::vector<Mat2>& freq_family, const Lattice& lat,
                     const Region& target, int truncation_K, const Tolerances& gtol) {
    return parseval_profile(omega, freq_family, lat, target, truncation_K, gtol).back();
}

RasterTilingMasses raster_tiling_masses(const std::vector<Region>& images, const Region& window,
                                        int resolution) {
    RasterTilingMasses out;
    const BBox wb = window.bbox();
    const double h = std::max(wb.width(), wb.height()) / static_cast<double>(resolution);
    const int nx = static_cast<int>(std::ceil(wb.width() / h));
    const int ny = static_cast<int>(std::ceil(wb.height() / h));
    std::vector<std::uint8_t> count(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
    for (int j = 0; j < ny; ++j) {
        const double y = wb.ymin + (j + 0.5) * h;
        for (int i = 0; i < nx; ++i) {
            const Point p{wb.xmin + (i + 0.5) * h, y};
            if (!window.contains(p, 0.0)) continue;
            std::uint8_t c = 0;
            for (const Region& img : images) {
                if (img.contains(p, 0.0)) {
                    if (c < 255) ++c;
                }
            }
            const std::size_t at = static_cast<std::size_t>(j) * nx + i;
            count[at] = c;
            if (c == 0) out.gap_area += h * h;
            if (c > 1) out.total_overlap += (c - 1) * h * h;
        }
    }
    return out;
}

}  // namespace waveset
