#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "waveset/construct.hpp"
#include "waveset/verify.hpp"

using namespace waveset;

namespace {

// 2-D midpoint quadrature for Gram entries, used as an independent oracle
double gram_quadrature_abs(const Region& r, const Point& k, int nodes) {
    const BBox b = r.bbox();
    const double hx = b.width() / nodes, hy = b.height() / nodes;
    double re = 0.0, im = 0.0;
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const Point p{b.xmin + (i + 0.5) * hx, b.ymin + (j + 0.5) * hy};
            if (!r.contains(p, 0.0)) continue;
            const double phase = -2.0 * std::numbers::pi * (k.x * p.x + k.y * p.y);
            re += std::cos(phase);
            im += std::sin(phase);
        }
    }
    return std::hypot(re, im) * hx * hy;
}

}  // namespace

TEST_CASE("check_additive_tiling") {
    const Lattice z2{};
    const Region window = Region::rect(-2, -2, 2, 2);

    SUBCASE("unit square tiles") {
        const TilingReport rep =
            check_additive_tiling(Region::rect(0, 0, 1, 1), z2, window, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.total_overlap <= 1e-12);
        CHECK(rep.gap_area <= 1e-12);
    }
    SUBCASE("the 1.5-wide box double-covers half of every cell") {
        const Region omega = Region::rect(0, 0, 1.5, 1);
        const TilingReport rep = check_additive_tiling(omega, z2, window, 1e-9);
        CHECK(!rep.pass);
        // overlap mass is 0.5 per unit cell; the window holds 16 cells
        CHECK(rep.total_overlap == doctest::Approx(8.0).epsilon(1e-9));
        CHECK(rep.max_pairwise_overlap == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(rep.gap_area <= 1e-12);
    }
    SUBCASE("W at J = 10 tiles the demo window") {
        const ConstructionTrace t = construct_diag_rot(10);
        const TilingReport rep =
            check_additive_tiling(t.result, z2, Region::rect(-2, -2, 3, 3), 1e-4);
        CHECK(rep.pass);
    }
}

TEST_CASE("check_mult_tiling") {
    SUBCASE("F of the diagonal example tiles under the enumerated family") {
        const Region f = example32_f();
        const EnumeratedFamily fam = enumerate_dilations(example32_dilations(8));
        const Region window = region_subtract(Region::rect(-2, -3, 2, 3),
                                              Region::rect(-0.01, -0.01, 0.01, 0.01));
        const TilingReport rep = check_mult_tiling(f, fam.matrices, window, 1e-3);
        CHECK(rep.pass);
        CHECK(rep.total_overlap <= 1e-9);
    }
    SUBCASE("dyadic square frames telescope") {
        const Region omega = region_subtract(Region::rect(-2, -2, 2, 2),
                                             Region::rect(-1, -1, 1, 1));
        std::vector<Mat2> powers;
        for (int n = -10; n <= 10; ++n) powers.push_back(Mat2::scalar(2.0).pow(n));
        const Region window = region_subtract(Region::rect(-8, -8, 8, 8),
                                              Region::rect(-0.05, -0.05, 0.05, 0.05));
        const TilingReport rep = check_mult_tiling(omega, powers, window, 1e-6);
        CHECK(rep.pass);
    }
    SUBCASE("containment family fails with overlap at least 1") {
        std::vector<Mat2> powers = {Mat2::scalar(0.25), Mat2::scalar(0.5), Mat2::identity(),
                                    Mat2::scalar(2.0), Mat2::scalar(4.0)};
        const TilingReport rep = check_mult_tiling(Region::rect(0, 0, 1, 1), powers,
                                                   Region::rect(0, 0, 2, 2), 1e-6);
        CHECK(!rep.pass);
        CHECK(rep.total_overlap >= 1.0);
    }
    SUBCASE("non-direct product double-counts") {
        // {I,-I} x {I,-I} products collapse to two copies of {I,-I}
        std::vector<Mat2> family;
        for (const Mat2& a : {Mat2::identity(), Mat2::scalar(-1.0)}) {
            for (const Mat2& b : {Mat2::identity(), Mat2::scalar(-1.0)}) {
                family.push_back(a * b);
            }
        }
        const Region omega = region_subtract(Region::rect(-2, -2, 2, 2),
                                             Region::rect(-1, -1, 1, 1));
        const Region window = Region::rect(-2, -2, 2, 2);
        const TilingReport rep = check_mult_tiling(omega, family, window, 1e-6);
        CHECK(!rep.pass);
        CHECK(rep.total_overlap >= omega.area());
    }
}

TEST_CASE("check_spectral") {
    const Lattice z2{};
    SUBCASE("unit square passes on both routes") {
        const Region omega = Region::rect(0, 0, 1, 1);
        const SpectralReport g = check_spectral(omega, z2, SpectralRoute::GramMatrix, 3, 1e-9);
        CHECK(g.pass);
        CHECK(g.max_offdiag <= 1e-12);
        CHECK(g.diag_deviation == 0.0);
        const SpectralReport f = check_spectral(omega, z2, SpectralRoute::FugledeTiling, 3, 1e-9);
        CHECK(f.pass);
    }
    SUBCASE("the 1.5-wide box fails the Gram route with the predicted entry") {
        const Region omega = Region::rect(0, 0, 1.5, 1);
        const SpectralReport g = check_spectral(omega, z2, SpectralRoute::GramMatrix, 3, 1e-3);
        CHECK(!g.pass);
        // |chi-hat((1,0))| = |int_0^{1.5} e^{-2 pi i x} dx| = 1/pi, relative to area 1.5
        CHECK(g.max_offdiag >=
              (1.0 / std::numbers::pi) / 1.5 - 1e-9);
        // quadrature cross-check of the offending entry
        const double q = gram_quadrature_abs(omega, {1, 0}, 1500);
        CHECK(q == doctest::Approx(1.0 / std::numbers::pi).epsilon(2e-3));
        const SpectralReport f = check_spectral(omega, z2, SpectralRoute::FugledeTiling, 3, 1e-3);
        CHECK(!f.pass);
    }
    SUBCASE("gram shift-invariance spot check against quadrature") {
        const Region omega = region_subtract(Region::rect(0, 0, 1.2, 1),
                                             Region::rect(0.3, 0.2, 0.7, 0.6));
        std::mt19937_64 eng(31);
        std::uniform_int_distribution<int> idx(-2, 2);
        for (int trial = 0; trial < 5; ++trial) {
            const int di = idx(eng), dj = idx(eng);
            if (di == 0 && dj == 0) continue;
            const double exact = std::abs(indicator_fourier(omega, {double(di), double(dj)}));
            const double quad = gram_quadrature_abs(omega, {double(di), double(dj)}, 1200);
            CHECK(std::abs(exact - quad) < 5e-3);
        }
    }
    SUBCASE("W at J = 10 passes both routes and they agree") {
        const ConstructionTrace t = construct_diag_rot(10);
        const SpectralReport g = check_spectral(t.result, z2, SpectralRoute::GramMatrix, 3, 1e-4);
        const SpectralReport f =
            check_spectral(t.result, z2, SpectralRoute::FugledeTiling, 3, 1e-3);
        CHECK(g.pass);
        CHECK(f.pass);
    }
}

TEST_CASE("check_wavelet_system") {
    const Lattice z2{};
    SUBCASE("single identity dilation reduces to the spectral check") {
        const Region omega = Region::rect(0, 0, 1, 1);
        const WaveletReport rep = check_wavelet_system(omega, {Mat2::identity()}, z2, 3,
                                                       Region::rect(-2, -2, 2, 2), 1e-6);
        CHECK(rep.pass);
        CHECK(rep.cross_dilation_overlap == 0.0);
        REQUIRE(rep.same_dilation_gram.size() == 1);
        const SpectralReport direct =
            check_spectral(omega, z2, SpectralRoute::GramMatrix, 3, 1e-6);
        CHECK(rep.same_dilation_gram[0].max_offdiag ==
              doctest::Approx(direct.max_offdiag).epsilon(1e-12));
    }
    SUBCASE("containment fails via cross-dilation overlap 1") {
        const WaveletReport rep =
            check_wavelet_system(Region::rect(0, 0, 1, 1), {Mat2::identity(), Mat2::scalar(2.0)},
                                 z2, 2, Region::rect(0, 0, 2, 2), 1e-6);
        CHECK(!rep.pass);
        CHECK(rep.cross_dilation_overlap == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("the change-of-variables reduction matches a direct Gram on d(omega)") {
        // directly evaluate the Gram of {|det d|^{-1/2} e_{d^{-1} t}} on d(omega)
        const Region omega = Region::rect(0, 0, 1, 1);
        const Mat2 d = Mat2::diag(2, 3);
        const Region dimg = affine_image(omega, AffineMap::linear_map(d));
        const Mat2 dinv_t = d.inverse().transpose();
        double max_direct = 0.0;
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                if (i == 0 && j == 0) continue;
                // <e_{d^{-1}t}, e_{d^{-1}s}> over d(omega) = chi-hat_{d omega}(d^{-T}(s-t))
                const Point freq = dinv_t.apply({double(i), double(j)});
                max_direct = std::max(
                    max_direct, std::abs(indicator_fourier(dimg, freq)) / std::abs(d.det()));
            }
        }
        double max_reduced = 0.0;
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                if (i == 0 && j == 0) continue;
                max_reduced = std::max(
                    max_reduced, std::abs(indicator_fourier(omega, {double(i), double(j)})));
            }
        }
        CHECK(max_direct == doctest::Approx(max_reduced).epsilon(1e-9));
    }
}

TEST_CASE("parseval_test") {
    const Lattice z2{};
    const Region unit = Region::rect(0, 0, 1, 1);

    SUBCASE("target = omega with the identity family has zero defect at any K") {
        // every coefficient with t != 0 vanishes on the unit square, so the
        // Bessel tail is exhausted at K = 0 and the profile is flat
        const auto profile = parseval_profile(unit, {Mat2::identity()}, z2, unit, 20);
        CHECK(profile.back() <= 1e-12);
        CHECK(profile.front() <= 1e-12);
        for (std::size_t i = 1; i < profile.size(); ++i) {
            CHECK(profile[i] <= profile[i - 1] + 1e-12);
        }
    }
    SUBCASE("centered quarter square: defect matches the analytic sinc tail") {
        const Region target = Region::rect(0.25, 0.25, 0.75, 0.75);
        const double defect = parseval_test(unit, {Mat2::identity()}, z2, target, 30);
        // per-axis truncated energy: 1/4 + 2 sum_{odd m <= 29} 1/(pi m)^2
        double axis = 0.25;
        for (int m = 1; m <= 29; m += 2) {
            axis += 2.0 / (std::numbers::pi * std::numbers::pi * m * m);
        }
        const double expected = std::abs(axis * axis * 4.0 - 1.0);
        CHECK(defect == doctest::Approx(expected).epsilon(1e-6));
        CHECK(defect < 0.02);
        const double coarse = parseval_test(unit, {Mat2::identity()}, z2, target, 5);
        CHECK(defect < coarse);
    }
    SUBCASE("escaping target raises a precondition error") {
        CHECK_THROWS_AS(
            parseval_test(unit, {Mat2::identity()}, z2, Region::rect(2, 2, 3, 3), 5),
            precondition_error);
    }
    SUBCASE("rectangle inside W at J = 10: defect from the analytic tail") {
        const ConstructionTrace t = construct_diag_rot(10);
        const Region target = Region::rect(1.6, 0.1, 1.9, 0.4);
        const EnumeratedFamily fam = enumerate_dilations(example32_dilations(8));
        const double d20 = parseval_test(t.result, fam.matrices, z2, target, 20);
        const double d5 = parseval_test(t.result, fam.matrices, z2, target, 5);
        CHECK(d20 < d5);
        // analytic 1-D tail: S(K) = L^2 + 2 sum_{m<=K} sin^2(pi m L)/(pi m)^2 with L = 0.3
        auto axis_sum = [](int K) {
            double s = 0.09;
            for (int m = 1; m <= K; ++m) {
                const double sn = std::sin(0.3 * std::numbers::pi * m);
                s += 2.0 * sn * sn / (std::numbers::pi * std::numbers::pi * m * m);
            }
            return s;
        };
        const double expected20 = std::abs(axis_sum(20) * axis_sum(20) / 0.09 - 1.0);
        CHECK(d20 == doctest::Approx(expected20).epsilon(1e-3));
    }
}

TEST_CASE("raster oracle agreement for tiling masses") {
    const Lattice z2{};
    SUBCASE("failing 1.5-box overlap recomputed by coverage rasterization") {
        const Region omega = Region::rect(0, 0, 1.5, 1);
        const Region window = Region::rect(-2, -2, 2, 2);
        const TilingReport rep = check_additive_tiling(omega, z2, window, 1e-9);
        std::vector<Region> images;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                images.push_back(translate(omega, {double(i), double(j)}));
            }
        }
        const RasterTilingMasses ras = raster_tiling_masses(images, window, 2048);
        const double bound = 9.0 * omega.perimeter() * window.bbox().diameter() / 2048.0;
        CHECK(std::abs(ras.total_overlap - rep.total_overlap) <= bound);
        CHECK(std::abs(ras.gap_area - rep.gap_area) <= bound);
    }
    SUBCASE("W at J = 4 masses agree with the raster oracle") {
        const ConstructionTrace t = construct_diag_rot(4);
        const Region window = Region::rect(-1, -1, 2, 2);
        const TilingReport rep = check_additive_tiling(t.result, z2, window, 1e-2);
        std::vector<Region> images;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                images.push_back(translate(t.result, {double(i), double(j)}));
            }
        }
        const RasterTilingMasses ras = raster_tiling_masses(images, window, 2048);
        const double bound =
            20.0 * t.result.perimeter() * window.bbox().diameter() / 2048.0;
        CHECK(std::abs(ras.gap_area - rep.gap_area) <= bound);
        CHECK(std::abs(ras.total_overlap - rep.total_overlap) <= bound);
    }
}

TEST_CASE("fuglede route consistency corpus") {
    const Lattice z2{};
    auto agree = [&](const Region& omega) {
        const SpectralReport g = check_spectral(omega, z2, SpectralRoute::GramMatrix, 3, 1e-3);
        const SpectralReport f = check_spectral(omega, z2, SpectralRoute::FugledeTiling, 3, 1e-3);
        CHECK(g.pass == f.pass);
        return g.pass;
    };
    CHECK(agree(Region::rect(0, 0, 1, 1)));
    CHECK(!agree(Region::rect(0, 0, 1.5, 1)));
    for (int J : {4, 8}) {
        CHECK(agree(construct_diag_rot(J).result));
    }
}
