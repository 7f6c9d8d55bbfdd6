#include "waveset/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <cstdio>
#include <cstdlib>

namespace waveset {

namespace {

constexpr double kContainRel = 1e-9;  // relative slack for region containment tests

bool contained_in(const Region& inner, const Region& outer, const Tolerances& tol) {
    if (inner.empty()) return true;
    const double miss = region_subtract(inner, outer, tol).area();
    return miss <= std::max(1e-14, kContainRel * inner.area());
}

bool disjoint_from(const Region& a, const Region& b, const Tolerances& tol) {
    if (a.empty() || b.empty() || !a.bbox().overlaps(b.bbox())) return true;
    const double hit = region_intersect(a, b, tol).area();
    return hit <= std::max(1e-14, kContainRel * std::min(a.area(), b.area()));
}

struct Destination {
    Mat2 d;
    int power = 0;
    int rotation = 0;
    Point t;
};

// First (enumeration order, then lexicographic translation) pair with
// E + t contained in d(F).
std::optional<Destination> find_destination(const Region& E, const Region& F,
                                            const DilationSpec& dils, const Lattice& lat,
                                            const Tolerances& tol) {
    const EnumeratedFamily fam = enumerate_dilations(dils, tol);
    const BBox eb = E.bbox();
    std::size_t idx = 0;
    for (int n = dils.n_min; n <= dils.n_max; ++n) {
        for (int k = 0; k < dils.rotation_order; ++k) {
            const std::size_t extras = dils.extra_factors.empty() ? 1 : dils.extra_factors.size();
            for (std::size_t e = 0; e < extras; ++e, ++idx) {
                const Mat2& d = fam.matrices[idx];
                Region dF = affine_image(F, AffineMap::linear_map(d), tol);
                const BBox fb = dF.bbox();
                if (fb.width() < eb.width() || fb.height() < eb.height()) continue;
                const BBox tb{fb.xmin - eb.xmin, fb.ymin - eb.ymin, fb.xmax - eb.xmax,
                              fb.ymax - eb.ymax};
                if (tb.empty()) continue;
                auto cand = lattice_indices_in_box(lat, tb);
                std::vector<Point> pts;
                pts.reserve(cand.size());
                for (const auto& [i, j] : cand) pts.push_back(lat.point(i, j));
                std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
                    return a.x != b.x ? a.x < b.x : a.y < b.y;
                });
                for (const Point& t : pts) {
                    if (contained_in(translate(E, t), dF, tol)) {
                        return Destination{d, n, k, t};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

struct ExchangeEngine {
    Region E, F;
    DilationSpec dils;
    Lattice lat;
    Tolerances tol;
    int max_stages = 0;
    double tol_residual = 0.0;
    std::optional<Destination> forced;
    std::optional<std::vector<Region>> seed_override;  // replaces F \ reserved

    ConstructionTrace run(const std::string& name) {
        ConstructionTrace trace;
        trace.construction = name;
        trace.source_e = E;
        trace.source_f = F;
        trace.lattice = lat;

        if (E.area() <= tol.area || F.area() <= tol.area) {
            throw precondition_error(name + ": E and F must have positive area");
        }
        const BBox eb = E.bbox();
        if (!(eb.xmin <= tol.geom && eb.ymin <= tol.geom && eb.xmax >= -tol.geom &&
              eb.ymax >= -tol.geom)) {
            throw precondition_error(name + ": E must contain the origin in its closure");
        }
        double f_origin_gap = 1e300;
        for (const ConvexPolygon& p : F.pieces()) {
            if (p.contains({0.0, 0.0}, tol.geom)) f_origin_gap = 0.0;
        }
        if (f_origin_gap == 0.0) {
            throw precondition_error(name + ": F must be bounded away from the origin");
        }
        if (!is_expansive(dils.expansive_base)) {
            throw precondition_error(name + ": expansive_base is not expansive");
        }

        Destination dest;
        if (forced) {
            dest = *forced;
        } else {
            auto found = find_destination(E, F, dils, lat, tol);
            if (!found) {
                throw stuck_exchange_error(
                    name + ": no admissible (dilation, translation) places E inside a dilate of F"
                           " at this truncation (abstract pair condition 1 failed empirically)",
                    E);
            }
            dest = *found;
        }

        const Mat2 a = dils.expansive_base;
        const Mat2 d0_inv = dest.d.inverse(tol.det);
        const Region reserved =
            affine_image(translate(E, dest.t), AffineMap::linear_map(d0_inv), tol);

        // FIFO queue of unused F-mass.  One stage contracts one whole item,
        // so items are whole regions: the default seed is F minus the
        // reserved destination in one piece; constructions may pin a split.
        std::deque<Region> queue;
        if (seed_override) {
            for (const Region& r : *seed_override) {
                if (r.area() > tol.area) queue.push_back(r);
            }
        } else {
            Region seed = region_subtract(F, reserved, tol);
            if (seed.area() > tol.area) queue.push_back(std::move(seed));
        }

        Region homes;  // pieces kept at home (translation 0) inside the untouched zone
        double claimed_area = 0.0;
        const double e_area = E.area();
        int consecutive_failures = 0;
        int max_k_used = 0;

        int stage = 0;
        for (stage = 1; stage <= max_stages; ++stage) {
            const Region zone = affine_image(E, AffineMap::linear_map(a.pow(-stage, tol.det)), tol);
            // contract one queued item of unused F-mass into the untouched zone
            const bool dbg = std::getenv("WAVESET_DEBUG") != nullptr;
            if (!queue.empty() && zone.area() > 2.0 * tol.area) {
                Region x = std::move(queue.front());
                queue.pop_front();
                if (dbg) {
                    std::fprintf(stderr, "stage %d: queue=%zu item area=%.3e\n", stage,
                                 queue.size() + 1, x.area());
                }
                if (x.area() > std::max(tol.area, 1e-13)) {
                    bool placed = false;
                    const int k_cap = stage + 64;
                    for (int k = 1; k <= k_cap; ++k) {
                        Region h =
                            affine_image(x, AffineMap::linear_map(a.pow(-k, tol.det)), tol);
                        if (h.area() <= tol.area) {
                            // contracted below representable area: mass is lost
                            // at tolerance scale, treat as consumed
                            placed = true;
                            break;
                        }
                        if (contained_in(h, zone, tol) && disjoint_from(h, homes, tol)) {
                            homes = region_union(homes, h, tol);
                            ExchangeStep step;
                            step.piece = h;
                            step.translation = {0.0, 0.0};
                            step.iteration = stage;
                            step.dilation = a.pow(-k, tol.det);
                            step.dilation_power = -k;
                            trace.steps.push_back(step);
                            claimed_area += h.area();
                            max_k_used = std::max(max_k_used, k);
                            // the home's reserved spot becomes a hole in F
                            Region hole = affine_image(translate(h, dest.t),
                                                       AffineMap::linear_map(d0_inv), tol);
                            if (hole.area() > tol.area) queue.push_back(std::move(hole));
                            placed = true;
                            break;
                        }
                    }
                    if (!placed) {
                        if (dbg) std::fprintf(stderr, "  stage %d: REQUEUE\n", stage);
                        queue.push_back(std::move(x));
                        if (++consecutive_failures > static_cast<int>(queue.size()) + 2) {
                            throw stuck_exchange_error(
                                name + ": contraction queue starved; unusable F-mass remains",
                                queue.front());
                        }
                    } else {
                        consecutive_failures = 0;
                    }
                }
            }
            // translate the current annulus (minus home pieces) to the destination
            const Region zone_prev =
                affine_image(E, AffineMap::linear_map(a.pow(-(stage - 1), tol.det)), tol);
            Region ann = region_subtract(zone_prev, zone, tol);
            if (!homes.empty()) ann = region_subtract(ann, homes, tol);
            if (ann.area() > tol.area) {
                ExchangeStep step;
                step.piece = ann;
                step.translation = dest.t;
                step.iteration = stage;
                step.dilation = dest.d;
                step.dilation_power = dest.power;
                trace.steps.push_back(step);
                claimed_area += ann.area();
            }
            const double residual = e_area - claimed_area;
            double queue_mass = 0.0;
            for (const Region& q : queue) queue_mass += q.area();
            if (residual <= tol_residual && queue_mass <= tol_residual * std::max(1.0, F.area())) {
                trace.converged = true;
                break;
            }
            trace.converged = false;
        }
        trace.stages = std::min(stage, max_stages);

        std::vector<ConvexPolygon> result_pieces;
        for (const ExchangeStep& s : trace.steps) {
            const Region img = translate(s.piece, s.translation);
            for (const ConvexPolygon& p : img.pieces()) result_pieces.push_back(p);
        }
        trace.result = Region(std::move(result_pieces));
        trace.residual_area = e_area - trace.result.area();
        for (const Region& q : queue) trace.unconsumed_f_area += q.area();

        // widen the family so every step dilation is indexable
        const int lo = std::min(dils.n_min, std::min(-max_k_used, dest.power));
        const int hi = std::max(dils.n_max, dest.power);
        trace.family = dils.with_power_range(lo, hi);
        for (ExchangeStep& s : trace.steps) {
            const int rot = (s.dilation_power == dest.power &&
                             frobenius_distance(s.dilation, dest.d) <= tol.geom)
                                ? dest.rotation
                                : 0;
            s.dilation_index = trace.family.index_of(s.dilation_power, rot);
        }
        return trace;
    }
};

}  // namespace

// ---------------------------------------------------------------------------

Region example32_e() { return Region::rect(0.0, 0.0, 1.0, 1.0); }

Region example32_f() {
    return region_subtract(Region::rect(0.0, 0.0, 2.0, 3.0), example32_e());
}

DilationSpec example32_dilations(int power_reach) {
    DilationSpec spec;
    spec.rotation_order = 4;
    spec.expansive_base = Mat2::diag(2.0, 3.0);
    spec.n_min = -power_reach;
    spec.n_max = power_reach;
    spec.order = FactorOrder::RotationsThenPowers;
    return spec;
}

ConstructionTrace construct_diag_rot(int truncation_J, const Tolerances& tol) {
    if (truncation_J < 1 || truncation_J > 40) {
        throw precondition_error("construct_diag_rot: truncation_J must be in [1, 40]");
    }
    ExchangeEngine eng;
    eng.E = example32_e();
    eng.F = example32_f();
    eng.dils = example32_dilations(truncation_J + 2);
    eng.lat = Lattice{};
    eng.tol = tol;
    eng.max_stages = truncation_J;
    eng.tol_residual = 0.0;  // run all J stages
    eng.forced = {Destination{Mat2::identity(), 0, 0, Point{1.0, 0.0}}};
    // F \ (E + (1,0)) split into the left and right columns above E, left
    // first, so stage 1 contracts exactly A^{-2}[(0,1)x(1,3)]
    eng.seed_override = {{Region::rect(0.0, 1.0, 1.0, 3.0), Region::rect(1.0, 1.0, 2.0, 3.0)}};
    ConstructionTrace trace = eng.run("diag-rot");
    trace.converged = true;  // truncation is the contract; residual shrinks like 6^-J
    return trace;
}

Region sector_annulus(double a, int m, int pow_lo, int pow_hi, const Tolerances& tol) {
    if (a <= 1.0) throw precondition_error("sector_annulus: a must exceed 1");
    if (pow_lo >= pow_hi) throw precondition_error("sector_annulus: empty power range");
    std::vector<ConvexPolygon> pieces;
    if (m == 1) {
        for (int n = pow_lo; n < pow_hi; ++n) {
            const double r = 0.5 * std::pow(a, n);
            const double s = 0.5 * std::pow(a, n + 1);
            // square frame decomposed into four trapezoid-free rectangles
            pieces.push_back(ConvexPolygon::rect(-s, -s, s, -r));
            pieces.push_back(ConvexPolygon::rect(-s, r, s, s));
            pieces.push_back(ConvexPolygon::rect(-s, -r, -r, r));
            pieces.push_back(ConvexPolygon::rect(r, -r, s, r));
        }
        return Region(std::move(pieces));
    }
    const double phi = 2.0 * std::numbers::pi / static_cast<double>(m);
    const int segs = std::max(2, static_cast<int>(std::lround(64.0 * phi /
                                                              (2.0 * std::numbers::pi))));
    for (int n = pow_lo; n < pow_hi; ++n) {
        const double r = std::pow(a, n);
        const double s = std::pow(a, n + 1);
        for (int i = 0; i < segs; ++i) {
            const double t0 = phi * i / segs;
            const double t1 = phi * (i + 1) / segs;
            const Point u0{std::cos(t0), std::sin(t0)};
            const Point u1{std::cos(t1), std::sin(t1)};
            auto quad = ConvexPolygon::make(
                {{r * u0.x, r * u0.y}, {s * u0.x, s * u0.y}, {s * u1.x, s * u1.y},
                 {r * u1.x, r * u1.y}},
                tol);
            if (quad) pieces.push_back(std::move(*quad));
        }
    }
    return Region(std::move(pieces));
}

ConstructionTrace construct_rot_scale(double a, int m, int max_iters, double tol_residual,
                                      const Tolerances& tol) {
    if (a <= 1.0) throw precondition_error("construct_rot_scale: a must exceed 1");
    if (m < 1) throw precondition_error("construct_rot_scale: m must be >= 1");
    if (tol_residual < 1e-10) {
        throw precondition_error("construct_rot_scale: tol must be >= 1e-10");
    }
    Region E;
    if (m == 1) {
        E = Region::rect(-0.5, -0.5, 0.5, 0.5);
    } else if (m == 2) {
        E = Region::rect(-1.0, 0.0, 1.0, 1.0);
    } else if (m == 4) {
        E = Region::rect(0.0, 0.0, 1.0, 1.0);
    } else {
        const double t = std::tan(2.0 * std::numbers::pi / static_cast<double>(m));
        if (t <= 0.0) {
            throw precondition_error(
                "construct_rot_scale: E = [0,1]x[0,tan(2pi/m)] degenerates for this m");
        }
        E = Region::rect(0.0, 0.0, 1.0, t);
    }
    const Region F = sector_annulus(a, m, 0, 1, tol);

    DilationSpec dils;
    dils.rotation_order = 1;
    dils.expansive_base = Mat2::scalar(a);
    dils.n_min = -(max_iters + 2);
    dils.n_max = max_iters + 2;
    dils.order = FactorOrder::PowersThenRotations;

    ConstructionTrace trace =
        dls_exchange(E, F, dils, Lattice{}, max_iters, tol_residual, tol);
    trace.construction = "rot-scale";
    if (!trace.converged) {
        Region residue = region_subtract(trace.source_e, trace.result, tol);
        throw nonconvergence_error("construct_rot_scale: residual " +
                                       std::to_string(trace.residual_area) + " above tolerance " +
                                       std::to_string(tol_residual) + " after " +
                                       std::to_string(max_iters) + " iterations",
                                   residue, trace.residual_area);
    }
    return trace;
}

ConstructionTrace dls_exchange(const Region& E, const Region& F, const DilationSpec& dils,
                               const Lattice& lat, int max_iters, double tol_residual,
                               const Tolerances& tol) {
    ExchangeEngine eng;
    eng.E = E;
    eng.F = F;
    eng.dils = dils;
    eng.lat = lat;
    eng.tol = tol;
    eng.max_stages = max_iters;
    eng.tol_residual = tol_residual;
    return eng.run("dls-exchange");
}

ConstructionTrace dls_exchange_with_destination(const Region& E, const Region& F,
                                                const DilationSpec& dils, const Lattice& lat,
                                                int max_iters, double tol_residual, int dest_power,
                                                int dest_rotation, const Point& dest_translation,
                                                const Tolerances& tol) {
    ExchangeEngine eng;
    eng.E = E;
    eng.F = F;
    eng.dils = dils;
    eng.lat = lat;
    eng.tol = tol;
    eng.max_stages = max_iters;
    eng.tol_residual = tol_residual;
    const double theta = 2.0 * std::numbers::pi * dest_rotation / dils.rotation_order;
    const Mat2 d = dils.order == FactorOrder::RotationsThenPowers
                       ? Mat2::rotation(theta) * dils.expansive_base.pow(dest_power, tol.det)
                       : dils.expansive_base.pow(dest_power, tol.det) * Mat2::rotation(theta);
    eng.forced = {Destination{d, dest_power, dest_rotation, dest_translation}};
    return eng.run("dls-exchange");
}

InducedTile induce_subspace_tile(const Region& omega, const std::vector<Mat2>& b_list,
                                 const Tolerances& tol) {
    InducedTile out;
    std::vector<Region> images;
    images.reserve(b_list.size());
    for (const Mat2& b : b_list) {
        images.push_back(affine_image(omega, AffineMap::linear_map(b), tol));
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            if (!images[i].bbox().overlaps(images[j].bbox())) continue;
            out.overlap_mass += region_intersect(images[i], images[j], tol).area();
        }
    }
    Region acc;
    for (const Region& img : images) acc = region_union(acc, img, tol);
    out.region = std::move(acc);
    return out;
}

std::pair<std::vector<Mat2>, std::vector<Mat2>> factor_dilation_set(const DilationSpec& spec,
                                                                    GroupFactor group_factor,
                                                                    const Tolerances& tol) {
    const bool scalar_base = std::abs(spec.expansive_base.b) <= tol.geom &&
                             std::abs(spec.expansive_base.c) <= tol.geom &&
                             std::abs(spec.expansive_base.a - spec.expansive_base.d) <= tol.geom;
    std::vector<Mat2> extras = spec.extra_factors;
    if (extras.empty()) extras.push_back(Mat2::identity());

    std::vector<Mat2> d1, group;
    if (group_factor == GroupFactor::Powers) {
        if (spec.order == FactorOrder::PowersThenRotations && !scalar_base) {
            throw factorization_error(
                "factor_dilation_set: power factor does not act from the right under "
                "powers-then-rotations with a non-scalar base");
        }
        for (int k = 0; k < spec.rotation_order; ++k) {
            const Mat2 rk = Mat2::rotation(2.0 * std::numbers::pi * k / spec.rotation_order);
            for (const Mat2& e : extras) d1.push_back(e * rk);
        }
        for (int n = spec.n_min; n <= spec.n_max; ++n) {
            group.push_back(spec.expansive_base.pow(n, tol.det));
        }
    } else {
        if (spec.order == FactorOrder::RotationsThenPowers && !scalar_base) {
            throw factorization_error(
                "factor_dilation_set: rotation factor does not act from the right under "
                "rotations-then-powers with a non-scalar base");
        }
        for (int n = spec.n_min; n <= spec.n_max; ++n) {
            for (const Mat2& e : extras) {
                d1.push_back(e * spec.expansive_base.pow(n, tol.det));
            }
        }
        for (int k = 0; k < spec.rotation_order; ++k) {
            group.push_back(Mat2::rotation(2.0 * std::numbers::pi * k / spec.rotation_order));
        }
    }
    if (!is_direct_product(d1, group, tol)) {
        throw factorization_error("factor_dilation_set: product is not direct on the truncation");
    }
    return {std::move(d1), std::move(group)};
}

ExwaveResult exwave_pipeline(const Region& E, const DilationSpec& dils, const Lattice& lat,
                             const Region& window, double tol_residual, const Tolerances& tol) {
    if (!is_expansive(dils.expansive_base)) {
        throw hypothesis_error("expansive-base", "the generator is not an expansive matrix");
    }
    // truncated closure a*D ⊆ D: multiplying by the base shifts the power
    // window, so every a*d with d over [n_min, n_max-1] must appear
    {
        const EnumeratedFamily inner =
            enumerate_dilations(dils.with_power_range(dils.n_min, dils.n_max - 1), tol);
        const EnumeratedFamily full = enumerate_dilations(dils, tol);
        for (const Mat2& d : inner.matrices) {
            const Mat2 ad = dils.expansive_base * d;  // the lemma's a*D = D is left action
            bool found = false;
            for (const Mat2& f : full.matrices) {
                if (frobenius_distance(ad, f) <= 1e-9) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw hypothesis_error("closure",
                                       "a*D = D fails at the truncation for some enumerated d");
            }
        }
    }
    // D^T E must tile the window
    const EnumeratedFamily transposed = enumerate_dilations(dils.transposed(), tol);
    TilingReport dt_tiling =
        check_mult_tiling(E, transposed.matrices, window, 1e-3, 1e-3, Region(), tol);
    if (!dt_tiling.pass) {
        throw hypothesis_error("multiplicative-tiling",
                               "D^T E is not a measurable tiling of the window (overlap " +
                                   std::to_string(dt_tiling.total_overlap) + ", gap " +
                                   std::to_string(dt_tiling.gap_area) + ")");
    }

    const Mat2 b = dils.expansive_base.transpose();
    std::vector<Mat2> b_powers;
    for (int k = dils.n_min; k <= dils.n_max; ++k) b_powers.push_back(b.pow(k, tol.det));
    InducedTile n_tile = induce_subspace_tile(E, b_powers, tol);

    // starter tile: the lattice cell basis * [0,1]^2 (origin in its closure)
    const Mat2& bb = lat.basis;
    auto cell_poly = ConvexPolygon::make(
        {{0.0, 0.0}, {bb.a, bb.c}, {bb.a + bb.b, bb.c + bb.d}, {bb.b, bb.d}}, tol);
    if (!cell_poly) throw precondition_error("exwave_pipeline: degenerate lattice cell");
    const Region cell({*cell_poly});

    DilationSpec bspec;
    bspec.rotation_order = 1;
    bspec.expansive_base = b;
    bspec.n_min = dils.n_min;
    bspec.n_max = dils.n_max;
    bspec.order = FactorOrder::PowersThenRotations;

    ExwaveResult out;
    out.trace = dls_exchange(cell, E, bspec, lat, std::max(24, dils.n_max + 8), tol_residual, tol);
    out.trace.construction = "exwave";
    out.n_region = n_tile.region;
    out.n_overlap_mass = n_tile.overlap_mass;
    out.dt_tiling_of_window = std::move(dt_tiling);

    const Region n_window = region_intersect(n_tile.region, window, tol);
    out.b_tiling_of_n =
        check_mult_tiling(out.trace.result, b_powers, n_window, 1e-3, 1e-3, Region(), tol);
    return out;
}

}  // namespace waveset
