#include "waveset/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace waveset {

std::size_t DilationSpec::enumeration_size() const {
    const std::size_t extras = extra_factors.empty() ? 1 : extra_factors.size();
    return static_cast<std::size_t>(rotation_order) *
           static_cast<std::size_t>(n_max - n_min + 1) * extras;
}

std::size_t DilationSpec::index_of(int n, int k, std::size_t e) const {
    const std::size_t extras = extra_factors.empty() ? 1 : extra_factors.size();
    return (static_cast<std::size_t>(n - n_min) * static_cast<std::size_t>(rotation_order) +
            static_cast<std::size_t>(k)) *
               extras +
           e;
}

DilationSpec DilationSpec::transposed() const {
    // (extra * R^k * a^n)^T = (a^T)^n * R^{-k} * extra^T; represented by the
    // transposed base, the same rotation order (k -> m-k), transposed extras,
    // and the opposite product order.
    DilationSpec out = *this;
    out.expansive_base = expansive_base.transpose();
    for (Mat2& m : out.extra_factors) m = m.transpose();
    out.order = order == FactorOrder::RotationsThenPowers ? FactorOrder::PowersThenRotations
                                                          : FactorOrder::RotationsThenPowers;
    return out;
}

DilationSpec DilationSpec::with_power_range(int lo, int hi) const {
    DilationSpec out = *this;
    out.n_min = lo;
    out.n_max = hi;
    return out;
}

bool is_expansive(const Mat2& m, double eps_eig) {
    const double tr = m.a + m.d;
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    double min_mod;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        min_mod = std::min(std::abs(0.5 * (tr - s)), std::abs(0.5 * (tr + s)));
    } else {
        min_mod = std::sqrt(det);  // complex pair, both moduli sqrt(det)
    }
    return min_mod > 1.0 + eps_eig;
}

EnumeratedFamily enumerate_dilations(const DilationSpec& spec, const Tolerances& tol) {
    if (std::abs(spec.expansive_base.det()) <= tol.det) {
        throw invalid_map_error("enumerate_dilations: expansive_base is singular");
    }
    if (spec.rotation_order < 1) {
        throw precondition_error("enumerate_dilations: rotation_order must be >= 1");
    }
    if (spec.n_min > spec.n_max) {
        throw precondition_error("enumerate_dilations: empty power range");
    }
    std::vector<Mat2> extras = spec.extra_factors;
    if (extras.empty()) extras.push_back(Mat2::identity());

    EnumeratedFamily out;
    out.matrices.reserve(spec.enumeration_size());
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
        const Mat2 an = spec.expansive_base.pow(n, tol.det);
        for (int k = 0; k < spec.rotation_order; ++k) {
            const Mat2 rk =
                Mat2::rotation(2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(spec.rotation_order));
            for (const Mat2& e : extras) {
                const Mat2 m = spec.order == FactorOrder::RotationsThenPowers ? e * rk * an
                                                                              : e * an * rk;
                out.matrices.push_back(m);
            }
        }
    }
    for (std::size_t i = 0; i < out.matrices.size() && !out.duplicate_warning; ++i) {
        for (std::size_t j = i + 1; j < out.matrices.size(); ++j) {
            if (frobenius_distance(out.matrices[i], out.matrices[j]) <= tol.geom) {
                out.duplicate_warning = true;
                out.warning = "direct-product violation: duplicate matrices at indices " +
                              std::to_string(i) + " and " + std::to_string(j);
                break;
            }
        }
    }
    return out;
}

bool is_direct_product(const std::vector<Mat2>& a_list, const std::vector<Mat2>& b_list,
                       const Tolerances& tol) {
    std::vector<Mat2> products;
    products.reserve(a_list.size() * b_list.size());
    for (const Mat2& a : a_list) {
        for (const Mat2& b : b_list) products.push_back(a * b);
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
        for (std::size_t j = i + 1; j < products.size(); ++j) {
            if (frobenius_distance(products[i], products[j]) <= tol.geom) return false;
        }
    }
    return true;
}

Lattice dual_lattice(const Lattice& t, double det_tol) {
    return Lattice{t.basis.inverse(det_tol).transpose()};
}

std::vector<std::pair<int, int>> lattice_indices_in_box(const Lattice& t, const BBox& box) {
    std::vector<std::pair<int, int>> out;
    if (box.empty()) return out;
    const Mat2 inv = t.basis.inverse();
    double ilo = 0, ihi = 0, jlo = 0, jhi = 0;
    bool first = true;
    const Point corners[4] = {{box.xmin, box.ymin},
                              {box.xmax, box.ymin},
                              {box.xmin, box.ymax},
                              {box.xmax, box.ymax}};
    for (const Point& c : corners) {
        const Point q = inv.apply(c);
        if (first) {
            ilo = ihi = q.x;
            jlo = jhi = q.y;
            first = false;
        } else {
            ilo = std::min(ilo, q.x);
            ihi = std::max(ihi, q.x);
            jlo = std::min(jlo, q.y);
            jhi = std::max(jhi, q.y);
        }
    }
    const int i0 = static_cast<int>(std::floor(ilo - 1e-9));
    const int i1 = static_cast<int>(std::ceil(ihi + 1e-9));
    const int j0 = static_cast<int>(std::floor(jlo - 1e-9));
    const int j1 = static_cast<int>(std::ceil(jhi + 1e-9));
    for (int i = i0; i <= i1; ++i) {
        for (int j = j0; j <= j1; ++j) {
            const Point p = t.point(i, j);
            if (p.x >= box.xmin - 1e-12 && p.x <= box.xmax + 1e-12 && p.y >= box.ymin - 1e-12 &&
                p.y <= box.ymax + 1e-12) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

std::vector<Point> lattice_points(const Lattice& t, const Region& window, const Tolerances& tol) {
    std::vector<Point> out;
    for (const auto& [i, j] : lattice_indices_in_box(t, window.bbox())) {
        const Point p = t.point(i, j);
        if (window.contains(p, tol.geom)) out.push_back(p);
    }
    return out;
}

}  // namespace waveset
