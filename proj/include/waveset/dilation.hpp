#ifndef WAVESET_DILATION_HPP
#define WAVESET_DILATION_HPP

#include <string>
#include <vector>

#include "waveset/geometry.hpp"

namespace waveset {

/// Parametric description of a truncated dilation family: a finite cyclic
/// rotation factor {R^k, k = 0..m-1}, powers of an expansive generator over
/// [n_min, n_max], and an optional finite set of extra left factors.
/// `order` names the product convention:
///   rotations-then-powers:  extra * R^k * base^n   (e.g. {R^k A^n})
///   powers-then-rotations:  extra * base^n * R^k   (e.g. {a^n R^k})
/// Enumeration is always sorted lexicographically by (n, k, extra index).
enum class FactorOrder { RotationsThenPowers, PowersThenRotations };

struct DilationSpec {
    int rotation_order = 1;
    Mat2 expansive_base = Mat2::identity();
    int n_min = 0;
    int n_max = 0;
    std::vector<Mat2> extra_factors;  // empty means {identity}
    FactorOrder order = FactorOrder::RotationsThenPowers;

    std::size_t enumeration_size() const;
    /// Index of the matrix with parameters (n, k, e) in the enumeration.
    std::size_t index_of(int n, int k, std::size_t e = 0) const;
    DilationSpec transposed() const;
    DilationSpec with_power_range(int lo, int hi) const;
};

struct EnumeratedFamily {
    std::vector<Mat2> matrices;
    bool duplicate_warning = false;
    std::string warning;
};

/// All eigenvalue moduli strictly exceed 1 (+ slack eps_eig = 1e-10); the
/// 2x2 moduli come from the closed-form roots of the characteristic
/// polynomial.
bool is_expansive(const Mat2& m, double eps_eig = 1e-10);

EnumeratedFamily enumerate_dilations(const DilationSpec& spec,
                                     const Tolerances& tol = default_tolerances());

/// Directness of the product on the given truncations: every a*b must be
/// pairwise distinct (Frobenius distance above the geometric tolerance).
bool is_direct_product(const std::vector<Mat2>& a_list, const std::vector<Mat2>& b_list,
                       const Tolerances& tol = default_tolerances());

struct Lattice {
    Mat2 basis = Mat2::identity();  // columns generate basis * Z^2

    double covolume() const { return std::abs(basis.det()); }
    Point point(int i, int j) const {
        return {basis.a * i + basis.b * j, basis.c * i + basis.d * j};
    }
};

Lattice dual_lattice(const Lattice& t, double det_tol = 1e-12);

/// Lattice points inside the window's bounding box, filtered by membership
/// in the window region; sorted lexicographically by integer coordinates.
std::vector<Point> lattice_points(const Lattice& t, const Region& window,
                                  const Tolerances& tol = default_tolerances());

/// Integer coordinate pairs whose lattice point lies in the axis box,
/// sorted lexicographically.  Used by checks that need the indices.
std::vector<std::pair<int, int>> lattice_indices_in_box(const Lattice& t, const BBox& box);

}  // namespace waveset

#endif
