#ifndef WAVESET_GEOMETRY_HPP
#define WAVESET_GEOMETRY_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace waveset {

// ---------------------------------------------------------------------------
// errors

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_map_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// tolerances
//
// Defaults match the verification scales used throughout: geometric vertex
// tolerance, sliver-drop area threshold, matrix invertibility floor, and the
// phase threshold below which the edge integral switches to its series form.

struct Tolerances {
    double geom = 1e-12;
    double area = 1e-12;
    double det = 1e-12;
    double phase = 1e-8;
};

const Tolerances& default_tolerances();

// ---------------------------------------------------------------------------
// scalars and small linear algebra

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double px, double py) : x(px), y(py) {}

    Point operator+(const Point& p) const { return {x + p.x, y + p.y}; }
    Point operator-(const Point& p) const { return {x - p.x, y - p.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point&) const = default;
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double norm(const Point& a);
bool finite(const Point& a);

/// Row-major 2x2 matrix.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
    static Mat2 rotation(double theta);
    static Mat2 scalar(double s) { return diag(s, s); }

    double det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse(double det_tol = 1e-12) const;
    Mat2 operator*(const Mat2& o) const;
    Point apply(const Point& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
    Mat2 pow(int n, double det_tol = 1e-12) const;
};

double frobenius_distance(const Mat2& m, const Mat2& n);

struct AffineMap {
    Mat2 linear;
    Point shift;

    static AffineMap translation(const Point& t) { return {Mat2::identity(), t}; }
    static AffineMap linear_map(const Mat2& m) { return {m, Point{0.0, 0.0}}; }
    Point apply(const Point& p) const { return linear.apply(p) + shift; }
};

// ---------------------------------------------------------------------------
// bounding boxes

struct BBox {
    double xmin = 0.0, ymin = 0.0, xmax = -1.0, ymax = -1.0;  // empty by default

    bool empty() const { return xmax < xmin || ymax < ymin; }
    double width() const { return empty() ? 0.0 : xmax - xmin; }
    double height() const { return empty() ? 0.0 : ymax - ymin; }
    double diameter() const;
    void expand(const Point& p);
    void expand(const BBox& o);
    BBox padded(double r) const;
    bool overlaps(const BBox& o) const {
        return !empty() && !o.empty() && xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax &&
               o.ymin <= ymax;
    }
};

// ---------------------------------------------------------------------------
// convex polygon
//
// Vertices are stored counterclockwise with no (near-)collinear triples.
// Construction normalizes: duplicate and collinear vertices are collapsed at
// the geometric tolerance and polygons whose area falls below the sliver
// threshold are rejected (make() returns nullopt).

class ConvexPolygon {
  public:
    /// Normalize and validate a vertex loop.  Returns nullopt for slivers.
    /// Throws error for finite-but-nonconvex input.
    static std::optional<ConvexPolygon> make(std::vector<Point> verts,
                                             const Tolerances& tol = default_tolerances());

    /// Axis-aligned rectangle [x0,x1] x [y0,y1].
    static ConvexPolygon rect(double x0, double y0, double x1, double y1);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    double area() const { return area_; }
    double perimeter() const;
    const BBox& bbox() const { return bbox_; }

    bool contains(const Point& p, double eps = 1e-12) const;

  private:
    ConvexPolygon() = default;
    std::vector<Point> verts_;
    BBox bbox_;
    double area_ = 0.0;

    friend class Region;
    friend std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon&, const Point&, double,
                                                       const Tolerances&);
};

/// Clip to the halfplane n.x <= c.  Returns nullopt when the clip degenerates.
std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const Point& n, double c,
                                            const Tolerances& tol = default_tolerances());

std::optional<ConvexPolygon> convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b,
                                              const Tolerances& tol = default_tolerances());

/// a minus b, decomposed by clipping against the halfplane complements of b's
/// edges in edge order.  Pieces are convex and interior-disjoint.
std::vector<ConvexPolygon> convex_subtract(const ConvexPolygon& a, const ConvexPolygon& b,
                                           const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// region: finite union of interior-disjoint convex polygons

class Region {
  public:
    Region() = default;
    explicit Region(std::vector<ConvexPolygon> pieces);

    /// Region from a list of vertex loops (the shared region literal format).
    static Region from_vertex_loops(const std::vector<std::vector<Point>>& loops,
                                    const Tolerances& tol = default_tolerances());
    static Region rect(double x0, double y0, double x1, double y1);

    const std::vector<ConvexPolygon>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }
    bool empty() const { return pieces_.empty(); }
    double area() const { return area_; }
    double perimeter() const;
    const BBox& bbox() const { return bbox_; }

    bool contains(const Point& p, double eps = 1e-12) const;

  private:
    std::vector<ConvexPolygon> pieces_;
    BBox bbox_;
    double area_ = 0.0;
};

Region affine_image(const Region& r, const AffineMap& m,
                    const Tolerances& tol = default_tolerances());
Region translate(const Region& r, const Point& t);

Region region_union(const Region& a, const Region& b,
                    const Tolerances& tol = default_tolerances());
Region region_intersect(const Region& a, const Region& b,
                        const Tolerances& tol = default_tolerances());
Region region_subtract(const Region& a, const Region& b,
                       const Tolerances& tol = default_tolerances());

double area(const Region& r);

/// Closed-form integral of e^{-2 pi i <k, xi>} over the region, edge by edge
/// via the divergence theorem.  At k = 0 this short-circuits to the area.
std::complex<double> indicator_fourier(const Region& r, const Point& k,
                                       const Tolerances& tol = default_tolerances());

/// Grid-counting estimate of area(r ∩ window) on a resolution^2-scale grid
/// over the window's bounding box (cell centers, scanline per piece).
double raster_area(const Region& r, const Region& window, int resolution,
                   const Tolerances& tol = default_tolerances());

struct MonteCarloEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
};

/// Uniform sampling over the window region (piece picked by area, then a
/// uniform point in its fan triangulation).  Deterministic for a given seed:
/// samples are drawn in chunks of 65536 and chunk i uses an engine seeded
/// with splitmix64(seed ^ (i+1)), so any chunk-parallel evaluation yields the
/// same stream as the sequential one.
MonteCarloEstimate monte_carlo_area(const Region& r, const Region& window, std::uint64_t samples,
                                    std::uint64_t seed);

}  // namespace waveset

#endif
