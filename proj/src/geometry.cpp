#include "waveset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace waveset {

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

double norm(const Point& a) { return std::hypot(a.x, a.y); }

bool finite(const Point& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

Mat2 Mat2::rotation(double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {ct, -st, st, ct};
}

namespace {

// scale-relative singularity test so small-but-invertible maps (deep
// contractions) stay legal
bool near_singular(const Mat2& m, double det_tol) {
    const double r1 = std::hypot(m.a, m.b);
    const double r2 = std::hypot(m.c, m.d);
    return std::abs(m.det()) <= det_tol * std::max(r1 * r2, 1e-300);
}

}  // namespace

Mat2 Mat2::inverse(double det_tol) const {
    if (near_singular(*this, det_tol)) {
        throw invalid_map_error("matrix is singular (|det| <= tolerance)");
    }
    const double dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::pow(int n, double det_tol) const {
    Mat2 base = n >= 0 ? *this : inverse(det_tol);
    int k = n >= 0 ? n : -n;
    Mat2 out = Mat2::identity();
    while (k > 0) {
        if (k & 1) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

double frobenius_distance(const Mat2& m, const Mat2& n) {
    const double da = m.a - n.a, db = m.b - n.b, dc = m.c - n.c, dd = m.d - n.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

double BBox::diameter() const { return empty() ? 0.0 : std::hypot(width(), height()); }

void BBox::expand(const Point& p) {
    if (empty()) {
        xmin = xmax = p.x;
        ymin = ymax = p.y;
        return;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
}

void BBox::expand(const BBox& o) {
    if (o.empty()) return;
    expand(Point{o.xmin, o.ymin});
    expand(Point{o.xmax, o.ymax});
}

BBox BBox::padded(double r) const {
    if (empty()) return {};
    return {xmin - r, ymin - r, xmax + r, ymax + r};
}

// ---------------------------------------------------------------------------
// convex polygon

namespace {

double signed_area(const std::vector<Point>& v) {
    double s = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % n];
        s += cross(p, q);
    }
    return 0.5 * s;
}

// Collapse duplicate and collinear vertices.  Collinearity is scale
// invariant: |cross(e1, e2)| <= geom * |e1| * |e2|.
void collapse_vertices(std::vector<Point>& v, double geom) {
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() >= 3;) {
            const std::size_t n = v.size();
            const Point& prev = v[(i + n - 1) % n];
            const Point& cur = v[i];
            const Point& next = v[(i + 1) % n];
            const Point e1 = cur - prev;
            const Point e2 = next - cur;
            const double l1 = norm(e1), l2 = norm(e2);
            if (l2 <= geom || std::abs(cross(e1, e2)) <= geom * std::max(l1 * l2, 1.0e-300)) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else {
                ++i;
            }
        }
    }
}

}  // namespace

std::optional<ConvexPolygon> ConvexPolygon::make(std::vector<Point> verts, const Tolerances& tol) {
    for (const Point& p : verts) {
        if (!finite(p)) throw error("polygon vertex is not finite");
    }
    if (verts.size() < 3) return std::nullopt;
    if (signed_area(verts) < 0.0) std::reverse(verts.begin(), verts.end());
    collapse_vertices(verts, tol.geom);
    if (verts.size() < 3) return std::nullopt;
    const double a = signed_area(verts);
    if (a <= tol.area) return std::nullopt;
    // convexity after collapse: every turn must be a left turn
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e1 = verts[i] - verts[(i + n - 1) % n];
        const Point e2 = verts[(i + 1) % n] - verts[i];
        if (cross(e1, e2) < -1e-9 * std::max(norm(e1) * norm(e2), 1.0)) {
            throw error("polygon is not convex");
        }
    }
    ConvexPolygon poly;
    poly.verts_ = std::move(verts);
    poly.area_ = a;
    for (const Point& p : poly.verts_) poly.bbox_.expand(p);
    return poly;
}

ConvexPolygon ConvexPolygon::rect(double x0, double y0, double x1, double y1) {
    auto p = make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    if (!p) throw error("degenerate rectangle");
    return *p;
}

double ConvexPolygon::perimeter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        s += norm(verts_[(i + 1) % verts_.size()] - verts_[i]);
    }
    return s;
}

bool ConvexPolygon::contains(const Point& p, double eps) const {
    if (p.x < bbox_.xmin - eps || p.x > bbox_.xmax + eps || p.y < bbox_.ymin - eps ||
        p.y > bbox_.ymax + eps) {
        return false;
    }
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = verts_[(i + 1) % n] - verts_[i];
        if (cross(e, p - verts_[i]) < -eps * std::max(norm(e), 1.0)) return false;
    }
    return true;
}

std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const Point& n, double c,
                                            const Tolerances& tol) {
    const std::vector<Point>& v = poly.vertices();
    std::vector<Point> out;
    out.reserve(v.size() + 2);
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& s = v[i];
        const Point& e = v[(i + 1) % m];
        const double ds = dot(n, s) - c;
        const double de = dot(n, e) - c;
        if (ds <= 0.0) out.push_back(s);
        if ((ds < 0.0 && de > 0.0) || (ds > 0.0 && de < 0.0)) {
            const double t = ds / (ds - de);
            out.push_back({s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
        }
    }
    return ConvexPolygon::make(std::move(out), tol);
}

namespace {

// edge i of a CCW polygon as halfplane n.x <= c containing the interior
void edge_halfplane(const ConvexPolygon& q, std::size_t i, Point& n, double& c) {
    const std::vector<Point>& v = q.vertices();
    const Point a = v[i];
    const Point e = v[(i + 1) % v.size()] - a;
    n = {e.y, -e.x};
    c = e.y * a.x - e.x * a.y;
}

}  // namespace

std::optional<ConvexPolygon> convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b,
                                              const Tolerances& tol) {
    if (!a.bbox().overlaps(b.bbox())) return std::nullopt;
    std::optional<ConvexPolygon> cur = a;
    for (std::size_t i = 0; i < b.size() && cur; ++i) {
        Point n;
        double c;
        edge_halfplane(b, i, n, c);
        cur = clip_halfplane(*cur, n, c, tol);
    }
    return cur;
}

std::vector<ConvexPolygon> convex_subtract(const ConvexPolygon& a, const ConvexPolygon& b,
                                           const Tolerances& tol) {
    if (!a.bbox().overlaps(b.bbox())) return {a};
    std::vector<ConvexPolygon> out;
    std::optional<ConvexPolygon> core = a;  // part still inside all processed halfplanes
    for (std::size_t i = 0; i < b.size() && core; ++i) {
        Point n;
        double c;
        edge_halfplane(b, i, n, c);
        if (auto piece = clip_halfplane(*core, {-n.x, -n.y}, -c, tol)) {
            out.push_back(std::move(*piece));
        }
        core = clip_halfplane(*core, n, c, tol);
    }
    return out;
}

// ---------------------------------------------------------------------------
// region

Region::Region(std::vector<ConvexPolygon> pieces) : pieces_(std::move(pieces)) {
    for (const ConvexPolygon& p : pieces_) {
        bbox_.expand(p.bbox());
        area_ += p.area();
    }
}

Region Region::from_vertex_loops(const std::vector<std::vector<Point>>& loops,
                                 const Tolerances& tol) {
    std::vector<ConvexPolygon> pieces;
    pieces.reserve(loops.size());
    for (const auto& loop : loops) {
        if (auto p = ConvexPolygon::make(loop, tol)) pieces.push_back(std::move(*p));
    }
    return Region(std::move(pieces));
}

Region Region::rect(double x0, double y0, double x1, double y1) {
    return Region({ConvexPolygon::rect(x0, y0, x1, y1)});
}

double Region::perimeter() const {
    double s = 0.0;
    for (const ConvexPolygon& p : pieces_) s += p.perimeter();
    return s;
}

bool Region::contains(const Point& p, double eps) const {
    if (pieces_.empty()) return false;
    if (p.x < bbox_.xmin - eps || p.x > bbox_.xmax + eps || p.y < bbox_.ymin - eps ||
        p.y > bbox_.ymax + eps) {
        return false;
    }
    for (const ConvexPolygon& piece : pieces_) {
        if (piece.contains(p, eps)) return true;
    }
    return false;
}

Region affine_image(const Region& r, const AffineMap& m, const Tolerances& tol) {
    if (near_singular(m.linear, tol.det)) {
        throw invalid_map_error("affine_image: singular linear part");
    }
    std::vector<ConvexPolygon> pieces;
    pieces.reserve(r.piece_count());
    for (const ConvexPolygon& p : r.pieces()) {
        std::vector<Point> verts;
        verts.reserve(p.size());
        for (const Point& v : p.vertices()) verts.push_back(m.apply(v));
        if (auto q = ConvexPolygon::make(std::move(verts), tol)) pieces.push_back(std::move(*q));
    }
    return Region(std::move(pieces));
}

Region translate(const Region& r, const Point& t) {
    return affine_image(r, AffineMap::translation(t));
}

Region region_intersect(const Region& a, const Region& b, const Tolerances& tol) {
    if (!a.bbox().overlaps(b.bbox())) return {};
    std::vector<ConvexPolygon> pieces;
    for (const ConvexPolygon& p : a.pieces()) {
        if (!p.bbox().overlaps(b.bbox())) continue;
        for (const ConvexPolygon& q : b.pieces()) {
            if (!p.bbox().overlaps(q.bbox())) continue;
            if (auto r0 = convex_intersect(p, q, tol)) pieces.push_back(std::move(*r0));
        }
    }
    return Region(std::move(pieces));
}

Region region_subtract(const Region& a, const Region& b, const Tolerances& tol) {
    if (!a.bbox().overlaps(b.bbox())) return a;
    std::vector<ConvexPolygon> cur(a.pieces());
    for (const ConvexPolygon& q : b.pieces()) {
        std::vector<ConvexPolygon> next;
        next.reserve(cur.size());
        for (ConvexPolygon& p : cur) {
            if (!p.bbox().overlaps(q.bbox())) {
                next.push_back(std::move(p));
                continue;
            }
            for (ConvexPolygon& piece : convex_subtract(p, q, tol)) {
                next.push_back(std::move(piece));
            }
        }
        cur = std::move(next);
    }
    return Region(std::move(cur));
}

Region region_union(const Region& a, const Region& b, const Tolerances& tol) {
    std::vector<ConvexPolygon> pieces(a.pieces());
    Region extra = region_subtract(b, a, tol);
    for (const ConvexPolygon& p : extra.pieces()) pieces.push_back(p);
    return Region(std::move(pieces));
}

double area(const Region& r) { return r.area(); }

// ---------------------------------------------------------------------------
// exact Fourier integral of the indicator

namespace {

// phi(u) = int_0^1 exp(-2 pi i t u) dt
std::complex<double> edge_phase_integral(double u, double phase_tol) {
    using namespace std::complex_literals;
    if (std::abs(u) < phase_tol) {
        const std::complex<double> z = -2.0 * std::numbers::pi * 1.0i * u;
        return 1.0 + z * (1.0 / 2.0) + z * z * (1.0 / 6.0) + z * z * z * (1.0 / 24.0);
    }
    const double pu = std::numbers::pi * u;
    return std::exp(-1.0i * pu) * (std::sin(pu) / pu);
}

}  // namespace

std::complex<double> indicator_fourier(const Region& r, const Point& k, const Tolerances& tol) {
    using namespace std::complex_literals;
    const double k2 = dot(k, k);
    if (k2 == 0.0) return {r.area(), 0.0};
    std::complex<double> sum = 0.0;
    for (const ConvexPolygon& p : r.pieces()) {
        const std::vector<Point>& v = p.vertices();
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = v[i];
            const Point e = v[(i + 1) % n] - a;
            const double x = cross(k, e);
            if (x == 0.0) continue;
            const double ka = dot(k, a);
            sum += x * std::exp(-2.0 * std::numbers::pi * 1.0i * ka) *
                   edge_phase_integral(dot(k, e), tol.phase);
        }
    }
    return 1.0i / (2.0 * std::numbers::pi * k2) * sum;
}

// ---------------------------------------------------------------------------
// raster oracle

double raster_area(const Region& r, const Region& window, int resolution, const Tolerances& tol) {
    if (resolution < 64) throw precondition_error("raster_area: resolution must be >= 64");
    if (window.empty()) return 0.0;
    const Region clipped = region_intersect(r, window, tol);
    if (clipped.empty()) return 0.0;
    const BBox wb = window.bbox();
    const double h = std::max(wb.width(), wb.height()) / static_cast<double>(resolution);
    if (h <= 0.0) return 0.0;
    const std::int64_t nx = static_cast<std::int64_t>(std::ceil(wb.width() / h));
    const std::int64_t ny = static_cast<std::int64_t>(std::ceil(wb.height() / h));

    // scanline per convex piece: one x-interval of covered cell centers per row
    std::int64_t cells = 0;
    for (const ConvexPolygon& p : clipped.pieces()) {
        const BBox pb = p.bbox();
        std::int64_t j0 = static_cast<std::int64_t>(std::floor((pb.ymin - wb.ymin) / h - 0.5));
        std::int64_t j1 = static_cast<std::int64_t>(std::ceil((pb.ymax - wb.ymin) / h - 0.5));
        j0 = std::max<std::int64_t>(j0, 0);
        j1 = std::min(j1, ny - 1);
        const std::vector<Point>& v = p.vertices();
        const std::size_t m = v.size();
        for (std::int64_t j = j0; j <= j1; ++j) {
            const double y = wb.ymin + (static_cast<double>(j) + 0.5) * h;
            double lo = pb.xmin, hi = pb.xmax;
            bool empty_row = false;
            for (std::size_t i = 0; i < m && !empty_row; ++i) {
                const Point a = v[i];
                const Point e = v[(i + 1) % m] - a;
                // interior is where cross(e, (x,y)-a) >= 0:
                //   -e.y * x >= -(e.x*(y-a.y) + e.y*a.x)  =>  linear constraint on x
                const double coef = -e.y;
                const double rhs = -(e.x * (y - a.y)) - e.y * a.x;
                if (coef > 0.0) {
                    lo = std::max(lo, rhs / coef);
                } else if (coef < 0.0) {
                    hi = std::min(hi, rhs / coef);
                } else if (rhs > 0.0) {
                    empty_row = true;
                }
            }
            if (empty_row || hi < lo) continue;
            std::int64_t i0 = static_cast<std::int64_t>(std::ceil((lo - wb.xmin) / h - 0.5));
            std::int64_t i1 = static_cast<std::int64_t>(std::floor((hi - wb.xmin) / h - 0.5));
            i0 = std::max<std::int64_t>(i0, 0);
            i1 = std::min(i1, nx - 1);
            if (i1 >= i0) cells += i1 - i0 + 1;
        }
    }
    return static_cast<double>(cells) * h * h;
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Triangle {
    Point a, b, c;
    double area;
};

}  // namespace

MonteCarloEstimate monte_carlo_area(const Region& r, const Region& window, std::uint64_t samples,
                                    std::uint64_t seed) {
    if (samples < 10000) throw precondition_error("monte_carlo_area: samples must be >= 1e4");
    MonteCarloEstimate out;
    out.samples = samples;
    const double wa = window.area();
    if (wa <= 0.0 || r.empty()) return out;

    // fan-triangulate the window once; cumulative areas drive piece selection
    std::vector<Triangle> tris;
    for (const ConvexPolygon& p : window.pieces()) {
        const std::vector<Point>& v = p.vertices();
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            const double a = 0.5 * std::abs(cross(v[i] - v[0], v[i + 1] - v[0]));
            if (a > 0.0) tris.push_back({v[0], v[i], v[i + 1], a});
        }
    }
    std::vector<double> cum(tris.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < tris.size(); ++i) {
        acc += tris[i].area;
        cum[i] = acc;
    }

    constexpr std::uint64_t kChunk = 65536;
    std::uint64_t hits = 0;
    std::uint64_t done = 0;
    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        const std::uint64_t n = std::min(kChunk, samples - done);
        std::mt19937_64 eng(splitmix64(seed ^ (chunk + 1)));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::uint64_t s = 0; s < n; ++s) {
            const double pick = uni(eng) * acc;
            const std::size_t idx = static_cast<std::size_t>(
                std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin());
            const Triangle& t = tris[std::min(idx, tris.size() - 1)];
            double u = uni(eng);
            double v = uni(eng);
            if (u + v > 1.0) {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            const Point p{t.a.x + u * (t.b.x - t.a.x) + v * (t.c.x - t.a.x),
                          t.a.y + u * (t.b.y - t.a.y) + v * (t.c.y - t.a.y)};
            if (r.contains(p, 0.0)) ++hits;
        }
        done += n;
    }
    const double ph = static_cast<double>(hits) / static_cast<double>(samples);
    out.hits = hits;
    out.estimate = wa * ph;
    out.stderr_ = wa * std::sqrt(ph * (1.0 - ph) / static_cast<double>(samples));
    return out;
}

}  // namespace waveset
