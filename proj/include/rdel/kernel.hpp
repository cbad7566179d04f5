// Dimension-generic points, affine algebra and exact-sign predicates.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdel {

// Ambient dimension is 2..5; one extra slot is reserved for lifted coordinates.
inline constexpr int kMaxDim = 6;

class GeometryError : public std::runtime_error {
public:
        using std::runtime_error::runtime_error;
};

class Point {
public:
        Point() = default;
        explicit Point(int dim) : d_(dim) { check_dim(dim); }
        Point(std::initializer_list<double> c);
        static Point from(std::span<const double> c);
        static Point zero(int dim) { return Point(dim); }
        static Point unit(int dim, int axis);

        int dim() const { return d_; }
        double& operator[](int i) { return c_[i]; }
        double operator[](int i) const { return c_[i]; }
        const double* data() const { return c_.data(); }
        std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + d_}; }

        Point& operator+=(const Point& o);
        Point& operator-=(const Point& o);
        Point& operator*=(double s);
        bool operator==(const Point& o) const;

        bool finite() const;

private:
        static void check_dim(int dim);
        std::array<double, kMaxDim> c_{};
        int d_ = 0;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(Point a, double s);
Point operator*(double s, Point a);
Point operator-(Point a);

double dot(const Point& a, const Point& b);
double norm2(const Point& a);
double norm(const Point& a);
double dist2(const Point& a, const Point& b);
double dist(const Point& a, const Point& b);
Point normalized(const Point& a);

struct Ball {
        Point center;
        double radius = 0.0;
};

// k orthonormal directions through a base point.
struct AffineFlat {
        Point base;
        std::vector<Point> directions;

        int dim() const { return static_cast<int>(directions.size()); }
        int ambient() const { return base.dim(); }
        Point at(std::span<const double> params) const;
        Point project(const Point& x) const;
        double distance(const Point& x) const;
        // Coordinates of x - base in the direction basis.
        std::vector<double> coords(const Point& x) const;
};

// Orthonormalizes the spanning vectors (rank-revealing); throws on rank deficiency.
AffineFlat make_flat(const Point& base, const std::vector<Point>& span);
// Orthonormal basis of the orthogonal complement of span(vectors) in R^d.
std::vector<Point> orthogonal_complement(const std::vector<Point>& vectors, int d);

// Single place for numeric thresholds.
struct Tolerances {
        double residual = 1e-9;        // geometric residuals (circumcenters, equidistance)
        double on_surface = 1e-8;      // |field| for points declared on M
        double orthonormal = 1e-12;    // flat direction checks
        double degenerate = 1e-14;     // singular value ratio below which inputs are degenerate
        double tie = 1e-9;             // nearest-set ties in sampled checks
        double min_cell = 1e-12;       // smallest cell diameter in intersection search
        double resolution = 1e-3;      // intersection resolution, relative to the scene scale
        double root = 1e-13;           // bisection target for witness points
};

const Tolerances& default_tolerances();
inline constexpr Tolerances tol{};

// Sign of det[p1-p0, ..., pd-p0] for d+1 points in R^d.
int orientation(std::span<const Point> pts);
// -1 inside, 0 on, +1 outside the circumsphere of d+1 points.
int in_sphere(std::span<const Point> simplex, const Point& query);
// Orientation of d+2 points of R^d lifted to the paraboloid in R^(d+1).
int lifted_orientation(std::span<const Point> pts);
// sign(|w-a|^2 - |w-b|^2), exact.
int compare_distance(const Point& w, const Point& a, const Point& b);
// Counts calls that needed the exact fallback (for diagnostics).
std::size_t exact_fallback_count();

struct Circumsphere {
        Point center;
        double radius = 0.0;
        double condition = 0.0; // condition number of the Gram system solved
        double residual = 0.0;  // max - min distance to the inputs
};

// Circumcenter of k+1 affinely independent points, inside their affine hull.
Circumsphere circumcenter(std::span<const Point> pts);

// Smallest angle between the flat's direction span and an axis, in [0, pi/2].
double angle_with_direction(const AffineFlat& flat, const Point& axis);
// Principal angles between two direction spans, ascending.
std::vector<double> principal_angles(const std::vector<Point>& a, const std::vector<Point>& b);

std::string to_string(const Point& p);

} // namespace rdel
