#include "rdel/kernel.hpp"

#include "exact.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace rdel {

void Point::check_dim(int dim)
{
        if (dim < 1 || dim > kMaxDim)
                throw GeometryError("point dimension out of range: " + std::to_string(dim));
}

Point::Point(std::initializer_list<double> c) : d_(static_cast<int>(c.size()))
{
        check_dim(d_);
        std::copy(c.begin(), c.end(), c_.begin());
}

Point Point::from(std::span<const double> c)
{
        Point p(static_cast<int>(c.size()));
        std::copy(c.begin(), c.end(), p.c_.begin());
        return p;
}

Point Point::unit(int dim, int axis)
{
        Point p(dim);
        p[axis] = 1.0;
        return p;
}

Point& Point::operator+=(const Point& o)
{
        for (int i = 0; i < d_; ++i)
                c_[i] += o.c_[i];
        return *this;
}

Point& Point::operator-=(const Point& o)
{
        for (int i = 0; i < d_; ++i)
                c_[i] -= o.c_[i];
        return *this;
}

Point& Point::operator*=(double s)
{
        for (int i = 0; i < d_; ++i)
                c_[i] *= s;
        return *this;
}

bool Point::operator==(const Point& o) const
{
        if (d_ != o.d_)
                return false;
        for (int i = 0; i < d_; ++i)
                if (c_[i] != o.c_[i])
                        return false;
        return true;
}

bool Point::finite() const
{
        for (int i = 0; i < d_; ++i)
                if (!std::isfinite(c_[i]))
                        return false;
        return true;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(Point a, double s) { return a *= s; }
Point operator*(double s, Point a) { return a *= s; }
Point operator-(Point a) { return a *= -1.0; }

double dot(const Point& a, const Point& b)
{
        double s = 0.0;
        for (int i = 0; i < a.dim(); ++i)
                s += a[i] * b[i];
        return s;
}

double norm2(const Point& a) { return dot(a, a); }
double norm(const Point& a) { return std::sqrt(norm2(a)); }

double dist2(const Point& a, const Point& b)
{
        double s = 0.0;
        for (int i = 0; i < a.dim(); ++i) {
                double t = a[i] - b[i];
                s += t * t;
        }
        return s;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

Point normalized(const Point& a)
{
        double n = norm(a);
        if (n == 0.0)
                throw GeometryError("cannot normalize zero vector");
        return a * (1.0 / n);
}

const Tolerances& default_tolerances()
{
        static const Tolerances t;
        return t;
}

std::string to_string(const Point& p)
{
        std::ostringstream os;
        os.precision(17);
        os << "(";
        for (int i = 0; i < p.dim(); ++i)
                os << (i ? ", " : "") << p[i];
        os << ")";
        return os.str();
}

// ---------------------------------------------------------------- flats

Point AffineFlat::at(std::span<const double> params) const
{
        Point x = base;
        for (std::size_t i = 0; i < directions.size(); ++i)
                x += directions[i] * params[i];
        return x;
}

std::vector<double> AffineFlat::coords(const Point& x) const
{
        Point r = x - base;
        std::vector<double> out;
        for (const Point& dvec : directions)
                out.push_back(dot(r, dvec));
        return out;
}

Point AffineFlat::project(const Point& x) const
{
        auto c = coords(x);
        return at(c);
}

double AffineFlat::distance(const Point& x) const { return dist(x, project(x)); }

namespace {

Eigen::MatrixXd as_columns(const std::vector<Point>& v, int d)
{
        Eigen::MatrixXd m(d, static_cast<Eigen::Index>(v.size()));
        for (std::size_t j = 0; j < v.size(); ++j)
                for (int i = 0; i < d; ++i)
                        m(i, static_cast<Eigen::Index>(j)) = v[j][i];
        return m;
}

Point column(const Eigen::MatrixXd& m, Eigen::Index j)
{
        Point p(static_cast<int>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
                p[static_cast<int>(i)] = m(i, j);
        return p;
}

} // namespace

AffineFlat make_flat(const Point& base, const std::vector<Point>& span)
{
        AffineFlat f{base, {}};
        if (span.empty())
                return f;
        const int d = base.dim();
        Eigen::MatrixXd a = as_columns(span, d);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
        auto s = svd.singularValues();
        if (s(s.size() - 1) <= default_tolerances().degenerate * std::max(1.0, s(0)))
                throw GeometryError("make_flat: spanning vectors are degenerate");
        for (Eigen::Index j = 0; j < s.size(); ++j)
                f.directions.push_back(column(svd.matrixU(), j));
        return f;
}

std::vector<Point> orthogonal_complement(const std::vector<Point>& vectors, int d)
{
        Eigen::MatrixXd a(d, std::max<Eigen::Index>(1, static_cast<Eigen::Index>(vectors.size())));
        a.setZero();
        for (std::size_t j = 0; j < vectors.size(); ++j)
                for (int i = 0; i < d; ++i)
                        a(i, static_cast<Eigen::Index>(j)) = vectors[j][i];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
        auto s = svd.singularValues();
        Eigen::Index rank = 0;
        for (Eigen::Index j = 0; j < s.size(); ++j)
                if (s(j) > default_tolerances().degenerate * std::max(1.0, s(0)))
                        ++rank;
        std::vector<Point> out;
        for (Eigen::Index j = rank; j < d; ++j)
                out.push_back(column(svd.matrixU(), j));
        return out;
}

double angle_with_direction(const AffineFlat& flat, const Point& axis)
{
        if (flat.directions.empty())
                throw GeometryError("angle_with_direction: zero-dimensional flat");
        double s = 0.0;
        for (const Point& dvec : flat.directions) {
                double c = dot(dvec, axis);
                s += c * c;
        }
        double c = std::sqrt(std::min(1.0, s) / norm2(axis));
        return std::acos(std::min(1.0, c));
}

std::vector<double> principal_angles(const std::vector<Point>& a, const std::vector<Point>& b)
{
        const int d = a.at(0).dim();
        auto qa = make_flat(Point(d), a).directions;
        auto qb = make_flat(Point(d), b).directions;
        Eigen::MatrixXd m = as_columns(qa, d).transpose() * as_columns(qb, d);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        std::vector<double> out;
        for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j)
                out.push_back(std::acos(std::clamp(svd.singularValues()(j), -1.0, 1.0)));
        std::sort(out.begin(), out.end());
        return out;
}

// ---------------------------------------------------------------- predicates

namespace {

std::atomic<std::size_t> g_exact_calls{0};

constexpr double kU = std::numeric_limits<double>::epsilon() / 2;

double gamma(int k) { return k * kU / (1.0 - k * kU); }

struct PermTable {
        std::vector<std::vector<int>> perms;
        std::vector<int> signs;
};

const PermTable& perm_table(int n)
{
        static const auto tables = [] {
                std::array<PermTable, kMaxDim + 1> t;
                for (int k = 1; k <= kMaxDim; ++k) {
                        std::vector<int> p(k);
                        std::iota(p.begin(), p.end(), 0);
                        do {
                                int inv = 0;
                                for (int i = 0; i < k; ++i)
                                        for (int j = i + 1; j < k; ++j)
                                                if (p[i] > p[j])
                                                        ++inv;
                                t[k].perms.push_back(p);
                                t[k].signs.push_back(inv % 2 ? -1 : 1);
                        } while (std::next_permutation(p.begin(), p.end()));
                }
                return t;
        }();
        return tables[n];
}

// Determinant sign with a forward error bound; returns 2 when undecided.
// a: n x n entries (row major), e: absolute error bound on each entry.
int filtered_det_sign(const double* a, const double* e, int n)
{
        const PermTable& t = perm_table(n);
        double det = 0.0, perm = 0.0, perm_e = 0.0;
        for (std::size_t k = 0; k < t.perms.size(); ++k) {
                const auto& p = t.perms[k];
                double prod = 1.0, pa = 1.0, pe = 1.0;
                for (int i = 0; i < n; ++i) {
                        double v = a[i * n + p[i]];
                        prod *= v;
                        pa *= std::fabs(v);
                        pe *= std::fabs(v) + e[i * n + p[i]];
                }
                det += t.signs[k] * prod;
                perm += pa;
                perm_e += pe;
        }
        int terms = static_cast<int>(t.perms.size());
        double bound = (perm_e - perm) * (1.0 + gamma(4)) + 2.0 * gamma(n + terms + 4) * perm_e;
        if (det > bound)
                return 1;
        if (det < -bound)
                return -1;
        if (perm_e == 0.0)
                return 0;
        return 2;
}

void require_simplex_shape(std::span<const Point> pts, std::size_t expected_count, const char* what)
{
        if (pts.empty())
                throw GeometryError(std::string(what) + ": no points");
        const int d = pts[0].dim();
        if (pts.size() != expected_count)
                throw GeometryError(std::string(what) + ": wrong number of points");
        for (const Point& p : pts)
                if (p.dim() != d)
                        throw GeometryError(std::string(what) + ": dimension mismatch");
}

} // namespace

std::size_t exact_fallback_count() { return g_exact_calls.load(); }

int orientation(std::span<const Point> pts)
{
        if (pts.empty())
                throw GeometryError("orientation: no points");
        const int d = pts[0].dim();
        require_simplex_shape(pts, static_cast<std::size_t>(d) + 1, "orientation");
        double a[kMaxDim * kMaxDim], e[kMaxDim * kMaxDim];
        for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                        double v = pts[i + 1][j] - pts[0][j];
                        a[i * d + j] = v;
                        e[i * d + j] = kU * std::fabs(v) * 1.0000001;
                }
        int s = filtered_det_sign(a, e, d);
        if (s != 2)
                return s;
        g_exact_calls.fetch_add(1, std::memory_order_relaxed);
        return exact::orientation(pts);
}

int lifted_orientation(std::span<const Point> pts)
{
        if (pts.empty())
                throw GeometryError("lifted_orientation: no points");
        const int d = pts[0].dim();
        if (d + 1 > kMaxDim)
                throw GeometryError("lifted_orientation: dimension too large");
        require_simplex_shape(pts, static_cast<std::size_t>(d) + 2, "lifted_orientation");
        const int n = d + 1;
        double lift[kMaxDim + 2];
        for (int i = 0; i <= n; ++i)
                lift[i] = norm2(pts[i]);
        double a[kMaxDim * kMaxDim], e[kMaxDim * kMaxDim];
        const double g = gamma(d + 1);
        for (int i = 0; i < n; ++i) {
                for (int j = 0; j < d; ++j) {
                        double v = pts[i + 1][j] - pts[0][j];
                        a[i * n + j] = v;
                        e[i * n + j] = kU * std::fabs(v) * 1.0000001;
                }
                double v = lift[i + 1] - lift[0];
                a[i * n + d] = v;
                e[i * n + d] = g * (lift[i + 1] + lift[0]) + kU * std::fabs(v) * 1.0000001;
        }
        int s = filtered_det_sign(a, e, n);
        if (s != 2)
                return s;
        g_exact_calls.fetch_add(1, std::memory_order_relaxed);
        return exact::lifted_orientation(pts);
}

int in_sphere(std::span<const Point> simplex, const Point& query)
{
        if (simplex.empty())
                throw GeometryError("in_sphere: no points");
        const int d = simplex[0].dim();
        require_simplex_shape(simplex, static_cast<std::size_t>(d) + 1, "in_sphere");
        if (query.dim() != d)
                throw GeometryError("in_sphere: dimension mismatch");
        int o = orientation(simplex);
        if (o == 0)
                throw GeometryError("in_sphere: degenerate simplex");
        std::vector<Point> all(simplex.begin(), simplex.end());
        all.push_back(query);
        return lifted_orientation(all) * o;
}

int compare_distance(const Point& w, const Point& a, const Point& b)
{
        double da = dist2(w, a), db = dist2(w, b);
        double diff = da - db;
        double bound = gamma(w.dim() + 3) * (da + db) * 2.0;
        if (diff > bound)
                return 1;
        if (diff < -bound)
                return -1;
        g_exact_calls.fetch_add(1, std::memory_order_relaxed);
        return exact::compare_distance(w, a, b);
}

// ---------------------------------------------------------------- circumcenter

Circumsphere circumcenter(std::span<const Point> pts)
{
        if (pts.empty())
                throw GeometryError("circumcenter: no points");
        const int d = pts[0].dim();
        const int k = static_cast<int>(pts.size()) - 1;
        for (const Point& p : pts)
                if (p.dim() != d)
                        throw GeometryError("circumcenter: dimension mismatch");
        if (k > d)
                throw GeometryError("circumcenter: more than d+1 points");
        if (k == 0)
                return {pts[0], 0.0, 1.0, 0.0};
        Eigen::MatrixXd a(k, d);
        Eigen::VectorXd b(k);
        for (int i = 0; i < k; ++i) {
                Point r = pts[i + 1] - pts[0];
                for (int j = 0; j < d; ++j)
                        a(i, j) = r[j];
                b(i) = 0.5 * norm2(r);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        auto s = svd.singularValues();
        if (s(k - 1) <= default_tolerances().degenerate * s(0))
                throw GeometryError("circumcenter: affinely degenerate input");
        // minimal-norm solution of a x = b lies in the row space, i.e. the affine hull
        Eigen::VectorXd off = svd.solve(b);
        off += svd.solve(b - a * off);
        Point c = pts[0];
        for (int j = 0; j < d; ++j)
                c[j] += off(j);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const Point& p : pts) {
                double r = dist(c, p);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
        }
        double cond = s(0) / s(k - 1);
        return {c, dist(c, pts[0]), cond * cond, hi - lo};
}

} // namespace rdel
