#include "exact.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace rdel::exact {
namespace {

// Maps a set of doubles onto integers sharing one power-of-two scale.
class Scaler {
public:
        explicit Scaler(const std::vector<double>& values)
        {
                for (double v : values) {
                        if (v == 0.0)
                                continue;
                        int e;
                        std::frexp(v, &e);
                        min_exp_ = std::min(min_exp_, e - 53);
                }
                if (min_exp_ == INT_MAX)
                        min_exp_ = 0;
        }

        mpz_class operator()(double v) const
        {
                if (v == 0.0)
                        return 0;
                int e;
                double f = std::frexp(v, &e);
                auto m = static_cast<std::int64_t>(std::ldexp(f, 53));
                mpz_class z;
                mpz_set_si(z.get_mpz_t(), static_cast<long>(m));
                mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(e - 53 - min_exp_));
                return z;
        }

private:
        int min_exp_ = INT_MAX;
};

int bareiss_sign(std::vector<std::vector<mpz_class>> m)
{
        const int n = static_cast<int>(m.size());
        int sign = 1;
        mpz_class prev = 1;
        for (int k = 0; k < n - 1; ++k) {
                if (m[k][k] == 0) {
                        int r = k + 1;
                        while (r < n && m[r][k] == 0)
                                ++r;
                        if (r == n)
                                return 0;
                        std::swap(m[k], m[r]);
                        sign = -sign;
                }
                for (int i = k + 1; i < n; ++i) {
                        for (int j = k + 1; j < n; ++j) {
                                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
                        }
                }
                prev = m[k][k];
        }
        return sign * sgn(m[n - 1][n - 1]);
}

std::vector<double> all_coords(std::span<const Point> pts)
{
        std::vector<double> v;
        for (const Point& p : pts)
                for (int i = 0; i < p.dim(); ++i)
                        v.push_back(p[i]);
        return v;
}

} // namespace

int orientation(std::span<const Point> pts)
{
        const int d = pts[0].dim();
        Scaler s(all_coords(pts));
        std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
        for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                        m[i][j] = s(pts[i + 1][j]) - s(pts[0][j]);
        return bareiss_sign(std::move(m));
}

int lifted_orientation(std::span<const Point> pts)
{
        const int d = pts[0].dim();
        const int n = d + 1;
        Scaler s(all_coords(pts));
        std::vector<std::vector<mpz_class>> z(pts.size(), std::vector<mpz_class>(n));
        for (std::size_t i = 0; i < pts.size(); ++i) {
                mpz_class lift = 0;
                for (int j = 0; j < d; ++j) {
                        z[i][j] = s(pts[i][j]);
                        lift += z[i][j] * z[i][j];
                }
                z[i][d] = lift;
        }
        std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
        for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                        m[i][j] = z[i + 1][j] - z[0][j];
        return bareiss_sign(std::move(m));
}

int compare_distance(const Point& w, const Point& a, const Point& b)
{
        std::vector<double> v;
        for (int i = 0; i < w.dim(); ++i) {
                v.push_back(w[i]);
                v.push_back(a[i]);
                v.push_back(b[i]);
        }
        Scaler s(v);
        mpz_class acc = 0;
        for (int i = 0; i < w.dim(); ++i) {
                mpz_class da = s(w[i]) - s(a[i]);
                mpz_class db = s(w[i]) - s(b[i]);
                acc += da * da - db * db;
        }
        return sgn(acc);
}

} // namespace rdel::exact
