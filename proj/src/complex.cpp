#include "rdel/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <unordered_map>

namespace rdel {

Simplex make_simplex(std::vector<int> vertices)
{
        if (vertices.empty())
                throw std::invalid_argument("simplex must be nonempty");
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
                throw std::invalid_argument("simplex has duplicate vertices");
        return vertices;
}

std::vector<Simplex> faces_of_dim(const Simplex& s, int k)
{
        std::vector<Simplex> out;
        const int n = static_cast<int>(s.size());
        if (k < 0 || k + 1 > n)
                return out;
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + k + 1, true);
        do {
                Simplex f;
                for (int i = 0; i < n; ++i)
                        if (pick[i])
                                f.push_back(s[i]);
                out.push_back(std::move(f));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return out;
}

std::vector<Simplex> facets_of(const Simplex& s)
{
        std::vector<Simplex> out;
        if (s.size() < 2)
                return out;
        for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f;
                for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != i)
                                f.push_back(s[j]);
                out.push_back(std::move(f));
        }
        return out;
}

std::string to_string(const Simplex& s)
{
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < s.size(); ++i)
                os << (i ? "," : "") << s[i];
        os << "]";
        return os.str();
}

void SimplicialComplex::insert(const Simplex& s)
{
        const int k = static_cast<int>(s.size()) - 1;
        if (k < 0)
                throw std::invalid_argument("cannot insert empty simplex");
        if (static_cast<int>(faces_.size()) <= k)
                faces_.resize(k + 1);
        if (!faces_[k].insert(s).second)
                return;
        for (Simplex& f : facets_of(s))
                if (!faces_[k - 1].count(f))
                        insert(f);
}

bool SimplicialComplex::contains(const Simplex& s) const
{
        const int k = static_cast<int>(s.size()) - 1;
        return k >= 0 && k < static_cast<int>(faces_.size()) && faces_[k].count(s) > 0;
}

int SimplicialComplex::dimension() const
{
        for (int k = static_cast<int>(faces_.size()) - 1; k >= 0; --k)
                if (!faces_[k].empty())
                        return k;
        return -1;
}

const std::set<Simplex>& SimplicialComplex::simplices(int k) const
{
        static const std::set<Simplex> empty;
        if (k < 0 || k >= static_cast<int>(faces_.size()))
                return empty;
        return faces_[k];
}

std::size_t SimplicialComplex::size() const
{
        std::size_t n = 0;
        for (const auto& f : faces_)
                n += f.size();
        return n;
}

std::vector<Simplex> SimplicialComplex::cofacets(const Simplex& s) const
{
        std::vector<Simplex> out;
        for (const Simplex& t : simplices(static_cast<int>(s.size())))
                if (std::includes(t.begin(), t.end(), s.begin(), s.end()))
                        out.push_back(t);
        return out;
}

bool SimplicialComplex::valid() const
{
        for (int k = 0; k < static_cast<int>(faces_.size()); ++k) {
                for (const Simplex& s : faces_[k]) {
                        if (static_cast<int>(s.size()) != k + 1)
                                return false;
                        if (!std::is_sorted(s.begin(), s.end()) ||
                            std::adjacent_find(s.begin(), s.end()) != s.end())
                                return false;
                        if (!vertex_coords_.empty())
                                for (int v : s)
                                        if (v < 0 || v >= static_cast<int>(vertex_coords_.size()))
                                                return false;
                        if (k > 0)
                                for (const Simplex& f : facets_of(s))
                                        if (!faces_[k - 1].count(f))
                                                return false;
                }
        }
        return true;
}

long euler_characteristic(const SimplicialComplex& k)
{
        long chi = 0;
        for (int i = 0; i <= k.dimension(); ++i)
                chi += (i % 2 ? -1L : 1L) * static_cast<long>(k.count(i));
        return chi;
}

std::size_t gf2_rank_dense(const std::vector<std::vector<int>>& columns, std::size_t rows)
{
        const std::size_t words = (rows + 63) / 64;
        std::vector<std::vector<std::uint64_t>> m;
        m.reserve(columns.size());
        for (const auto& c : columns) {
                std::vector<std::uint64_t> bits(words, 0);
                for (int r : c)
                        bits[static_cast<std::size_t>(r) / 64] ^= std::uint64_t{1} << (r % 64);
                m.push_back(std::move(bits));
        }
        std::size_t rank = 0;
        for (std::size_t r = 0; r < rows && rank < m.size(); ++r) {
                const std::size_t w = r / 64;
                const std::uint64_t bit = std::uint64_t{1} << (r % 64);
                std::size_t piv = rank;
                while (piv < m.size() && !(m[piv][w] & bit))
                        ++piv;
                if (piv == m.size())
                        continue;
                std::swap(m[piv], m[rank]);
                for (std::size_t j = rank + 1; j < m.size(); ++j)
                        if (m[j][w] & bit)
                                for (std::size_t x = w; x < words; ++x)
                                        m[j][x] ^= m[rank][x];
                ++rank;
        }
        return rank;
}

std::size_t gf2_rank_sparse(std::vector<std::vector<int>> columns)
{
        std::unordered_map<int, std::size_t> pivot_of;
        std::size_t rank = 0;
        std::vector<int> tmp;
        for (std::size_t j = 0; j < columns.size(); ++j) {
                auto& col = columns[j];
                while (!col.empty()) {
                        auto it = pivot_of.find(col.back());
                        if (it == pivot_of.end())
                                break;
                        const auto& other = columns[it->second];
                        tmp.clear();
                        std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                                      std::back_inserter(tmp));
                        col.swap(tmp);
                }
                if (!col.empty()) {
                        pivot_of[col.back()] = j;
                        ++rank;
                }
        }
        return rank;
}

namespace {

constexpr std::size_t kDenseLimit = 4096;
constexpr std::size_t kMaxSimplices = 1000000;

std::size_t boundary_rank(const SimplicialComplex& k, int dim)
{
        if (dim <= 0 || k.count(dim) == 0)
                return 0;
        std::map<Simplex, int> index;
        int i = 0;
        for (const Simplex& s : k.simplices(dim - 1))
                index.emplace(s, i++);
        std::vector<std::vector<int>> cols;
        cols.reserve(k.count(dim));
        for (const Simplex& s : k.simplices(dim)) {
                std::vector<int> c;
                for (const Simplex& f : facets_of(s))
                        c.push_back(index.at(f));
                std::sort(c.begin(), c.end());
                cols.push_back(std::move(c));
        }
        if (cols.size() <= kDenseLimit && index.size() <= kDenseLimit)
                return gf2_rank_dense(cols, index.size());
        return gf2_rank_sparse(std::move(cols));
}

} // namespace

std::vector<long> betti_numbers_mod2(const SimplicialComplex& k)
{
        if (k.size() > kMaxSimplices)
                throw std::length_error("complex too large for homology computation");
        const int top = k.dimension();
        if (top < 0)
                return {};
        std::vector<std::size_t> rank(top + 2, 0);
        for (int d = 1; d <= top; ++d)
                rank[d] = boundary_rank(k, d);
        std::vector<long> betti;
        for (int d = 0; d <= top; ++d)
                betti.push_back(static_cast<long>(k.count(d)) - static_cast<long>(rank[d]) -
                                static_cast<long>(rank[d + 1]));
        return betti;
}

PseudomanifoldCheck is_closed_pseudomanifold(const SimplicialComplex& k, int dim)
{
        PseudomanifoldCheck out;
        out.pure = true;
        // maximal simplices below dim break purity
        for (int d = 0; d < dim; ++d) {
                std::set<Simplex> covered;
                for (const Simplex& t : k.simplices(d + 1))
                        for (Simplex& f : facets_of(t))
                                covered.insert(std::move(f));
                for (const Simplex& s : k.simplices(d))
                        if (!covered.count(s)) {
                                out.pure = false;
                                out.impure.push_back(s);
                        }
        }
        if (k.dimension() != dim)
                out.pure = false;
        std::map<Simplex, int> incidences;
        for (const Simplex& f : k.simplices(dim - 1))
                incidences.emplace(f, 0);
        for (const Simplex& t : k.simplices(dim))
                for (Simplex& f : facets_of(t))
                        ++incidences[f];
        for (const auto& [f, n] : incidences)
                if (n != 2)
                        out.offenders.push_back(f);
        out.closed = out.pure && out.offenders.empty() && k.count(dim) > 0;
        return out;
}

ComplexDiff complex_diff(const SimplicialComplex& a, const SimplicialComplex& b)
{
        const auto& ca = a.vertex_coords();
        const auto& cb = b.vertex_coords();
        if (!ca.empty() && !cb.empty()) {
                if (ca.size() != cb.size())
                        throw std::invalid_argument("complex_diff: incompatible vertex sets");
                for (std::size_t i = 0; i < ca.size(); ++i)
                        if (!(ca[i] == cb[i]))
                                throw std::invalid_argument("complex_diff: incompatible vertex sets");
        }
        ComplexDiff d;
        const int top = std::max(a.dimension(), b.dimension());
        for (int k = 0; k <= top; ++k) {
                std::set_difference(a.simplices(k).begin(), a.simplices(k).end(), b.simplices(k).begin(),
                                    b.simplices(k).end(), std::back_inserter(d.only_in_a));
                std::set_difference(b.simplices(k).begin(), b.simplices(k).end(), a.simplices(k).begin(),
                                    a.simplices(k).end(), std::back_inserter(d.only_in_b));
        }
        return d;
}

} // namespace rdel
