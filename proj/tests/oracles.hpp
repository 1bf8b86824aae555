#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's geometry or clustering code.

#include "viqi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace viqi::oracle {

inline std::vector<Point> sample_boundary(const Rect& r, double pitch)
{
    std::vector<Point> pts;
    const auto steps = [pitch](double lo, double hi) {
        return static_cast<long>(std::floor((hi - lo) / pitch + 1e-9));
    };
    const long nx = steps(r.x_min, r.x_max);
    const long ny = steps(r.y_min, r.y_max);
    for (long i = 0; i <= nx; ++i) {
        const double x = std::min(r.x_min + i * pitch, r.x_max);
        pts.push_back({x, r.y_min});
        pts.push_back({x, r.y_max});
    }
    pts.push_back({r.x_max, r.y_min});
    pts.push_back({r.x_max, r.y_max});
    for (long j = 0; j <= ny; ++j) {
        const double y = std::min(r.y_min + j * pitch, r.y_max);
        pts.push_back({r.x_min, y});
        pts.push_back({r.x_max, y});
    }
    return pts;
}

/// Any grid point of `a` (interior included) that lies inside `b`.
inline bool grids_overlap(const Rect& a, const Rect& b, double pitch)
{
    for (double x = a.x_min; x <= a.x_max + 1e-9; x += pitch)
        for (double y = a.y_min; y <= a.y_max + 1e-9; y += pitch)
            if (x >= b.x_min && x <= b.x_max && y >= b.y_min && y <= b.y_max)
                return true;
    return false;
}

/// Minimum over sampled point pairs. Disjoint closed boxes attain their
/// distance on the boundaries, so boundary samples suffice once overlap is
/// ruled out.
inline double brute_force_distance(const Rect& a, const Rect& b, double pitch)
{
    if (grids_overlap(a, b, pitch) || grids_overlap(b, a, pitch))
        return 0.0;
    const auto pa = sample_boundary(a, pitch);
    const auto pb = sample_boundary(b, pitch);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pa)
        for (const auto& q : pb)
            best = std::min(best, (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
    return std::sqrt(best);
}

inline double interval_gap(double a0, double a1, double b0, double b1)
{
    if (a1 < b0)
        return b0 - a1;
    if (b1 < a0)
        return a0 - b1;
    return 0.0;
}

/// Gap-per-axis construction, evaluated independently of the library.
inline double closed_form_distance(const Rect& a, const Rect& b)
{
    return std::hypot(interval_gap(a.x_min, a.x_max, b.x_min, b.x_max),
                      interval_gap(a.y_min, a.y_max, b.y_min, b.y_max));
}

/// Proximity written out longhand; infinity when no edge is shared.
inline double reference_proximity(const Rect& a, const Rect& b, double tol)
{
    int score = 0;
    if (std::fabs(a.y_max - b.y_max) <= tol)
        score += 2;
    if (std::fabs(a.y_min - b.y_min) <= tol)
        score += 1;
    if (std::fabs(a.x_min - b.x_min) <= tol)
        score += 1;
    if (std::fabs(a.x_max - b.x_max) <= tol)
        score += 1;
    if (score == 0)
        return std::numeric_limits<double>::infinity();
    const double dx = interval_gap(a.x_min, a.x_max, b.x_min, b.x_max);
    const double dy = interval_gap(a.y_min, a.y_max, b.y_min, b.y_max);
    return std::sqrt(dx * dx + dy * dy) / score;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

using Partition = std::set<std::set<std::string>>;

/// Connected components of size >= 2 in the graph joining pairs whose
/// proximity is finite and <= eps, plus the isolated vertices.
struct Components {
    Partition clusters;
    std::set<std::string> isolated;
};

inline Components threshold_components(const std::vector<std::string>& ids, const std::vector<Rect>& boxes,
                                       double eps, double tol)
{
    const std::size_t n = ids.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = reference_proximity(boxes[i], boxes[j], tol);
            if (std::isfinite(p) && p <= eps)
                uf.unite(i, j);
        }
    std::map<std::size_t, std::set<std::string>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[uf.find(i)].insert(ids[i]);
    Components out;
    for (auto& [root, members] : groups) {
        if (members.size() >= 2)
            out.clusters.insert(members);
        else
            out.isolated.insert(*members.begin());
    }
    return out;
}

/// Integer-coordinate box inside [0, limit]^2.
inline Rect random_rect(std::mt19937_64& rng, int limit)
{
    std::uniform_int_distribution<int> coord(0, limit);
    int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
    if (x0 > x1)
        std::swap(x0, x1);
    if (y0 > y1)
        std::swap(y0, y1);
    return {double(x0), double(y0), double(x1), double(y1)};
}

/// Form-like box snapped to a coarse grid so that shared edges are common.
inline Rect random_field_box(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> col(0, 30);
    std::uniform_int_distribution<int> row(0, 20);
    std::uniform_int_distribution<int> width(2, 12);
    std::uniform_int_distribution<int> tall(0, 1);
    const double x = 10.0 * col(rng);
    const double y = 30.0 * row(rng);
    return {x, y, x + 10.0 * width(rng), y + (tall(rng) ? 24.0 : 20.0)};
}

} // namespace viqi::oracle
