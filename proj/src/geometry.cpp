#include "viqi/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace viqi {

bool Rect::valid() const noexcept
{
    return std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max)
        && std::isfinite(y_max) && x_min <= x_max && y_min <= y_max;
}

Rect Rect::united(const Rect& other) const noexcept
{
    return {std::min(x_min, other.x_min), std::min(y_min, other.y_min),
            std::max(x_max, other.x_max), std::max(y_max, other.y_max)};
}

double rect_min_distance(const Rect& a, const Rect& b) noexcept
{
    const double dx = std::max({0.0, a.x_min - b.x_max, b.x_min - a.x_max});
    const double dy = std::max({0.0, a.y_min - b.y_max, b.y_min - a.y_max});
    return std::hypot(dx, dy);
}

int align_x(const Rect& a, const Rect& b, AlignmentAxis axis, double tol) noexcept
{
    double delta = 0.0;
    switch (axis) {
    case AlignmentAxis::Bottom: delta = a.y_max - b.y_max; break;
    case AlignmentAxis::Top: delta = a.y_min - b.y_min; break;
    case AlignmentAxis::Left: delta = a.x_min - b.x_min; break;
    case AlignmentAxis::Right: delta = a.x_max - b.x_max; break;
    }
    return std::abs(delta) <= tol ? 1 : 0;
}

int align_score(const Rect& a, const Rect& b, double tol) noexcept
{
    // Rows are read line by line, so a shared baseline counts double.
    return 2 * align_x(a, b, AlignmentAxis::Bottom, tol) + align_x(a, b, AlignmentAxis::Top, tol)
        + align_x(a, b, AlignmentAxis::Left, tol) + align_x(a, b, AlignmentAxis::Right, tol);
}

Proximity proximity(const Rect& a, const Rect& b, double tol) noexcept
{
    const int score = align_score(a, b, tol);
    if (score == 0)
        return Proximity::unreachable();
    return Proximity(rect_min_distance(a, b) / score);
}

} // namespace viqi
