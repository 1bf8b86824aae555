#pragma once

#include <array>
#include <compare>
#include <limits>

namespace viqi {

/// Default edge-coordinate tolerance, in pixels, for the alignment predicates.
inline constexpr double kDefaultAlignTolerance = 2.0;

/// Screen-space point; y grows downward.
struct Point {
    double x{};
    double y{};

    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned box in page pixels, y downward. Closed point set.
struct Rect {
    double x_min{};
    double y_min{};
    double x_max{};
    double y_max{};

    [[nodiscard]] bool valid() const noexcept;
    [[nodiscard]] double width() const noexcept { return x_max - x_min; }
    [[nodiscard]] double height() const noexcept { return y_max - y_min; }
    [[nodiscard]] Point center() const noexcept
    {
        return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0};
    }

    /// Tight box around both operands.
    [[nodiscard]] Rect united(const Rect& other) const noexcept;

    [[nodiscard]] std::array<double, 4> as_array() const noexcept
    {
        return {x_min, y_min, x_max, y_max};
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

enum class AlignmentAxis { Bottom, Top, Left, Right };

inline constexpr std::array<AlignmentAxis, 4> kAllAxes{
    AlignmentAxis::Bottom, AlignmentAxis::Top, AlignmentAxis::Left, AlignmentAxis::Right};

/// Distance-over-alignment ratio. Unreachable (zero alignment) orders after
/// every finite value; it is stored as +infinity.
class Proximity {
public:
    constexpr Proximity() noexcept = default;
    constexpr explicit Proximity(double value) noexcept : value_(value) {}

    static constexpr Proximity unreachable() noexcept
    {
        return Proximity(std::numeric_limits<double>::infinity());
    }

    [[nodiscard]] constexpr bool is_unreachable() const noexcept
    {
        return value_ == std::numeric_limits<double>::infinity();
    }
    [[nodiscard]] constexpr double value() const noexcept { return value_; }

    friend constexpr auto operator<=>(const Proximity& a, const Proximity& b) noexcept
    {
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator==(const Proximity&, const Proximity&) noexcept = default;

private:
    double value_{0.0};
};

/// Minimum Euclidean distance between any point of `a` and any point of `b`.
/// Zero when the boxes intersect or touch.
[[nodiscard]] double rect_min_distance(const Rect& a, const Rect& b) noexcept;

/// 1 when the edge selected by `axis` lies within `tol` pixels on both boxes.
[[nodiscard]] int align_x(const Rect& a, const Rect& b, AlignmentAxis axis, double tol) noexcept;

/// 2*Bottom + Top + Left + Right, in [0, 5].
[[nodiscard]] int align_score(const Rect& a, const Rect& b, double tol) noexcept;

[[nodiscard]] Proximity proximity(const Rect& a, const Rect& b, double tol) noexcept;

} // namespace viqi
