#pragma once

#include "viqi/geometry.hpp"
#include "viqi/query_model.hpp"

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace viqi {

/// A field or an already-formed group taking part in one clustering round.
/// Groups enter the next round as the tight box around their members.
struct ClusterItem {
    std::string id;
    Rect bbox;
    std::vector<std::string> members;   // sorted leaf field ids

    friend bool operator==(const ClusterItem&, const ClusterItem&) = default;
};

/// Processing order: (y_min, x_min, id).
[[nodiscard]] bool reading_order_less(const ClusterItem& a, const ClusterItem& b) noexcept;

/// Outcome of one density-clustering round.
struct ClusterLevel {
    Proximity epsilon;
    int min_pts{1};
    std::vector<ClusterItem> items;                 // input, in processing order
    std::vector<Proximity> proximities;             // row-major items.size()^2
    std::vector<std::vector<ClusterItem>> clusters;
    std::vector<ClusterItem> noise;

    [[nodiscard]] const Proximity& proximity_at(std::size_t i, std::size_t j) const
    {
        return proximities[i * items.size() + j];
    }
};

struct HierarchyTrace {
    double tolerance{kDefaultAlignTolerance};
    std::vector<ClusterLevel> levels;
    QueryTree result;
};

struct ClusteringConfig {
    double tolerance{kDefaultAlignTolerance};
    int min_pts{1};
};

/// Items other than `item` whose proximity to it is finite and <= eps.
/// Unaligned pairs are never neighbours, whatever eps is.
[[nodiscard]] std::vector<ClusterItem> scope_density(const ClusterItem& item,
                                                     std::span<const ClusterItem> items,
                                                     Proximity eps, double tol);

/// Smallest proximity over all unordered pairs; Unreachable when no pair is
/// aligned. Throws DegenerateInputError for fewer than two items.
[[nodiscard]] Proximity select_eps(std::span<const ClusterItem> items, double tol);

/// Density clustering as listed in the original DBSCAN/ExpandCluster pseudo
/// code, with the neighbour set excluding the item itself. Items are visited
/// in reading order; clusters come out in the order they are created.
[[nodiscard]] ClusterLevel dbscan(std::span<const ClusterItem> items, Proximity eps, int min_pts,
                                  double tol);

/// Repeats select_eps + dbscan on the surviving items (clusters merged into
/// super-items, noise passed through) until one item is left or a round
/// merges nothing; what remains hangs off the collection root. The result
/// tree is canonical. Throws DegenerateInputError for an empty field list.
[[nodiscard]] HierarchyTrace build_hierarchy(std::span<const FieldElement> fields,
                                             const ClusteringConfig& config = {});

/// Trace document: tolerance, per-level eps, proximity matrix, clusters,
/// noise, and the resulting tree.
[[nodiscard]] nlohmann::ordered_json trace_to_json(const HierarchyTrace& trace);
[[nodiscard]] HierarchyTrace trace_from_json(const nlohmann::json& doc);

} // namespace viqi
