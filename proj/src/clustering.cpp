#include "viqi/clustering.hpp"

#include "viqi/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace viqi {

namespace {

std::vector<Proximity> proximity_matrix(std::span<const ClusterItem> items, double tol)
{
    const std::size_t n = items.size();
    std::vector<Proximity> m(n * n, Proximity(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m[i * n + j] = m[j * n + i] = proximity(items[i].bbox, items[j].bbox, tol);
    return m;
}

bool within(Proximity p, Proximity eps) noexcept
{
    return !p.is_unreachable() && p <= eps;
}

/// Runs the DBSCAN listing over a precomputed matrix. Neighbour lists are
/// indices into the level's item array.
class DensityScan {
public:
    DensityScan(const ClusterLevel& level, Proximity eps, int min_pts)
        : level_(level), eps_(eps), min_pts_(min_pts), visited_(level.items.size(), false)
    {
    }

    std::vector<std::vector<std::size_t>> run()
    {
        std::vector<std::vector<std::size_t>> clusters;
        for (std::size_t f = 0; f < level_.items.size(); ++f) {
            if (visited_[f])
                continue;
            const auto neighbours = scope(f);
            if (neighbours.size() < static_cast<std::size_t>(min_pts_))
                continue; // noise
            std::vector<std::size_t> cluster{f};
            visited_[f] = true;
            for (const std::size_t g : neighbours)
                if (!visited_[g])
                    expand(g, cluster);
            clusters.push_back(std::move(cluster));
        }
        return clusters;
    }

    [[nodiscard]] bool visited(std::size_t i) const { return visited_[i]; }

private:
    std::vector<std::size_t> scope(std::size_t i) const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < level_.items.size(); ++j)
            if (j != i && within(level_.proximity_at(i, j), eps_))
                out.push_back(j);
        return out;
    }

    void expand(std::size_t f, std::vector<std::size_t>& cluster)
    {
        const auto neighbours = scope(f);
        // A reached item with a thin scope is marked noise, as listed; a
        // textbook DBSCAN would keep it as a border point.
        if (neighbours.size() < static_cast<std::size_t>(min_pts_))
            return;
        visited_[f] = true;
        cluster.push_back(f);
        for (const std::size_t g : neighbours)
            if (!visited_[g])
                expand(g, cluster);
    }

    const ClusterLevel& level_;
    Proximity eps_;
    int min_pts_;
    std::vector<bool> visited_;
};

struct WorkItem {
    ClusterItem item;
    QueryNode node;
};

ClusterItem merge_items(std::string id, const std::vector<ClusterItem>& parts)
{
    ClusterItem merged{std::move(id), parts.front().bbox, {}};
    for (const auto& p : parts) {
        merged.bbox = merged.bbox.united(p.bbox);
        merged.members.insert(merged.members.end(), p.members.begin(), p.members.end());
    }
    std::sort(merged.members.begin(), merged.members.end());
    return merged;
}

nlohmann::ordered_json proximity_to_json(Proximity p)
{
    if (p.is_unreachable())
        return nullptr;
    return p.value();
}

Proximity proximity_from_json(const nlohmann::json& j)
{
    if (j.is_null())
        return Proximity::unreachable();
    if (!j.is_number())
        throw ParseError("proximity must be a number or null");
    return Proximity(j.get<double>());
}

nlohmann::ordered_json item_to_json(const ClusterItem& item)
{
    nlohmann::ordered_json j;
    j["id"] = item.id;
    j["bbox"] = rect_to_json(item.bbox);
    j["members"] = item.members;
    return j;
}

} // namespace

bool reading_order_less(const ClusterItem& a, const ClusterItem& b) noexcept
{
    return std::tie(a.bbox.y_min, a.bbox.x_min, a.id) < std::tie(b.bbox.y_min, b.bbox.x_min, b.id);
}

std::vector<ClusterItem> scope_density(const ClusterItem& item, std::span<const ClusterItem> items,
                                       Proximity eps, double tol)
{
    std::vector<ClusterItem> out;
    for (const auto& other : items) {
        if (other.id == item.id)
            continue;
        if (within(proximity(item.bbox, other.bbox, tol), eps))
            out.push_back(other);
    }
    return out;
}

Proximity select_eps(std::span<const ClusterItem> items, double tol)
{
    if (items.size() < 2)
        throw DegenerateInputError("epsilon needs at least two items");
    Proximity best = Proximity::unreachable();
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j)
            best = std::min(best, proximity(items[i].bbox, items[j].bbox, tol));
    return best;
}

ClusterLevel dbscan(std::span<const ClusterItem> items, Proximity eps, int min_pts, double tol)
{
    ClusterLevel level;
    level.epsilon = eps;
    level.min_pts = min_pts;
    level.items.assign(items.begin(), items.end());
    std::sort(level.items.begin(), level.items.end(), reading_order_less);
    level.proximities = proximity_matrix(level.items, tol);

    DensityScan scan(level, eps, min_pts);
    for (const auto& indices : scan.run()) {
        std::vector<ClusterItem> cluster;
        cluster.reserve(indices.size());
        for (const std::size_t i : indices)
            cluster.push_back(level.items[i]);
        level.clusters.push_back(std::move(cluster));
    }
    for (std::size_t i = 0; i < level.items.size(); ++i)
        if (!scan.visited(i))
            level.noise.push_back(level.items[i]);
    return level;
}

HierarchyTrace build_hierarchy(std::span<const FieldElement> fields, const ClusteringConfig& config)
{
    if (fields.empty())
        throw DegenerateInputError("cannot build a query hierarchy from zero fields");

    HierarchyTrace trace;
    trace.tolerance = config.tolerance;

    std::vector<WorkItem> work;
    work.reserve(fields.size());
    for (const auto& f : fields)
        work.push_back({ClusterItem{f.id, f.bbox, {f.id}}, QueryNode::field(f.id)});

    while (work.size() > 1) {
        std::vector<ClusterItem> items;
        items.reserve(work.size());
        for (const auto& w : work)
            items.push_back(w.item);

        const Proximity eps = select_eps(items, config.tolerance);
        if (eps.is_unreachable())
            break; // forced root

        ClusterLevel level = dbscan(items, eps, config.min_pts, config.tolerance);
        if (level.clusters.empty()) {
            trace.levels.push_back(std::move(level));
            break; // forced root
        }
        const std::size_t level_index = trace.levels.size() + 1;

        std::map<std::string, std::size_t> by_id;
        for (std::size_t i = 0; i < work.size(); ++i)
            by_id.emplace(work[i].item.id, i);

        std::vector<WorkItem> next;
        for (std::size_t c = 0; c < level.clusters.size(); ++c) {
            const auto& cluster = level.clusters[c];
            std::vector<QueryNode> children;
            children.reserve(cluster.size());
            for (const auto& member : cluster)
                children.push_back(std::move(work[by_id.at(member.id)].node));
            std::string id = "group:" + std::to_string(level_index) + ":" + std::to_string(c);
            next.push_back({merge_items(std::move(id), cluster), QueryNode::group(std::move(children))});
        }
        for (const auto& n : level.noise)
            next.push_back(std::move(work[by_id.at(n.id)]));

        trace.levels.push_back(std::move(level));
        std::sort(next.begin(), next.end(),
                  [](const WorkItem& a, const WorkItem& b) { return reading_order_less(a.item, b.item); });
        work = std::move(next);
    }

    QueryTree tree;
    if (work.size() == 1 && work.front().node.kind == QueryNode::Kind::Group) {
        tree.root = QueryNode::collection(std::move(work.front().node.children));
    } else {
        std::vector<QueryNode> children;
        children.reserve(work.size());
        for (auto& w : work)
            children.push_back(std::move(w.node));
        tree.root = QueryNode::collection(std::move(children));
    }
    trace.result = canonicalize(tree, leaf_geometry(fields));
    return trace;
}

nlohmann::ordered_json trace_to_json(const HierarchyTrace& trace)
{
    nlohmann::ordered_json j;
    j["interface_id"] = trace.result.interface_id;
    j["tolerance"] = trace.tolerance;
    auto& levels = j["levels"];
    levels = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < trace.levels.size(); ++l) {
        const auto& level = trace.levels[l];
        nlohmann::ordered_json lj;
        lj["level"] = l;
        lj["epsilon"] = proximity_to_json(level.epsilon);
        lj["min_pts"] = level.min_pts;
        auto& items = lj["items"];
        items = nlohmann::ordered_json::array();
        for (const auto& item : level.items)
            items.push_back(item_to_json(item));
        auto& matrix = lj["proximity"];
        matrix = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < level.items.size(); ++i) {
            auto row = nlohmann::ordered_json::array();
            for (std::size_t k = 0; k < level.items.size(); ++k)
                row.push_back(proximity_to_json(level.proximity_at(i, k)));
            matrix.push_back(std::move(row));
        }
        auto& clusters = lj["clusters"];
        clusters = nlohmann::ordered_json::array();
        for (const auto& cluster : level.clusters) {
            auto ids = nlohmann::ordered_json::array();
            for (const auto& item : cluster)
                ids.push_back(item.id);
            clusters.push_back(std::move(ids));
        }
        auto& noise = lj["noise"];
        noise = nlohmann::ordered_json::array();
        for (const auto& item : level.noise)
            noise.push_back(item.id);
        levels.push_back(std::move(lj));
    }
    j["result"] = to_json(trace.result);
    return j;
}

HierarchyTrace trace_from_json(const nlohmann::json& doc)
{
    try {
        HierarchyTrace trace;
        if (!doc.is_object())
            throw ParseError("trace document is not an object");
        trace.tolerance = doc.at("tolerance").get<double>();
        for (const auto& lj : doc.at("levels")) {
            ClusterLevel level;
            level.epsilon = proximity_from_json(lj.at("epsilon"));
            level.min_pts = lj.at("min_pts").get<int>();
            std::map<std::string, std::size_t> by_id;
            for (const auto& ij : lj.at("items")) {
                ClusterItem item{ij.at("id").get<std::string>(), rect_from_json(ij.at("bbox")),
                                 ij.at("members").get<std::vector<std::string>>()};
                if (!by_id.emplace(item.id, level.items.size()).second)
                    throw ParseError("duplicate trace item '" + item.id + "'");
                level.items.push_back(std::move(item));
            }
            const std::size_t n = level.items.size();
            const auto& matrix = lj.at("proximity");
            if (matrix.size() != n)
                throw ParseError("proximity matrix does not match item count");
            for (const auto& row : matrix) {
                if (row.size() != n)
                    throw ParseError("proximity matrix does not match item count");
                for (const auto& cell : row)
                    level.proximities.push_back(proximity_from_json(cell));
            }
            auto resolve = [&](const nlohmann::json& id) -> const ClusterItem& {
                const auto it = by_id.find(id.get<std::string>());
                if (it == by_id.end())
                    throw ParseError("trace references unknown item '" + id.get<std::string>() + "'");
                return level.items[it->second];
            };
            for (const auto& cj : lj.at("clusters")) {
                std::vector<ClusterItem> cluster;
                for (const auto& id : cj)
                    cluster.push_back(resolve(id));
                level.clusters.push_back(std::move(cluster));
            }
            for (const auto& id : lj.at("noise"))
                level.noise.push_back(resolve(id));
            trace.levels.push_back(std::move(level));
        }
        if (const auto it = doc.find("result"); it != doc.end())
            trace.result = tree_from_json(*it);
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed trace document: ") + e.what());
    }
}

} // namespace viqi
