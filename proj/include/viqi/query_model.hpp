#pragma once

#include "viqi/geometry.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace viqi {

enum class ControlKind { Text, Select, Radio, Checkbox, Date, Other };
enum class DecorationKind { Image, Hyperlink, Text, Other };

[[nodiscard]] std::string_view to_string(ControlKind kind) noexcept;
[[nodiscard]] std::string_view to_string(DecorationKind kind) noexcept;
/// Throws ParseError on an unknown name.
[[nodiscard]] ControlKind parse_control_kind(std::string_view name);
[[nodiscard]] DecorationKind parse_decoration_kind(std::string_view name);

/// One input control of a query interface: a single query condition.
struct FieldElement {
    std::string id;
    std::string label;
    ControlKind control{ControlKind::Other};
    Rect bbox;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// Page element with no counterpart in the query (logo, link, caption).
struct DecorationElement {
    std::string id;
    std::string label;
    DecorationKind kind{DecorationKind::Other};
    Rect bbox;

    friend bool operator==(const DecorationElement&, const DecorationElement&) = default;
};

/// A visual box of the query model: a field leaf, a rendered group, or the
/// rendered collection at the root.
struct QueryNode {
    enum class Kind { Field, Group, Collection };

    Kind kind{Kind::Field};
    std::string field_id;               // Field only
    std::optional<std::string> label;   // Group annotation, never compared
    std::vector<QueryNode> children;    // Group and Collection

    static QueryNode field(std::string id);
    static QueryNode group(std::vector<QueryNode> children, std::optional<std::string> label = {});
    static QueryNode collection(std::vector<QueryNode> children);

    [[nodiscard]] bool is_field() const noexcept { return kind == Kind::Field; }

    /// Leaf ids in depth-first order.
    [[nodiscard]] std::vector<std::string> leaves() const;

    friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

struct NotRenderedGroup {
    std::vector<DecorationElement> members;

    friend bool operator==(const NotRenderedGroup&, const NotRenderedGroup&) = default;
};

/// Hierarchical query of one interface. The not-rendered group sits beside
/// the root, never under it.
struct QueryTree {
    std::string interface_id;
    QueryNode root{QueryNode::Kind::Collection, {}, {}, {}};
    std::optional<NotRenderedGroup> not_rendered;

    friend bool operator==(const QueryTree&, const QueryTree&) = default;
};

/// Field geometry keyed by id, used to put siblings in reading order.
using LeafGeometry = std::map<std::string, Rect, std::less<>>;

[[nodiscard]] LeafGeometry leaf_geometry(std::span<const FieldElement> fields);

/// Checks structural invariants: Collection only at the root, no empty
/// Group/Collection, no duplicate leaf. Throws ValidationError.
void validate_tree(const QueryTree& tree);

/// Collapses single-child groups and sorts siblings by the reading position
/// (y_min, x_min, id) of their top-left leaf. Idempotent.
/// Throws ValidationError on a malformed tree or a leaf missing from `geometry`.
[[nodiscard]] QueryTree canonicalize(const QueryTree& tree, const LeafGeometry& geometry);

using LeafSet = std::set<std::string>;
using LaminarFamily = std::set<LeafSet>;

/// Leaf sets of the root and of every group with two or more leaves.
[[nodiscard]] LaminarFamily laminar_family(const QueryTree& tree);

/// Grouping equality: same laminar family. Labels and sibling order are
/// ignored. Throws NotComparableError when the leaf universes differ.
[[nodiscard]] bool tree_equal(const QueryTree& a, const QueryTree& b);

/// Groups present in `expected` but not in `actual` (missed) and vice versa
/// (spurious). Diagnostic only.
struct FamilyDiff {
    std::vector<LeafSet> missed;
    std::vector<LeafSet> spurious;
};
[[nodiscard]] FamilyDiff family_diff(const QueryTree& expected, const QueryTree& actual);

[[nodiscard]] nlohmann::ordered_json to_json(const QueryTree& tree);
/// Throws ParseError on unknown node types, duplicate ids, missing or
/// misplaced collection, empty groups.
[[nodiscard]] QueryTree tree_from_json(const nlohmann::json& doc);

[[nodiscard]] std::string serialize(const QueryTree& tree);
[[nodiscard]] QueryTree deserialize(std::string_view text);

[[nodiscard]] nlohmann::ordered_json rect_to_json(const Rect& r);
/// Expects [x_min, y_min, x_max, y_max]; throws ParseError otherwise.
[[nodiscard]] Rect rect_from_json(const nlohmann::json& j);

} // namespace viqi
