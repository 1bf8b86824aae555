#include "viqi/query_model.hpp"

#include "viqi/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>
#include <utility>

namespace viqi {

namespace {

constexpr std::array<std::pair<ControlKind, std::string_view>, 6> kControlNames{{
    {ControlKind::Text, "text"},
    {ControlKind::Select, "select"},
    {ControlKind::Radio, "radio"},
    {ControlKind::Checkbox, "checkbox"},
    {ControlKind::Date, "date"},
    {ControlKind::Other, "other"},
}};

constexpr std::array<std::pair<DecorationKind, std::string_view>, 4> kDecorationNames{{
    {DecorationKind::Image, "image"},
    {DecorationKind::Hyperlink, "hyperlink"},
    {DecorationKind::Text, "text"},
    {DecorationKind::Other, "other"},
}};

void collect_leaves(const QueryNode& node, std::vector<std::string>& out)
{
    if (node.is_field()) {
        out.push_back(node.field_id);
        return;
    }
    for (const auto& child : node.children)
        collect_leaves(child, out);
}

void validate_node(const QueryNode& node, bool is_root, std::set<std::string>& seen)
{
    switch (node.kind) {
    case QueryNode::Kind::Field:
        if (is_root)
            throw ValidationError("query tree root must be a collection, found field '" + node.field_id + "'");
        if (node.field_id.empty())
            throw ValidationError("field node with empty id");
        if (!node.children.empty())
            throw ValidationError("field '" + node.field_id + "' has children");
        if (!seen.insert(node.field_id).second)
            throw ValidationError("duplicate leaf '" + node.field_id + "'");
        return;
    case QueryNode::Kind::Collection:
        if (!is_root)
            throw ValidationError("collection node below the root");
        break;
    case QueryNode::Kind::Group:
        if (is_root)
            throw ValidationError("query tree root must be a collection, found group");
        break;
    }
    if (node.children.empty())
        throw ValidationError(is_root ? "collection has no children" : "empty group");
    for (const auto& child : node.children)
        validate_node(child, false, seen);
}

using ReadingKey = std::tuple<double, double, std::string>;

struct CanonicalNode {
    QueryNode node;
    ReadingKey key;
};

CanonicalNode canonical(const QueryNode& node, const LeafGeometry& geometry)
{
    if (node.is_field()) {
        const auto it = geometry.find(node.field_id);
        if (it == geometry.end())
            throw ValidationError("no geometry for field '" + node.field_id + "'");
        return {node, {it->second.y_min, it->second.x_min, node.field_id}};
    }

    std::vector<CanonicalNode> kids;
    kids.reserve(node.children.size());
    for (const auto& child : node.children)
        kids.push_back(canonical(child, geometry));

    if (node.kind == QueryNode::Kind::Group && kids.size() == 1)
        return std::move(kids.front());

    // A lone group under the root spans every leaf; the root takes its children.
    if (node.kind == QueryNode::Kind::Collection && kids.size() == 1 && !kids.front().node.is_field()) {
        CanonicalNode only = std::move(kids.front());
        return {QueryNode{node.kind, {}, node.label, std::move(only.node.children)}, only.key};
    }

    std::stable_sort(kids.begin(), kids.end(),
                     [](const CanonicalNode& a, const CanonicalNode& b) { return a.key < b.key; });

    CanonicalNode out{QueryNode{node.kind, {}, node.label, {}}, kids.front().key};
    out.node.children.reserve(kids.size());
    for (auto& kid : kids)
        out.node.children.push_back(std::move(kid.node));
    return out;
}

void collect_family(const QueryNode& node, LaminarFamily& family, bool is_root)
{
    if (node.is_field())
        return;
    auto leaves = node.leaves();
    if (is_root || leaves.size() >= 2)
        family.emplace(leaves.begin(), leaves.end());
    for (const auto& child : node.children)
        collect_family(child, family, false);
}

nlohmann::ordered_json node_to_json(const QueryNode& node)
{
    nlohmann::ordered_json j;
    switch (node.kind) {
    case QueryNode::Kind::Field:
        j["type"] = "field";
        j["id"] = node.field_id;
        return j;
    case QueryNode::Kind::Group: j["type"] = "group"; break;
    case QueryNode::Kind::Collection: j["type"] = "collection"; break;
    }
    if (node.label)
        j["label"] = *node.label;
    auto& children = j["children"];
    children = nlohmann::ordered_json::array();
    for (const auto& child : node.children)
        children.push_back(node_to_json(child));
    return j;
}

std::string required_string(const nlohmann::json& j, const char* key, std::string_view what)
{
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw ParseError(std::string(what) + ": missing string \"" + key + "\"");
    return it->get<std::string>();
}

QueryNode node_from_json(const nlohmann::json& j, bool is_root, std::set<std::string>& seen)
{
    if (!j.is_object())
        throw ParseError("tree node is not an object");
    const std::string type = required_string(j, "type", "tree node");

    if (type == "field") {
        std::string id = required_string(j, "id", "field node");
        if (id.empty())
            throw ParseError("field node with empty id");
        if (is_root)
            throw ParseError("root node must be a collection, found field '" + id + "'");
        if (!seen.insert(id).second)
            throw ParseError("duplicate field id '" + id + "'");
        return QueryNode::field(std::move(id));
    }

    QueryNode node;
    if (type == "collection") {
        if (!is_root)
            throw ParseError("collection node below the root");
        node.kind = QueryNode::Kind::Collection;
    } else if (type == "group") {
        if (is_root)
            throw ParseError("root node must be a collection, found group");
        node.kind = QueryNode::Kind::Group;
    } else {
        throw ParseError("unknown node type '" + type + "'");
    }

    if (const auto it = j.find("label"); it != j.end() && !it->is_null()) {
        if (!it->is_string())
            throw ParseError("node label must be a string");
        node.label = it->get<std::string>();
    }
    const auto kids = j.find("children");
    if (kids == j.end() || !kids->is_array())
        throw ParseError(type + " node without a children array");
    if (kids->empty())
        throw ParseError(type + " node has no children");
    for (const auto& child : *kids)
        node.children.push_back(node_from_json(child, false, seen));
    return node;
}

} // namespace

std::string_view to_string(ControlKind kind) noexcept
{
    for (const auto& [k, name] : kControlNames)
        if (k == kind)
            return name;
    return "other";
}

std::string_view to_string(DecorationKind kind) noexcept
{
    for (const auto& [k, name] : kDecorationNames)
        if (k == kind)
            return name;
    return "other";
}

ControlKind parse_control_kind(std::string_view name)
{
    for (const auto& [k, n] : kControlNames)
        if (n == name)
            return k;
    throw ParseError("unknown control kind '" + std::string(name) + "'");
}

DecorationKind parse_decoration_kind(std::string_view name)
{
    for (const auto& [k, n] : kDecorationNames)
        if (n == name)
            return k;
    throw ParseError("unknown decoration kind '" + std::string(name) + "'");
}

QueryNode QueryNode::field(std::string id)
{
    return QueryNode{Kind::Field, std::move(id), std::nullopt, {}};
}

QueryNode QueryNode::group(std::vector<QueryNode> children, std::optional<std::string> label)
{
    return QueryNode{Kind::Group, {}, std::move(label), std::move(children)};
}

QueryNode QueryNode::collection(std::vector<QueryNode> children)
{
    return QueryNode{Kind::Collection, {}, std::nullopt, std::move(children)};
}

std::vector<std::string> QueryNode::leaves() const
{
    std::vector<std::string> out;
    collect_leaves(*this, out);
    return out;
}

LeafGeometry leaf_geometry(std::span<const FieldElement> fields)
{
    LeafGeometry geometry;
    for (const auto& f : fields)
        geometry.emplace(f.id, f.bbox);
    return geometry;
}

void validate_tree(const QueryTree& tree)
{
    std::set<std::string> seen;
    validate_node(tree.root, true, seen);
}

QueryTree canonicalize(const QueryTree& tree, const LeafGeometry& geometry)
{
    validate_tree(tree);
    QueryTree out;
    out.interface_id = tree.interface_id;
    out.root = canonical(tree.root, geometry).node;
    out.not_rendered = tree.not_rendered;
    return out;
}

LaminarFamily laminar_family(const QueryTree& tree)
{
    LaminarFamily family;
    collect_family(tree.root, family, true);
    return family;
}

bool tree_equal(const QueryTree& a, const QueryTree& b)
{
    const auto la = a.root.leaves();
    const auto lb = b.root.leaves();
    if (LeafSet(la.begin(), la.end()) != LeafSet(lb.begin(), lb.end()))
        throw NotComparableError("trees '" + a.interface_id + "' and '" + b.interface_id
                                 + "' cover different fields");
    return laminar_family(a) == laminar_family(b);
}

FamilyDiff family_diff(const QueryTree& expected, const QueryTree& actual)
{
    const auto fe = laminar_family(expected);
    const auto fa = laminar_family(actual);
    FamilyDiff diff;
    std::set_difference(fe.begin(), fe.end(), fa.begin(), fa.end(), std::back_inserter(diff.missed));
    std::set_difference(fa.begin(), fa.end(), fe.begin(), fe.end(), std::back_inserter(diff.spurious));
    return diff;
}

nlohmann::ordered_json rect_to_json(const Rect& r)
{
    return nlohmann::ordered_json::array({r.x_min, r.y_min, r.x_max, r.y_max});
}

Rect rect_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 4)
        throw ParseError("bbox must be an array [x_min, y_min, x_max, y_max]");
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number())
            throw ParseError("bbox coordinates must be numbers");
        v[i] = j[i].get<double>();
    }
    return {v[0], v[1], v[2], v[3]};
}

nlohmann::ordered_json to_json(const QueryTree& tree)
{
    nlohmann::ordered_json j;
    j["interface_id"] = tree.interface_id;
    j["root"] = node_to_json(tree.root);
    if (tree.not_rendered) {
        auto& members = j["not_rendered"];
        members = nlohmann::ordered_json::array();
        for (const auto& d : tree.not_rendered->members) {
            nlohmann::ordered_json m;
            m["id"] = d.id;
            m["kind"] = to_string(d.kind);
            m["label"] = d.label;
            m["bbox"] = rect_to_json(d.bbox);
            members.push_back(std::move(m));
        }
    }
    return j;
}

QueryTree tree_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ParseError("tree document is not an object");
    QueryTree tree;
    tree.interface_id = required_string(doc, "interface_id", "tree document");
    const auto root = doc.find("root");
    if (root == doc.end())
        throw ParseError("tree document has no root");

    std::set<std::string> seen;
    tree.root = node_from_json(*root, true, seen);

    if (const auto nr = doc.find("not_rendered"); nr != doc.end()) {
        if (!nr->is_array())
            throw ParseError("not_rendered must be an array");
        NotRenderedGroup group;
        for (const auto& m : *nr) {
            if (!m.is_object())
                throw ParseError("not_rendered member is not an object");
            DecorationElement d;
            d.id = required_string(m, "id", "not_rendered member");
            if (!seen.insert(d.id).second)
                throw ParseError("duplicate id '" + d.id + "'");
            d.kind = parse_decoration_kind(required_string(m, "kind", "not_rendered member"));
            d.label = m.value("label", std::string{});
            d.bbox = rect_from_json(m.at("bbox"));
            group.members.push_back(std::move(d));
        }
        tree.not_rendered = std::move(group);
    }
    return tree;
}

std::string serialize(const QueryTree& tree)
{
    return to_json(tree).dump(2) + "\n";
}

QueryTree deserialize(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed tree document: ") + e.what());
    }
    try {
        return tree_from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed tree document: ") + e.what());
    }
}

} // namespace viqi
