#include "viqi/ingestion.hpp"

#include "viqi/error.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace viqi {

namespace {

// Synthetic row geometry, in pixels.
constexpr double kMargin = 20.0;
constexpr double kRowHeight = 24.0;
constexpr double kFieldGap = 12.0;
constexpr double kRowGap = 48.0;
constexpr double kMinFieldWidth = 30.0;
constexpr double kMaxRowWidth = 600.0;

std::string element_name(std::string_view id)
{
    return "element '" + std::string(id) + "'";
}

void check_box(const Rect& r, std::string_view id, double width, double height)
{
    if (!r.valid())
        throw ValidationError(element_name(id) + " has an invalid bbox (non-finite or min > max)");
    if (r.x_min < 0.0 || r.y_min < 0.0 || r.x_max > width || r.y_max > height)
        throw ValidationError(element_name(id) + " lies outside the page");
}

Rect jitter_rect(const Rect& r, double amount, std::mt19937_64& rng, double width, double height)
{
    if (amount <= 0.0)
        return r;
    std::uniform_real_distribution<double> shift(-amount, amount);
    Rect out{r.x_min + shift(rng), r.y_min + shift(rng), r.x_max + shift(rng), r.y_max + shift(rng)};
    // Collapsing to the midpoint keeps every edge within `amount` of its origin.
    if (out.x_min > out.x_max)
        out.x_min = out.x_max = (out.x_min + out.x_max) / 2.0;
    if (out.y_min > out.y_max)
        out.y_min = out.y_max = (out.y_min + out.y_max) / 2.0;
    out.x_min = std::clamp(out.x_min, 0.0, width);
    out.x_max = std::clamp(out.x_max, 0.0, width);
    out.y_min = std::clamp(out.y_min, 0.0, height);
    out.y_max = std::clamp(out.y_max, 0.0, height);
    return out;
}

} // namespace

void validate_layout(const InterfaceLayout& layout)
{
    if (layout.interface_id.empty())
        throw ValidationError("layout has an empty interface_id");
    if (!(layout.page_width > 0.0) || !(layout.page_height > 0.0))
        throw ValidationError("layout '" + layout.interface_id + "' has a non-positive page size");
    if (layout.fields.empty())
        throw ValidationError("layout '" + layout.interface_id + "' has no field elements");

    std::set<std::string, std::less<>> ids;
    auto claim = [&](const std::string& id) {
        if (id.empty())
            throw ValidationError("layout '" + layout.interface_id + "' has an element with an empty id");
        if (!ids.insert(id).second)
            throw ValidationError("duplicate element id '" + id + "'");
    };
    for (const auto& f : layout.fields) {
        claim(f.id);
        check_box(f.bbox, f.id, layout.page_width, layout.page_height);
    }
    for (const auto& d : layout.decorations) {
        claim(d.id);
        check_box(d.bbox, d.id, layout.page_width, layout.page_height);
    }
}

nlohmann::ordered_json to_json(const InterfaceLayout& layout)
{
    nlohmann::ordered_json j;
    j["interface_id"] = layout.interface_id;
    j["page"] = {{"width", layout.page_width}, {"height", layout.page_height}};
    auto& elements = j["elements"];
    elements = nlohmann::ordered_json::array();
    for (const auto& f : layout.fields) {
        nlohmann::ordered_json e;
        e["id"] = f.id;
        e["kind"] = "field";
        e["label"] = f.label;
        e["control"] = to_string(f.control);
        e["bbox"] = rect_to_json(f.bbox);
        elements.push_back(std::move(e));
    }
    for (const auto& d : layout.decorations) {
        nlohmann::ordered_json e;
        e["id"] = d.id;
        e["kind"] = "decoration";
        e["label"] = d.label;
        e["control"] = to_string(d.kind);
        e["bbox"] = rect_to_json(d.bbox);
        elements.push_back(std::move(e));
    }
    return j;
}

InterfaceLayout layout_from_json(const nlohmann::json& doc)
{
    InterfaceLayout layout;
    try {
        if (!doc.is_object())
            throw ParseError("layout document is not an object");
        layout.interface_id = doc.at("interface_id").get<std::string>();
        const auto& page = doc.at("page");
        layout.page_width = page.at("width").get<double>();
        layout.page_height = page.at("height").get<double>();
        const auto& elements = doc.at("elements");
        if (!elements.is_array())
            throw ParseError("layout elements must be an array");
        for (const auto& e : elements) {
            if (!e.is_object())
                throw ParseError("layout element is not an object");
            const auto id = e.at("id").get<std::string>();
            const auto kind = e.at("kind").get<std::string>();
            const auto label = e.value("label", std::string{});
            const auto control = e.value("control", std::string{"other"});
            Rect bbox;
            try {
                bbox = rect_from_json(e.at("bbox"));
            } catch (const ParseError& err) {
                throw ParseError(element_name(id) + ": " + err.what());
            }
            if (kind == "field")
                layout.fields.push_back({id, label, parse_control_kind(control), bbox});
            else if (kind == "decoration")
                layout.decorations.push_back({id, label, parse_decoration_kind(control), bbox});
            else
                throw ParseError(element_name(id) + " has unknown kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed layout document: ") + e.what());
    }
    validate_layout(layout);
    return layout;
}

std::string serialize_layout(const InterfaceLayout& layout)
{
    return to_json(layout).dump(2) + "\n";
}

InterfaceLayout parse_layout(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed layout document: ") + e.what());
    }
    return layout_from_json(doc);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw Error("failed writing '" + path.string() + "'");
}

InterfaceLayout load_layout(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    try {
        return parse_layout(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

QueryTree load_tree(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    try {
        return deserialize(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

CorpusManifest load_manifest(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    CorpusManifest manifest;
    try {
        const auto doc = nlohmann::json::parse(text);
        manifest.collection = doc.at("collection").get<std::string>();
        const auto base = path.parent_path();
        std::size_t index = 0;
        for (const auto& e : doc.at("entries")) {
            CorpusEntry entry{e.at("layout").get<std::string>(), e.at("gold").get<std::string>()};
            for (auto* p : {&entry.layout, &entry.gold}) {
                if (p->is_relative())
                    *p = base / *p;
                if (!std::filesystem::exists(*p))
                    throw ValidationError(path.string() + ": entry " + std::to_string(index)
                                          + " references missing file '" + p->string() + "'");
            }
            manifest.entries.push_back(std::move(entry));
            ++index;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": malformed manifest: " + e.what());
    }
    return manifest;
}

std::string serialize_manifest(const CorpusManifest& manifest)
{
    nlohmann::ordered_json j;
    j["collection"] = manifest.collection;
    auto& entries = j["entries"];
    entries = nlohmann::ordered_json::array();
    for (const auto& e : manifest.entries)
        entries.push_back({{"layout", e.layout.generic_string()}, {"gold", e.gold.generic_string()}});
    return j.dump(2) + "\n";
}

SyntheticInterface generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec,
                                      std::string interface_id)
{
    if (spec.groups < 1)
        throw GenerationError("group count must be positive");
    if (spec.min_fields_per_group < 1 || spec.max_fields_per_group < spec.min_fields_per_group)
        throw GenerationError("fields per group must be a positive range");
    if (!(spec.jitter >= 0.0))
        throw GenerationError("jitter must be non-negative");

    const double row_width = std::min(kMaxRowWidth, spec.page_width - 2.0 * kMargin);
    const int k_max = spec.max_fields_per_group;
    if (k_max * kMinFieldWidth + (k_max - 1) * kFieldGap > row_width)
        throw GenerationError(std::to_string(k_max) + " fields per group do not fit in a "
                              + std::to_string(spec.page_width) + " px wide page");
    const double needed_height =
        2.0 * kMargin + spec.groups * kRowHeight + (spec.groups - 1) * kRowGap;
    if (needed_height > spec.page_height)
        throw GenerationError(std::to_string(spec.groups) + " groups do not fit in a "
                              + std::to_string(spec.page_height) + " px tall page");

    if (interface_id.empty())
        interface_id = "synthetic-" + std::to_string(seed);

    std::mt19937_64 rng(seed);
    SyntheticInterface out;
    out.layout.interface_id = interface_id;
    out.layout.page_width = spec.page_width;
    out.layout.page_height = spec.page_height;

    std::uniform_int_distribution<int> field_count(spec.min_fields_per_group, spec.max_fields_per_group);
    std::uniform_int_distribution<int> control_pick(0, 1);

    std::vector<QueryNode> rows;
    for (int r = 0; r < spec.groups; ++r) {
        const int k = field_count(rng);
        // Integer widths that fill the row exactly, so every row box spans
        // the same horizontal extent.
        const auto slack = static_cast<int>(row_width - k * kMinFieldWidth - (k - 1) * kFieldGap);
        std::uniform_int_distribution<int> cut(0, slack);
        std::vector<int> cuts{0, slack};
        for (int i = 0; i < k - 1; ++i)
            cuts.push_back(cut(rng));
        std::sort(cuts.begin(), cuts.end());

        const double y = kMargin + r * (kRowHeight + kRowGap);
        double x = kMargin;
        std::vector<QueryNode> members;
        for (int i = 0; i < k; ++i) {
            double w = kMinFieldWidth + (cuts[i + 1] - cuts[i]);
            if (i == k - 1)
                w = kMargin + row_width - x;   // absorb the truncated remainder
            FieldElement f;
            f.id = "g" + std::to_string(r) + "f" + std::to_string(i);
            f.label = "Group " + std::to_string(r) + " field " + std::to_string(i);
            f.control = control_pick(rng) == 0 ? ControlKind::Text : ControlKind::Select;
            f.bbox = {x, y, x + w, y + kRowHeight};
            x += w + kFieldGap;
            members.push_back(QueryNode::field(f.id));
            out.layout.fields.push_back(std::move(f));
        }
        rows.push_back(QueryNode::group(std::move(members), "Group " + std::to_string(r)));
    }

    for (auto& f : out.layout.fields)
        f.bbox = jitter_rect(f.bbox, spec.jitter, rng, spec.page_width, spec.page_height);

    QueryTree gold;
    gold.interface_id = interface_id;
    if (rows.size() == 1)
        gold.root = QueryNode::collection(std::move(rows.front().children));
    else
        gold.root = QueryNode::collection(std::move(rows));
    out.gold = canonicalize(gold, leaf_geometry(out.layout.fields));

    validate_layout(out.layout);
    return out;
}

} // namespace viqi
