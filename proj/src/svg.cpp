#include "viqi/svg.hpp"

#include "viqi/error.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace viqi {

namespace {

constexpr std::array<const char*, 8> kPalette{
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#1f78b4"};
constexpr const char* kNoiseColour = "#808080";

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c; break;
        }
    }
    return out;
}

void check_ids(const InterfaceLayout& layout, const ClusterLevel& level)
{
    std::set<std::string> fields;
    for (const auto& f : layout.fields)
        fields.insert(f.id);
    std::set<std::string> items;
    for (const auto& item : level.items)
        items.insert(item.id);
    if (fields == items)
        return;
    for (const auto& id : items)
        if (!fields.count(id))
            throw ValidationError("trace item '" + id + "' is not a field of layout '" + layout.interface_id + "'");
    for (const auto& id : fields)
        if (!items.count(id))
            throw ValidationError("layout field '" + id + "' is missing from the trace");
}

} // namespace

std::string render_svg(const InterfaceLayout& layout, const HierarchyTrace& trace)
{
    const ClusterLevel* level0 = trace.levels.empty() ? nullptr : &trace.levels.front();
    if (level0)
        check_ids(layout, *level0);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(layout.page_width) << "\" height=\""
        << num(layout.page_height) << "\" viewBox=\"0 0 " << num(layout.page_width) << ' '
        << num(layout.page_height) << "\">\n";
    out << "<!-- interface: " << xml_escape(layout.interface_id) << " -->\n";
    out << "<!-- circle radius (px) = level-0 eps x mean alignment score of the field's aligned pairs -->\n";
    if (level0) {
        out << "<!-- level-0 eps: "
            << (level0->epsilon.is_unreachable() ? std::string("unreachable") : num(level0->epsilon.value()))
            << ", tolerance: " << num(trace.tolerance) << " -->\n";
    }
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(layout.page_width) << "\" height=\"" << num(layout.page_height)
        << "\" fill=\"#ffffff\"/>\n";

    for (const auto& d : layout.decorations) {
        out << "<rect class=\"decoration\" id=\"" << xml_escape(d.id) << "\" x=\"" << num(d.bbox.x_min)
            << "\" y=\"" << num(d.bbox.y_min) << "\" width=\"" << num(d.bbox.width()) << "\" height=\""
            << num(d.bbox.height()) << "\" fill=\"none\" stroke=\"#c0c0c0\" stroke-dasharray=\"2,2\"/>\n";
    }

    std::map<std::string, std::size_t> cluster_of;
    if (level0) {
        for (std::size_t c = 0; c < level0->clusters.size(); ++c)
            for (const auto& item : level0->clusters[c])
                cluster_of.emplace(item.id, c);
    }

    for (const auto& f : layout.fields) {
        const auto it = cluster_of.find(f.id);
        const bool clustered = it != cluster_of.end();
        const char* colour = level0 && clustered ? kPalette[it->second % kPalette.size()] : "#000000";
        out << "<rect class=\"field\" id=\"" << xml_escape(f.id) << "\" x=\"" << num(f.bbox.x_min) << "\" y=\""
            << num(f.bbox.y_min) << "\" width=\"" << num(f.bbox.width()) << "\" height=\""
            << num(f.bbox.height()) << "\" fill=\"none\" stroke=\"" << colour << "\"/>\n";
        out << "<text x=\"" << num(f.bbox.x_min + 2.0) << "\" y=\"" << num(f.bbox.y_max - 4.0)
            << "\" font-size=\"9\" font-family=\"sans-serif\">" << xml_escape(f.label.empty() ? f.id : f.label)
            << "</text>\n";
    }

    if (level0) {
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < level0->items.size(); ++i)
            index.emplace(level0->items[i].id, i);
        const double eps = level0->epsilon.is_unreachable() ? 0.0 : level0->epsilon.value();

        for (const auto& f : layout.fields) {
            const std::size_t i = index.at(f.id);
            int score_sum = 0;
            int partners = 0;
            for (std::size_t j = 0; j < level0->items.size(); ++j) {
                if (j == i || level0->proximity_at(i, j).is_unreachable())
                    continue;
                score_sum += align_score(level0->items[i].bbox, level0->items[j].bbox, trace.tolerance);
                ++partners;
            }
            const double radius = partners == 0 ? 0.0 : eps * score_sum / partners;
            const auto c = f.bbox.center();
            const auto it = cluster_of.find(f.id);
            out << "<circle class=\"" << (it == cluster_of.end() ? "noise" : "scope") << "\" data-field=\""
                << xml_escape(f.id) << "\" cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\""
                << num(radius) << "\" fill=\"none\" ";
            if (it == cluster_of.end())
                out << "stroke=\"" << kNoiseColour << "\" stroke-dasharray=\"4,3\"/>\n";
            else
                out << "stroke=\"" << kPalette[it->second % kPalette.size()] << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace viqi
