#include "viqi/evaluation.hpp"

#include "viqi/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace viqi {

namespace {

constexpr std::string_view kCsvHeader = "collection,interfaces,mean_fields,correct,mistakes,precision";

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string two_decimals(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

template <typename T>
T parse_number(const std::string& s, std::string_view what)
{
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("bad " + std::string(what) + " value '" + s + "'");
    return v;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

HierarchyTrace extract_query(const InterfaceLayout& layout, const ClusteringConfig& config)
{
    auto trace = build_hierarchy(layout.fields, config);
    trace.result.interface_id = layout.interface_id;
    if (!layout.decorations.empty())
        trace.result.not_rendered = NotRenderedGroup{layout.decorations};
    return trace;
}

double CollectionResult::mean_fields() const
{
    return interfaces == 0 ? 0.0 : static_cast<double>(total_fields) / static_cast<double>(interfaces);
}

double CollectionResult::precision() const
{
    return interfaces == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(interfaces);
}

CollectionResult collection_result(std::string collection, std::size_t interfaces, std::size_t correct,
                                   std::size_t total_fields)
{
    if (interfaces == 0)
        throw DegenerateInputError("collection '" + collection + "' has no interfaces");
    if (correct > interfaces)
        throw DegenerateInputError("collection '" + collection + "' has more correct than interfaces");
    CollectionResult r;
    r.collection = std::move(collection);
    r.interfaces = interfaces;
    r.correct = correct;
    r.mistakes = interfaces - correct;
    r.total_fields = total_fields;
    return r;
}

std::string truncated_precision(std::size_t correct, std::size_t interfaces)
{
    if (interfaces == 0)
        throw DegenerateInputError("precision of an empty collection");
    const std::size_t hundredths = correct * 100 / interfaces;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%zu.%02zu", hundredths / 100, hundredths % 100);
    return buf;
}

CollectionResult evaluate_collection(const CorpusManifest& manifest, const ClusteringConfig& config)
{
    if (manifest.entries.empty())
        throw DegenerateInputError("collection '" + manifest.collection + "' has no entries");

    CollectionResult result;
    result.collection = manifest.collection;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        const auto& entry = manifest.entries[i];
        try {
            const auto layout = load_layout(entry.layout);
            const auto geometry = leaf_geometry(layout.fields);
            const auto gold = canonicalize(load_tree(entry.gold), geometry);
            const auto trace = extract_query(layout, config);

            EntryOutcome outcome;
            outcome.interface_id = layout.interface_id;
            outcome.fields = layout.fields.size();
            outcome.correct = tree_equal(gold, trace.result);
            if (!outcome.correct)
                outcome.diff = family_diff(gold, trace.result);

            ++result.interfaces;
            result.total_fields += outcome.fields;
            ++(outcome.correct ? result.correct : result.mistakes);
            result.outcomes.push_back(std::move(outcome));
        } catch (const Error& e) {
            throw Error("collection '" + manifest.collection + "', entry " + std::to_string(i) + " ("
                        + entry.layout.string() + "): " + e.what());
        }
    }
    return result;
}

EvalReport evaluate_corpus(std::span<const CorpusManifest> manifests, const ClusteringConfig& config)
{
    if (manifests.empty())
        throw DegenerateInputError("no collections to evaluate");
    EvalReport report;
    for (const auto& m : manifests)
        report.collections.push_back(evaluate_collection(m, config));
    return report;
}

std::string render_report(const EvalReport& report, ReportFormat format)
{
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << kCsvHeader << '\n';
        for (const auto& c : report.collections) {
            out << csv_escape(c.collection) << ',' << c.interfaces << ',' << shortest(c.mean_fields()) << ','
                << c.correct << ',' << c.mistakes << ',' << shortest(c.precision()) << '\n';
        }
        return out.str();
    }

    // Metrics as rows, collections as columns.
    constexpr int label_width = 16;
    std::size_t col_width = 8;
    for (const auto& c : report.collections)
        col_width = std::max(col_width, c.collection.size() + 2);

    auto row = [&](std::string_view label, auto&& cell) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-*.*s", label_width, static_cast<int>(label.size()), label.data());
        out << buf;
        for (const auto& c : report.collections) {
            const std::string v = cell(c);
            out << v << std::string(col_width > v.size() ? col_width - v.size() : 1, ' ');
        }
        out << '\n';
    };
    row("", [](const CollectionResult& c) { return c.collection; });
    row("#interfaces", [](const CollectionResult& c) { return std::to_string(c.interfaces); });
    row("#fields", [](const CollectionResult& c) { return two_decimals(c.mean_fields()); });
    row("#correct query", [](const CollectionResult& c) { return std::to_string(c.correct); });
    row("#mistakes", [](const CollectionResult& c) { return std::to_string(c.mistakes); });
    row("Precision", [](const CollectionResult& c) {
        return c.interfaces == 0 ? std::string("-") : truncated_precision(c.correct, c.interfaces);
    });

    // Trailing padding is noise in diffs.
    std::string text = out.str();
    std::string trimmed;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        trimmed += line + '\n';
    }
    return trimmed;
}

EvalReport parse_csv_report(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ParseError("CSV report header mismatch");
    EvalReport report;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        // Collection names containing commas are quoted; split from the right.
        const auto cells = split(line, ',');
        if (cells.size() < 6)
            throw ParseError("CSV report row has too few columns: '" + line + "'");
        const std::size_t n = cells.size();
        std::string name;
        for (std::size_t i = 0; i + 5 < n; ++i)
            name += (i ? "," : "") + cells[i];
        if (name.size() >= 2 && name.front() == '"' && name.back() == '"') {
            name = name.substr(1, name.size() - 2);
            std::string unq;
            for (std::size_t i = 0; i < name.size(); ++i) {
                unq += name[i];
                if (name[i] == '"' && i + 1 < name.size() && name[i + 1] == '"')
                    ++i;
            }
            name = unq;
        }
        CollectionResult r;
        r.collection = name;
        r.interfaces = parse_number<std::size_t>(cells[n - 5], "interfaces");
        const double mean = parse_number<double>(cells[n - 4], "mean_fields");
        r.correct = parse_number<std::size_t>(cells[n - 3], "correct");
        r.mistakes = parse_number<std::size_t>(cells[n - 2], "mistakes");
        (void)parse_number<double>(cells[n - 1], "precision");
        if (r.correct + r.mistakes != r.interfaces)
            throw ParseError("CSV report row counts do not add up: '" + line + "'");
        r.total_fields = static_cast<std::size_t>(std::llround(mean * static_cast<double>(r.interfaces)));
        report.collections.push_back(std::move(r));
    }
    return report;
}

} // namespace viqi
