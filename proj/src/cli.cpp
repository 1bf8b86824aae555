#include "viqi/cli.hpp"

#include "viqi/clustering.hpp"
#include "viqi/error.hpp"
#include "viqi/evaluation.hpp"
#include "viqi/ingestion.hpp"
#include "viqi/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <limits>
#include <map>
#include <ostream>

namespace viqi::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    double align_tolerance{kDefaultAlignTolerance};
    int min_pts{1};
    bool trace{false};
    std::string trace_path;
    std::string out;

    [[nodiscard]] ClusteringConfig clustering() const { return {align_tolerance, min_pts}; }
};

void add_clustering_flags(CLI::App& cmd, RunConfig& cfg)
{
    cmd.add_option("--tolerance", cfg.align_tolerance, "Alignment tolerance in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--min-pts", cfg.min_pts, "Minimum neighbours for a dense item")
        ->check(CLI::Range(1, std::numeric_limits<int>::max()))
        ->capture_default_str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

int cmd_extract(const std::string& layout_path, const RunConfig& cfg, std::ostream& out)
{
    const auto layout = load_layout(layout_path);
    const auto trace = extract_query(layout, cfg.clustering());
    emit(cfg.out, serialize(trace.result), out);
    if (cfg.trace) {
        std::string path = cfg.trace_path;
        if (path.empty())
            path = fs::path(cfg.out).replace_extension(".trace.json").string();
        write_file(path, trace_to_json(trace).dump(2) + "\n");
    }
    return kSuccess;
}

int cmd_evaluate(const std::vector<std::string>& manifest_paths, const RunConfig& cfg,
                 const std::string& format, std::ostream& out)
{
    std::vector<CorpusManifest> manifests;
    for (const auto& p : manifest_paths)
        manifests.push_back(load_manifest(p));
    const auto report = evaluate_corpus(manifests, cfg.clustering());
    out << render_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Table);
    if (!cfg.out.empty())
        write_file(cfg.out, render_report(report, ReportFormat::Csv));
    return kSuccess;
}

struct GenerateOptions {
    std::uint64_t seed{1};
    int count{1};
    std::string collection{"synthetic"};
    SyntheticSpec spec;
    std::string out_dir;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out)
{
    // Everything is generated before the first write.
    std::vector<SyntheticInterface> generated;
    for (int i = 0; i < opt.count; ++i) {
        const auto seed = opt.seed + static_cast<std::uint64_t>(i);
        generated.push_back(generate_synthetic(seed, opt.spec, opt.collection + "-" + std::to_string(seed)));
    }

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    CorpusManifest manifest{opt.collection, {}};
    for (const auto& g : generated) {
        const std::string layout_name = g.layout.interface_id + ".layout.json";
        const std::string gold_name = g.layout.interface_id + ".gold.json";
        write_file(dir / layout_name, serialize_layout(g.layout));
        write_file(dir / gold_name, serialize(g.gold));
        manifest.entries.push_back({layout_name, gold_name});
    }
    write_file(dir / "manifest.json", serialize_manifest(manifest));
    out << "wrote " << generated.size() << " interface(s) to " << dir.string() << '\n';
    return kSuccess;
}

int cmd_render_svg(const std::string& layout_path, const std::string& trace_path, const std::string& out_path,
                   std::ostream& out)
{
    const auto layout = load_layout(layout_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(trace_path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(trace_path + ": malformed trace document: " + e.what());
    }
    const auto trace = trace_from_json(doc);
    emit(out_path, render_svg(layout, trace), out);
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Visual extraction of hierarchical queries from form layouts", "viqi"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* extract = app.add_subcommand("extract", "Extract the query tree of one layout");
    std::string layout_path;
    extract->add_option("layout", layout_path, "Layout document")->required();
    add_clustering_flags(*extract, cfg);
    extract->add_option("--out", cfg.out, "Tree document path (default: stdout)");
    auto* trace_opt = extract->add_option("--trace", cfg.trace_path,
                                          "Also write the clustering trace (default path: <out>.trace.json)")
                          ->expected(0, 1);

    auto* evaluate = app.add_subcommand("evaluate", "Score extraction against gold trees");
    std::vector<std::string> manifests;
    std::string format = "table";
    evaluate->add_option("manifests", manifests, "Corpus manifests, one per collection")->required();
    add_clustering_flags(*evaluate, cfg);
    evaluate->add_option("--format", format, "Report format on stdout")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
    evaluate->add_option("--out", cfg.out, "Also write the CSV report here");

    auto* generate = app.add_subcommand("generate", "Write synthetic layouts, gold trees and a manifest");
    GenerateOptions gen;
    generate->add_option("--seed", gen.seed, "First seed")->capture_default_str();
    generate->add_option("--count", gen.count, "Number of interfaces (consecutive seeds)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--collection", gen.collection, "Collection name")->capture_default_str();
    generate->add_option("--groups", gen.spec.groups, "Groups per interface")->capture_default_str();
    generate->add_option("--fields-min", gen.spec.min_fields_per_group, "Fewest fields per group")
        ->capture_default_str();
    generate->add_option("--fields-max", gen.spec.max_fields_per_group, "Most fields per group")
        ->capture_default_str();
    generate->add_option("--jitter", gen.spec.jitter, "Max edge perturbation in pixels")->capture_default_str();
    generate->add_option("--page-width", gen.spec.page_width)->capture_default_str();
    generate->add_option("--page-height", gen.spec.page_height)->capture_default_str();
    generate->add_option("--out", gen.out_dir, "Output directory")->required();

    auto* render = app.add_subcommand("render-svg", "Draw the first clustering round of a trace");
    std::string svg_layout;
    std::string svg_trace;
    std::string svg_out;
    render->add_option("layout", svg_layout, "Layout document")->required();
    render->add_option("trace", svg_trace, "Trace document")->required();
    render->add_option("--out", svg_out, "SVG path (default: stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (extract->parsed()) {
            cfg.trace = trace_opt->count() > 0;
            if (cfg.trace && cfg.trace_path.empty() && (cfg.out.empty() || cfg.out == "-")) {
                err << "viqi: --trace needs a path when --out is not given\n";
                return kUsageError;
            }
            return cmd_extract(layout_path, cfg, out);
        }
        if (evaluate->parsed())
            return cmd_evaluate(manifests, cfg, format, out);
        if (generate->parsed())
            return cmd_generate(gen, out);
        if (render->parsed())
            return cmd_render_svg(svg_layout, svg_trace, svg_out, out);
    } catch (const Error& e) {
        err << "viqi: " << e.what() << '\n';
        return kDataError;
    } catch (const fs::filesystem_error& e) {
        err << "viqi: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

} // namespace viqi::cli
