#include "viqi/error.hpp"
#include "viqi/evaluation.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace viqi;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

CorpusManifest write_corpus(const fs::path& dir, const std::string& collection, int count,
                            const SyntheticSpec& spec, std::uint64_t first_seed = 0)
{
    CorpusManifest m{collection, {}};
    for (int i = 0; i < count; ++i) {
        const auto g = generate_synthetic(first_seed + i, spec, collection + std::to_string(i));
        const auto layout = dir / (g.layout.interface_id + ".layout.json");
        const auto gold = dir / (g.layout.interface_id + ".gold.json");
        write_file(layout, serialize_layout(g.layout));
        write_file(gold, serialize(g.gold));
        m.entries.push_back({layout, gold});
    }
    return m;
}

} // namespace

TEST_CASE("truncated precision reproduces the published two-decimal values")
{
    CHECK(truncated_precision(13, 20) == "0.65");
    CHECK(truncated_precision(14, 19) == "0.73");
    CHECK(truncated_precision(17, 19) == "0.89");
    CHECK(truncated_precision(16, 19) == "0.84");
    CHECK(truncated_precision(19, 19) == "1.00");
    CHECK(truncated_precision(0, 7) == "0.00");
    CHECK_THROWS_AS((void)truncated_precision(1, 0), DegenerateInputError);
}

TEST_CASE("collection_result keeps the exact ratio")
{
    const auto r = collection_result("Auto", 19, 14, 148);
    CHECK(r.mistakes == 5);
    CHECK(r.precision() == doctest::Approx(14.0 / 19.0));
    CHECK(r.mean_fields() == doctest::Approx(148.0 / 19.0));
    CHECK_THROWS_AS((void)collection_result("x", 0, 0), DegenerateInputError);
    CHECK_THROWS_AS((void)collection_result("x", 3, 4), DegenerateInputError);
}

TEST_CASE("render_report: csv and table layouts")
{
    EvalReport report;
    report.collections.push_back(collection_result("Airfare", 20, 13, 215));
    report.collections.push_back(collection_result("Auto.", 19, 14, 148));
    report.collections.push_back(collection_result("Books", 19, 17, 102));

    const auto csv = render_report(report, ReportFormat::Csv);
    CHECK(csv.rfind("collection,interfaces,mean_fields,correct,mistakes,precision\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("Airfare,20,10.75,13,7,0.65\n") != std::string::npos);

    const auto table = render_report(report, ReportFormat::Table);
    CHECK(table.find("Precision       0.65     0.73     0.89\n") != std::string::npos);
    CHECK(table.find("#fields         10.75    7.79     5.37\n") != std::string::npos);
    CHECK(table.find("#mistakes       7        5        2\n") != std::string::npos);
}

TEST_CASE("render_report: csv parses back to the same counts")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        EvalReport report;
        const int rows = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int r = 0; r < rows; ++r) {
            const auto n = std::uniform_int_distribution<std::size_t>(1, 500)(rng);
            const auto c = std::uniform_int_distribution<std::size_t>(0, n)(rng);
            const auto fields = std::uniform_int_distribution<std::size_t>(n, 40 * n)(rng);
            report.collections.push_back(
                collection_result(r % 2 ? "c" + std::to_string(r) : "name, with \"comma\"", n, c, fields));
        }
        const auto back = parse_csv_report(render_report(report, ReportFormat::Csv));
        REQUIRE(back.collections.size() == report.collections.size());
        for (std::size_t i = 0; i < back.collections.size(); ++i) {
            CHECK(back.collections[i].collection == report.collections[i].collection);
            CHECK(back.collections[i].interfaces == report.collections[i].interfaces);
            CHECK(back.collections[i].correct == report.collections[i].correct);
            CHECK(back.collections[i].mistakes == report.collections[i].mistakes);
            CHECK(back.collections[i].total_fields == report.collections[i].total_fields);
        }
    }
    CHECK_THROWS_AS((void)parse_csv_report("a,b\n"), ParseError);
}

TEST_CASE("evaluate_corpus on jitter-free synthetic collections is perfect")
{
    TempDir tmp("viqi_eval_clean");
    std::vector<CorpusManifest> manifests{
        write_corpus(tmp.path, "Airfare", 8, {5, 1, 4, 0.0}),
        write_corpus(tmp.path, "Books", 8, {2, 1, 3, 0.0}),
    };
    const auto report = evaluate_corpus(manifests);
    REQUIRE(report.collections.size() == 2);
    for (const auto& c : report.collections) {
        CHECK(c.interfaces == 8);
        CHECK(c.correct == 8);
        CHECK(c.precision() == 1.0);
    }
    const auto again = evaluate_corpus(manifests);
    CHECK(render_report(again, ReportFormat::Csv) == render_report(report, ReportFormat::Csv));
}

TEST_CASE("evaluate_collection records missed and spurious groups")
{
    TempDir tmp("viqi_eval_noisy");
    auto m = write_corpus(tmp.path, "Noisy", 20, {4, 2, 4, 12.0});
    const auto r = evaluate_collection(m);
    CHECK(r.correct + r.mistakes == 20);
    CHECK(r.mistakes > 0);
    for (const auto& o : r.outcomes)
        if (!o.correct)
            CHECK(!(o.diff.missed.empty() && o.diff.spurious.empty()));
}

TEST_CASE("evaluate_corpus errors")
{
    CHECK_THROWS_AS((void)evaluate_corpus(std::vector<CorpusManifest>{}), DegenerateInputError);
    const std::vector<CorpusManifest> empty{{"Empty", {}}};
    CHECK_THROWS_AS((void)evaluate_corpus(empty), DegenerateInputError);

    TempDir tmp("viqi_eval_broken");
    auto m = write_corpus(tmp.path, "Broken", 2, {2, 2, 2, 0.0});
    write_file(m.entries[1].gold, "{ not json");
    try {
        (void)evaluate_collection(m);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("entry 1") != std::string::npos);
    }
}

TEST_CASE("extract_query attaches decorations beside the root")
{
    const auto layout = load_layout(VIQI_TEST_DATA "/figure4.layout.json");
    const auto trace = extract_query(layout);
    CHECK(trace.result.interface_id == layout.interface_id);
    REQUIRE(trace.result.not_rendered.has_value());
    CHECK(trace.result.not_rendered->members.size() == 2);
    const auto leaves = trace.result.root.leaves();
    CHECK(std::find(leaves.begin(), leaves.end(), "logo") == leaves.end());
}
