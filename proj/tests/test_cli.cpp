#include "viqi/cli.hpp"
#include "viqi/evaluation.hpp"
#include "viqi/ingestion.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace viqi;

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "viqi");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

const std::string kLayout = VIQI_TEST_DATA "/figure4.layout.json";

} // namespace

TEST_CASE("cli: usage errors")
{
    CHECK(run({}).code == cli::kUsageError);
    CHECK(run({"bogus"}).code == cli::kUsageError);
    CHECK(run({"extract"}).code == cli::kUsageError);
    CHECK(run({"extract", kLayout, "--tolerance", "-1"}).code == cli::kUsageError);
    CHECK(run({"extract", kLayout, "--min-pts", "0"}).code == cli::kUsageError);
    CHECK(run({"extract", kLayout, "--trace"}).code == cli::kUsageError);
    CHECK(run({"evaluate", "m.json", "--format", "xml"}).code == cli::kUsageError);
    CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("cli extract writes the golden tree and trace")
{
    TempDir tmp("viqi_cli_extract");
    const auto r = run({"extract", kLayout, "--out", tmp / "tree.json", "--trace"});
    CHECK(r.code == cli::kSuccess);
    CHECK(read_file(tmp / "tree.json") == read_file(VIQI_TEST_DATA "/figure4.tree.json"));
    CHECK(read_file(tmp / "tree.trace.json") == read_file(VIQI_TEST_DATA "/figure4.trace.json"));

    const auto stdout_run = run({"extract", kLayout});
    CHECK(stdout_run.out == read_file(VIQI_TEST_DATA "/figure4.tree.json"));
}

TEST_CASE("cli extract: data errors name the path")
{
    const auto r = run({"extract", "/no/such/layout.json"});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find("/no/such/layout.json") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("cli extract: a one-field layout is a bare collection")
{
    TempDir tmp("viqi_cli_single");
    write_file(tmp / "one.json",
               R"({"interface_id":"one","page":{"width":50,"height":50},
                   "elements":[{"id":"q","kind":"field","bbox":[1,1,20,10]}]})");
    const auto r = run({"extract", tmp / "one.json"});
    REQUIRE(r.code == cli::kSuccess);
    const auto tree = deserialize(r.out);
    CHECK(tree.root == QueryNode::collection({QueryNode::field("q")}));
}

TEST_CASE("cli generate + evaluate")
{
    TempDir tmp("viqi_cli_gen");
    auto g = run({"generate", "--seed", "1", "--count", "12", "--collection", "Books", "--out", tmp / "books"});
    REQUIRE(g.code == cli::kSuccess);
    CHECK(fs::exists(tmp.path / "books" / "Books-1.layout.json"));
    CHECK(fs::exists(tmp.path / "books" / "Books-12.gold.json"));

    const auto first = read_file(tmp / "books/Books-1.layout.json");
    REQUIRE(run({"generate", "--seed", "1", "--count", "12", "--collection", "Books", "--out", tmp / "again"}).code
            == cli::kSuccess);
    CHECK(read_file(tmp / "again/Books-1.layout.json") == first);

    const auto e = run({"evaluate", tmp / "books/manifest.json", "--format", "csv", "--out", tmp / "r.csv"});
    CHECK(e.code == cli::kSuccess);
    const auto parsed = parse_csv_report(e.out);
    REQUIRE(parsed.collections.size() == 1);
    CHECK(parsed.collections[0].collection == "Books");
    CHECK(parsed.collections[0].interfaces == 12);
    CHECK(parsed.collections[0].correct == 12);
    CHECK(e.out.substr(e.out.size() - 8) == ",12,0,1\n");
    CHECK(read_file(tmp / "r.csv") == e.out);

    const auto t = run({"evaluate", tmp / "books/manifest.json"});
    CHECK(t.code == cli::kSuccess);
    CHECK(t.out.find("Precision       1.00") != std::string::npos);
}

TEST_CASE("cli generate: invalid spec writes nothing")
{
    TempDir tmp("viqi_cli_badgen");
    const auto r = run({"generate", "--groups", "50", "--out", tmp / "out"});
    CHECK(r.code == cli::kDataError);
    CHECK_FALSE(fs::exists(tmp.path / "out"));
}

TEST_CASE("cli evaluate: empty manifest is an error")
{
    TempDir tmp("viqi_cli_empty");
    write_file(tmp / "m.json", R"({"collection":"none","entries":[]})");
    CHECK(run({"evaluate", tmp / "m.json"}).code == cli::kDataError);
}

TEST_CASE("cli render-svg matches the golden picture")
{
    TempDir tmp("viqi_cli_svg");
    const auto r = run({"render-svg", kLayout, VIQI_TEST_DATA "/figure4.trace.json", "--out", tmp / "f.svg"});
    CHECK(r.code == cli::kSuccess);
    CHECK(read_file(tmp / "f.svg") == read_file(VIQI_TEST_DATA "/figure4.svg"));

    REQUIRE(run({"generate", "--seed", "4", "--out", tmp / "g"}).code == cli::kSuccess);
    REQUIRE(run({"extract", tmp / "g/synthetic-4.layout.json", "--out", tmp / "g/t.json", "--trace"}).code
            == cli::kSuccess);
    const auto mismatch = run({"render-svg", kLayout, tmp / "g/t.trace.json"});
    CHECK(mismatch.code == cli::kDataError);
}
