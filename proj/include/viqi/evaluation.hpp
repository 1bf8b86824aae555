#pragma once

#include "viqi/clustering.hpp"
#include "viqi/ingestion.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace viqi {

/// Full extraction for one interface: hierarchy over the fields, declared
/// decorations attached as the not-rendered group.
[[nodiscard]] HierarchyTrace extract_query(const InterfaceLayout& layout,
                                           const ClusteringConfig& config = {});

struct EntryOutcome {
    std::string interface_id;
    std::size_t fields{};
    bool correct{};
    FamilyDiff diff;    // diagnostic only, never scored
};

/// One row of the report. Precision is kept as the exact ratio
/// correct / interfaces; only display truncates.
struct CollectionResult {
    std::string collection;
    std::size_t interfaces{};
    std::size_t total_fields{};
    std::size_t correct{};
    std::size_t mistakes{};
    std::vector<EntryOutcome> outcomes;

    [[nodiscard]] double mean_fields() const;
    [[nodiscard]] double precision() const;
};

/// Builds a row from raw counts. Throws DegenerateInputError when
/// interfaces == 0 or correct > interfaces.
[[nodiscard]] CollectionResult collection_result(std::string collection, std::size_t interfaces,
                                                 std::size_t correct, std::size_t total_fields = 0);

/// correct / interfaces truncated (not rounded) to two decimals, e.g. 14/19 -> "0.73".
[[nodiscard]] std::string truncated_precision(std::size_t correct, std::size_t interfaces);

struct EvalReport {
    std::vector<CollectionResult> collections;
};

/// Extracts every entry and compares it with its gold tree. Any unreadable
/// or incomparable entry aborts the run with the entry named.
[[nodiscard]] CollectionResult evaluate_collection(const CorpusManifest& manifest,
                                                   const ClusteringConfig& config = {});

/// Throws DegenerateInputError when no manifest or no entry is given.
[[nodiscard]] EvalReport evaluate_corpus(std::span<const CorpusManifest> manifests,
                                         const ClusteringConfig& config = {});

enum class ReportFormat { Table, Csv };

[[nodiscard]] std::string render_report(const EvalReport& report, ReportFormat format);

/// Reads back the CSV rendering. Throws ParseError on a bad header or row.
[[nodiscard]] EvalReport parse_csv_report(std::string_view text);

} // namespace viqi
