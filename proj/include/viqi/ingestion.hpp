#pragma once

#include "viqi/query_model.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace viqi {

/// Declared geometry of one query interface.
struct InterfaceLayout {
    std::string interface_id;
    double page_width{};
    double page_height{};
    std::vector<FieldElement> fields;
    std::vector<DecorationElement> decorations;

    friend bool operator==(const InterfaceLayout&, const InterfaceLayout&) = default;
};

/// Checks id uniqueness, bbox validity and page bounds, and that at least one
/// field exists. Throws ValidationError naming the offending element.
void validate_layout(const InterfaceLayout& layout);

[[nodiscard]] nlohmann::ordered_json to_json(const InterfaceLayout& layout);
/// Parses and validates. ParseError for shape problems, ValidationError for
/// broken invariants.
[[nodiscard]] InterfaceLayout layout_from_json(const nlohmann::json& doc);

[[nodiscard]] std::string serialize_layout(const InterfaceLayout& layout);
[[nodiscard]] InterfaceLayout parse_layout(std::string_view text);

/// Reads a whole file; throws Error naming the path when it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

[[nodiscard]] InterfaceLayout load_layout(const std::filesystem::path& path);
[[nodiscard]] QueryTree load_tree(const std::filesystem::path& path);

struct CorpusEntry {
    std::filesystem::path layout;
    std::filesystem::path gold;
};

/// One collection of interfaces with their gold trees. Relative entry paths
/// are resolved against the manifest's directory on load.
struct CorpusManifest {
    std::string collection;
    std::vector<CorpusEntry> entries;
};

[[nodiscard]] CorpusManifest load_manifest(const std::filesystem::path& path);
/// Entry paths are written as given.
[[nodiscard]] std::string serialize_manifest(const CorpusManifest& manifest);

struct SyntheticSpec {
    int groups{3};
    int min_fields_per_group{2};
    int max_fields_per_group{3};
    double jitter{0.0};     // max per-edge perturbation, pixels
    double page_width{800.0};
    double page_height{600.0};
};

struct SyntheticInterface {
    InterfaceLayout layout;
    QueryTree gold;
};

/// Deterministic for a given (seed, spec). Each group is one row of fields of
/// equal height; rows share left and right edges and are separated by a gap
/// much larger than the gap between fields in a row. Throws GenerationError
/// for non-positive counts or a layout that does not fit on the page.
[[nodiscard]] SyntheticInterface generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec,
                                                    std::string interface_id = {});

} // namespace viqi
