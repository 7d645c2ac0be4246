#pragma once

#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/generators.hpp"
#include "lipext/measures.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace lipext::io {

inline constexpr const char* format_tag = "lipext/1";

// Space files carry either an explicit matrix
//   {"format":"lipext/1","labels":[...],"dist":[[...]]}
// or a generator spec
//   {"format":"lipext/1","generator":{"kind":"path","params":{...},"seed":N}}.
struct LoadedSpace {
    FiniteMetricSpace space;
    std::optional<PointCloud> cloud; // present for coordinate-backed generators
    nlohmann::json source;           // what was read, for manifests
};

nlohmann::json space_to_json(const FiniteMetricSpace& space);
LoadedSpace space_from_json(const nlohmann::json& j);
LoadedSpace load_space_file(const std::string& path);

// {"format":"lipext/1","space":<path or inline>,"weights":[[...]]}
nlohmann::json family_to_json(const MeasureFamily& family);
// builtin names: "counting", "identity", "decay"
MeasureFamily family_from_spec(const FiniteMetricSpace& space, const std::string& spec);

// {"format":"lipext/1","coefficients":[...]}
BalancedChain chain_from_json(const nlohmann::json& j);

std::vector<PointId> parse_subset(const std::string& csv, std::size_t space_size);

nlohmann::json tolerance_manifest();
nlohmann::json bound_report_to_json(const BoundReport& r);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const std::string& instance, const BoundReport& r);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace lipext::io
