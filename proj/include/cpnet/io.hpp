#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpnet/core.hpp"

namespace cpnet {

using json = nlohmann::json;

json swap_to_json(const SwapInstance& x);
SwapInstance swap_from_json(const json& j);

// Schema: {"n","m","k","cpts":[{"variable","parents","rows":[{"context","order"|null}]}]}.
json net_to_json(const CpNet& net);
// Without an explicit completeness the net counts as complete iff no row is null.
CpNet net_from_json(const json& j, std::optional<Completeness> completeness = std::nullopt);

CpNet load_net(const std::string& path, std::optional<Completeness> completeness = std::nullopt);
void save_json(const std::string& path, const json& j);
json load_json(const std::string& path);

std::string dependency_dot(const CpNet& net, const std::vector<std::string>& names = {});
std::string preference_graph_dot(const CpNet& net, std::size_t vertex_limit = kDefaultVertexLimit);

}  // namespace cpnet
