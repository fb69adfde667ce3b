#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "visnet/kernels.hpp"

namespace visnet {

// Full link network of a series for inspection and export; the indicator
// pipeline itself never materializes edges. Edges are undirected and stored
// with i < j (0-based positions).
struct Network {
  LinkKind kind = LinkKind::Visibility;
  std::size_t size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Links every pair within `scope` of each other (entire series when scope is
// absent) under the chord rule for `kind`.
Network build_network(std::span<const double> y, LinkKind kind,
                      std::optional<std::size_t> scope = std::nullopt);

std::vector<std::size_t> degree_sequence(const Network& network);

// One `i j` line per edge, 1-based day indices.
void write_edge_list(const Network& network, const std::filesystem::path& path);

// `day_index,degree` rows.
void write_degree_csv(const Network& network, const std::filesystem::path& path);

}  // namespace visnet
