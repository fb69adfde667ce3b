#include "visnet/network.hpp"

#include <fstream>

#include "visnet/errors.hpp"

namespace visnet {

Network build_network(std::span<const double> y, LinkKind kind,
                      std::optional<std::size_t> scope) {
  Network network;
  network.kind = kind;
  network.size = y.size();
  const std::size_t max_gap = scope.value_or(y.size());
  for (std::size_t j = 1; j < y.size(); ++j) {
    const std::size_t lo = j > max_gap ? j - max_gap : 0;
    for (std::size_t i = lo; i < j; ++i) {
      const bool linked =
          kind == LinkKind::Visibility ? visible(y, i, j) : invisible(y, i, j);
      if (linked) {
        network.edges.emplace_back(i, j);
      }
    }
  }
  return network;
}

std::vector<std::size_t> degree_sequence(const Network& network) {
  std::vector<std::size_t> degrees(network.size, 0);
  for (const auto& [i, j] : network.edges) {
    ++degrees[i];
    ++degrees[j];
  }
  return degrees;
}

void write_edge_list(const Network& network, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  for (const auto& [i, j] : network.edges) {
    out << i + 1 << ' ' << j + 1 << '\n';
  }
}

void write_degree_csv(const Network& network, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << "day_index,degree\n";
  const auto degrees = degree_sequence(network);
  for (std::size_t pos = 0; pos < degrees.size(); ++pos) {
    out << pos + 1 << ',' << degrees[pos] << '\n';
  }
}

}  // namespace visnet
