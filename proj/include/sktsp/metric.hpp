#pragma once

#include "sktsp/numeric.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sktsp {

// Finite metric given as an explicit symmetric matrix of rationals.
struct Metric {
  int n = 0;
  int depot = 0;
  std::vector<std::vector<Rat>> dist;

  void validate() const {
    if (n <= 0 || static_cast<int>(dist.size()) != n)
      throw std::invalid_argument("metric: bad dimension");
    if (depot < 0 || depot >= n)
      throw std::invalid_argument("metric: depot out of range");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(dist[i].size()) != n)
        throw std::invalid_argument("metric: ragged matrix");
      if (dist[i][i] != 0)
        throw std::invalid_argument("metric: nonzero diagonal at vertex " +
                                    std::to_string(i));
      for (int j = 0; j < n; ++j) {
        if (dist[i][j] < 0)
          throw std::invalid_argument("metric: negative distance");
        if (dist[i][j] != dist[j][i])
          throw std::invalid_argument("metric: asymmetric at (" +
                                      std::to_string(i) + "," +
                                      std::to_string(j) + ")");
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (dist[i][j] > dist[i][l] + dist[l][j])
            throw std::invalid_argument(
                "metric: triangle inequality violated by triple (" +
                std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(l) + ")");
  }

  Rat min_positive() const {
    Rat m(-1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dist[i][j] > 0 && (m < 0 || dist[i][j] < m)) m = dist[i][j];
    return m;
  }
};

struct NormalizedMetric {
  Metric metric;
  Rat scale;  // original = normalized * scale
};

// Divides all entries by the minimum positive distance, so the returned
// metric has minimum positive distance exactly one.
inline NormalizedMetric normalize_metric(const Metric& m) {
  Rat mp = m.min_positive();
  if (mp <= 0) throw std::invalid_argument("degenerate metric");
  Metric out = m;
  for (auto& row : out.dist)
    for (auto& d : row) d /= mp;
  return {std::move(out), mp};
}

}  // namespace sktsp
