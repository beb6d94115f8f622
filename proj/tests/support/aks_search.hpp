#pragma once

// Deterministic exhaustive search for small AKS. Search order: perp masks
// ascending (bit t*n+p), push tables ascending as base-n codes (entry i is
// digit i, least significant first), then K, then S, then app by
// backtracking with values ascending. Reports the first hit per perp mask.

#include <cstdint>
#include <string>
#include <vector>

#include "krl/aks.hpp"

namespace search {

struct MinedAks {
  std::size_t n = 0;
  std::uint32_t perp = 0;
  std::vector<krl::ElementId> push;
  std::vector<krl::ElementId> app;
  krl::ElementId K = 0;
  krl::ElementId S = 0;
  std::uint64_t qp = 0;
};

struct SearchOptions {
  std::size_t n = 3;
  // Skip the empty and full polarity and keep only hits where A(K) is
  // consistent, QP is proper, hat is not the identity and hat differs from
  // bar on some nonempty set.
  bool interesting = true;
  std::size_t max_hits = 6;
};

std::vector<MinedAks> mine_aks(const SearchOptions& options);

// Elements named a, b, c, ...
krl::AksPtr to_aks(const MinedAks& m, std::string name);

}  // namespace search
