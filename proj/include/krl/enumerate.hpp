#pragma once

#include <functional>
#include <vector>

#include "krl/interior.hpp"
#include "krl/order.hpp"

namespace krl {

// All lattices with n elements up to isomorphism, named e0..e{n-1} with ids
// following a linear extension (e0 bottom, last top). n <= 7.
std::vector<LatticePtr> enumerate_lattices(std::size_t n);

// Every table imp (row-major) that is antitone in the first argument and
// monotone in the second. Calls `visit` for each; stops early when it
// returns false.
void for_each_imp_table(const FiniteLattice& L, const std::function<bool(const std::vector<ElementId>&)>& visit);

// Every interior operator on L, by brute force over all self-maps. |L| <= 7.
std::vector<InteriorOperator> enumerate_interiors(const LatticePtr& L);

}  // namespace krl
