#ifndef KADCON_TESTS_BRUTE_FORCE_HPP
#define KADCON_TESTS_BRUTE_FORCE_HPP

#include "kadcon/digraph.hpp"

namespace kadcon::testing {

// Smallest vertex set (excluding v and w) whose removal disconnects v from
// w, found by enumerating candidate subsets. Exponential: keep n small.
// Error to call with v == w or when the edge (v, w) exists.
int brute_force_kappa_pair(const DiGraph& g, int v, int w);

// Minimum of brute_force_kappa_pair over all ordered non-adjacent pairs.
// n - 1 for complete graphs, matching the analyzer's convention.
int brute_force_kappa(const DiGraph& g);

}  // namespace kadcon::testing

#endif
