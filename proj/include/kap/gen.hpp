#pragma once

#include <cstdint>
#include <vector>

#include "kap/graph.hpp"

namespace kap {

// all connected cubic triangle-free graphs on n vertices up to isomorphism,
// canonically labeled and sorted by canonical form; n even, 4 <= n <= 20
// (counts 0, 1, 2, 6, 22, 110, 792 for n = 4..16); throws std::domain_error
// on bad n
//
// level construction: grow one vertex at a time through connected subcubic
// triangle-free states, pruned by a completion-feasibility count and
// deduplicated per level by canonical form; parallel over the states of a
// level (jobs = 0 picks the OpenMP default; seed only shuffles the shard
// schedule and never changes the result)
std::vector<Graph> generate(int n, int jobs = 0, uint64_t seed = 0);

// single-threaded reference of the same contract, kept for cross-checking
// the parallel kernel
std::vector<Graph> generate_serial(int n);

// independent oracle: labeled edge-completion backtracking over all cubic
// triangle-free graphs with leaf-level isomorph rejection; exact but the
// labeled tree explodes fast (n = 8 runs in milliseconds, n = 10 in about
// a minute), so cross-checks use it only for small n
std::vector<Graph> generate_bruteforce(int n);

}  // namespace kap
