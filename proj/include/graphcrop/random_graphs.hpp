#pragma once

#include <graphcrop/graph.hpp>
#include <graphcrop/rng.hpp>

namespace graphcrop {

// Synthetic graphs for the verification suites and tests.

/// G(n, p): each of the n(n-1)/2 pairs present independently with probability p.
Graph erdos_renyi(std::size_t n, double p, RngStream &rng);

/// A uniformly random recursive tree on n nodes (shuffled ids) plus G(n, p)
/// extra edges. Always connected.
Graph random_connected(std::size_t n, double p, RngStream &rng);

} // namespace graphcrop
