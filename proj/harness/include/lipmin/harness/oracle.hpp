#pragma once

#include <vector>

#include "lipmin/paths.hpp"
#include "lipmin/rng.hpp"

// Reference implementations used only to check the library.
namespace lipmin::oracle {

/// O(n²) minorant: every point i pushes f_i + α·gap outward one step at a
/// time, accumulating the step cost in the same order as the sweep.
std::vector<double> brute_force_minorant(const GridPath& path, double alpha);
std::vector<double> brute_force_minorant(const EventPath& path, double alpha);

/// min_i f_i + α|t_k - t_i| with the distance formed by one multiplication.
std::vector<double> brute_force_minorant_direct(const GridPath& path, double alpha);

/// BM with drift μ from b > 0, conditioned never to hit 0, observed at time t:
/// simulate on a dt grid, reject if 0 is hit by t (bridge test per step), then
/// accept with probability 1 - exp(-2μ X_t). Returns X_t of the first accepted path.
double conditioned_bm_rejection(double b, double mu, double t, double dt, RngStream& rng);

}  // namespace lipmin::oracle
