#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "mixrobust/distribution.hpp"

namespace testgen {

// Random finite-discrete law: 1..max_atoms atoms on a coarse grid (so
// coincident locations and ties between laws actually happen).
inline mixrobust::Distribution random_discrete(std::mt19937_64& rng, int max_atoms = 8, double spread = 4.0,
                                               double step = 0.25) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = count(rng);
  std::vector<mixrobust::Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double loc = std::round((unit(rng) * 2.0 - 1.0) * spread / step) * step;
    const double w = 0.05 + unit(rng);
    atoms.push_back({loc, w});
    total += w;
  }
  // Renormalize and push the rounding residue into the last weight.
  double run = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    atoms[i].weight /= total;
    run += atoms[i].weight;
  }
  atoms.back().weight = 1.0 - run;
  return mixrobust::Distribution::finite_discrete(std::move(atoms));
}

inline std::vector<double> random_sample(std::mt19937_64& rng, std::size_t n, double spread = 3.0) {
  std::normal_distribution<double> z(0.0, spread / 2.0);
  std::vector<double> out(n);
  for (double& v : out) v = z(rng);
  return out;
}

}  // namespace testgen
