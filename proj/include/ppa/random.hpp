#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ppa/types.hpp"

namespace ppa {

using Rng = std::mt19937_64;

// Decorrelated child seed for an independent stream (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Haar-distributed m x m orthogonal matrix: QR of a Gaussian matrix with the
// signs of R's diagonal folded into Q.
Matrix random_orthogonal(Eigen::Index m, Rng& rng);

Vector random_unit_vector(Eigen::Index m, Rng& rng);

std::vector<Eigen::Index> random_permutation(Eigen::Index n, Rng& rng);

}  // namespace ppa
