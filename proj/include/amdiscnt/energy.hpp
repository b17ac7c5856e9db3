#pragma once

#include <cstdint>

#include "amdiscnt/model.hpp"

// First-order radio dissipation model. All costs in joules.
namespace amdiscnt {

/// Distance where e_fs*d^2 == e_mp*d^4.
double crossover_distance(const RadioParams& radio);

/// Free-space amplifier below d0, multipath at or above it.
double tx_cost(std::uint64_t bits, double distance, const RadioParams& radio);

double rx_cost(std::uint64_t bits, const RadioParams& radio);

/// signal_count includes the cluster head's own packet.
double aggregation_cost(std::uint64_t bits, std::uint64_t signal_count, const RadioParams& radio);

} // namespace amdiscnt
