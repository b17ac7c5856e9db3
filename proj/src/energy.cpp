#include "amdiscnt/energy.hpp"

#include <cmath>

namespace amdiscnt {

double crossover_distance(const RadioParams& radio) { return std::sqrt(radio.e_fs / radio.e_mp); }

double tx_cost(std::uint64_t bits, double distance, const RadioParams& radio) {
  const double k = static_cast<double>(bits);
  const double d2 = distance * distance;
  if (distance < crossover_distance(radio)) return k * radio.e_elec + k * radio.e_fs * d2;
  return k * radio.e_elec + k * radio.e_mp * d2 * d2;
}

double rx_cost(std::uint64_t bits, const RadioParams& radio) {
  return static_cast<double>(bits) * radio.e_elec;
}

double aggregation_cost(std::uint64_t bits, std::uint64_t signal_count, const RadioParams& radio) {
  return static_cast<double>(bits) * radio.e_da * static_cast<double>(signal_count);
}

} // namespace amdiscnt
