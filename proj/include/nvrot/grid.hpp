#pragma once

#include <cstddef>
#include <vector>

namespace nvrot {

inline constexpr std::size_t kDefaultMaxSamples = 10'000'000;

/// Uniform grid {0, dt, 2dt, ...} up to and including t_max (to within
/// 1e-9 dt). Throws ValidationError when t_max <= 0, dt <= 0, dt > t_max or
/// the sample count would exceed @p max_samples.
std::vector<double> uniform_time_grid(double t_max, double dt,
                                      std::size_t max_samples = kDefaultMaxSamples);

/// @p count points evenly spaced over [lo, hi]; count == 1 yields {lo}.
std::vector<double> linspace(double lo, double hi, std::size_t count);

} // namespace nvrot
