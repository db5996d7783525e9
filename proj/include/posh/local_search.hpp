#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "posh/gram.hpp"

namespace posh {

/// Where sampled points live: the unit sphere (bihomogeneous inputs, where
/// the quadratic forms are scale covariant) or a closed ball.
struct SearchDomain {
  bool sphere = true;
  double radius = 2.0;

  void project(Point& z) const;
  Point sample(std::size_t n, std::mt19937_64& rng) const;
};

struct DescentOptions {
  int sweeps = 400;
  double initial_step = 0.25;
  double min_step = 1e-9;
  /// Stop once the objective drops below this value.
  double stop_below = -std::numeric_limits<double>::infinity();
  /// Stop when 40 consecutive sweeps improve by less than
  /// stall_tol * (1 + |value|).
  double stall_tol = 1e-12;
};

struct DescentResult {
  std::vector<Point> points;
  double value = 0.0;
  int sweeps_used = 0;
};

/// Hooke-Jeeves pattern search over the real and imaginary parts of every
/// coordinate of every point. Each trial is projected back onto the domain.
/// The returned value is never larger than the value at the start.
DescentResult pattern_descent(std::vector<Point> start, const SearchDomain& domain,
                              const std::function<double(const std::vector<Point>&)>& objective,
                              const DescentOptions& options);

/// Generator for restart `restart` at cascade level `level`; depends only on
/// its arguments.
std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t level, std::uint64_t restart);

}  // namespace posh
