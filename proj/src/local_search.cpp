#include "posh/local_search.hpp"

#include <cmath>
#include <limits>

namespace posh {

void SearchDomain::project(Point& z) const {
  const double norm = z.norm();
  if (sphere) {
    if (norm > 0.0) z /= norm;
  } else if (norm > radius) {
    z *= radius / norm;
  }
}

Point SearchDomain::sample(std::size_t n, std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z[i] = Complex(re, im);
  }
  double norm = z.norm();
  if (norm == 0.0) {
    z[0] = 1.0;
    norm = 1.0;
  }
  z /= norm;
  if (!sphere) {
    // Uniform in the ball of real dimension 2n.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    z *= radius * std::pow(unit(rng), 1.0 / (2.0 * static_cast<double>(n)));
  }
  return z;
}

namespace {

struct Probe {
  const SearchDomain& domain;
  const std::function<double(const std::vector<Point>&)>& objective;

  double eval(std::vector<Point>& pts, std::size_t i) const {
    domain.project(pts[i]);
    const double v = objective(pts);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }
};

// One exploratory pass: each real coordinate moves by +step, then -step if
// that failed; the first improvement is kept.
double explore(std::vector<Point>& pts, double value, double step, const Probe& probe) {
  Point saved;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (Eigen::Index c = 0; c < pts[i].size(); ++c) {
      for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        for (const double sign : {1.0, -1.0}) {
          saved = pts[i];
          pts[i][c] += sign * step * dir;
          const double v = probe.eval(pts, i);
          if (v < value) {
            value = v;
            break;
          }
          pts[i] = saved;
        }
      }
    }
  }
  return value;
}

}  // namespace

DescentResult pattern_descent(std::vector<Point> start, const SearchDomain& domain,
                              const std::function<double(const std::vector<Point>&)>& objective,
                              const DescentOptions& options) {
  const Probe probe{domain, objective};
  DescentResult out;
  out.points = std::move(start);
  for (auto& z : out.points) domain.project(z);
  out.value = objective(out.points);
  if (std::isnan(out.value)) out.value = std::numeric_limits<double>::infinity();

  double step = options.initial_step;
  double previous_checkpoint = out.value;
  int checkpoint_sweep = 0;
  for (int sweep = 0; sweep < options.sweeps; ++sweep) {
    out.sweeps_used = sweep + 1;
    if (out.value < options.stop_below) break;
    std::vector<Point> moved = out.points;
    const double v = explore(moved, out.value, step, probe);
    if (v < out.value) {
      // Pattern move: keep extrapolating along the successful direction.
      std::vector<Point> base = out.points;
      out.points = std::move(moved);
      out.value = v;
      while (sweep + 1 < options.sweeps && out.value >= options.stop_below) {
        std::vector<Point> jump = out.points;
        for (std::size_t i = 0; i < jump.size(); ++i) {
          jump[i] = 2.0 * out.points[i] - base[i];
          domain.project(jump[i]);
        }
        double jv = objective(jump);
        if (std::isnan(jv)) jv = std::numeric_limits<double>::infinity();
        jv = explore(jump, jv, step, probe);
        ++sweep;
        if (!(jv < out.value)) break;
        base = out.points;
        out.points = std::move(jump);
        out.value = jv;
      }
      out.sweeps_used = sweep + 1;
    } else {
      step *= 0.5;
      if (step < options.min_step) break;
    }
    if (sweep - checkpoint_sweep >= 40) {
      if (previous_checkpoint - out.value < options.stall_tol * (1.0 + std::abs(out.value))) break;
      previous_checkpoint = out.value;
      checkpoint_sweep = sweep;
    }
  }
  return out;
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t level, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(restart),
                    0x706f7368u};
  return std::mt19937_64(seq);
}

}  // namespace posh
