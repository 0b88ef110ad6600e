#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmroute/random.hpp"

namespace swarmroute {

/// Swarm parameters. Defaults are the Clerc constriction values with an
/// init range of [0, 1] and vmax = 0.5 * (init_high - init_low).
struct SwarmConfig {
  std::size_t population = 20;
  std::size_t max_iterations = 300;
  double inertia_w = 0.729;
  double cognitive_c1 = 1.49445;
  double social_c2 = 1.49445;
  double vmax = 0.5;
  double init_low = 0.0;
  double init_high = 1.0;
  std::uint64_t seed = 0;
  bool repulsion_enabled = false;
  double repulsion_strength = 0.0;
  /// Stop once gbest_fitness <= target_fitness.
  std::optional<double> target_fitness;

  void validate() const {
    if (population < 1) throw std::invalid_argument("population must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(vmax > 0.0) || !std::isfinite(vmax))
      throw std::invalid_argument("vmax must be positive and finite");
    if (!(init_low < init_high)) throw std::invalid_argument("init_low must be < init_high");
    if (!std::isfinite(init_low) || !std::isfinite(init_high))
      throw std::invalid_argument("init range must be finite");
    if (!std::isfinite(inertia_w) || !std::isfinite(cognitive_c1) || !std::isfinite(social_c2))
      throw std::invalid_argument("swarm coefficients must be finite");
    if (!(repulsion_strength >= 0.0) || !std::isfinite(repulsion_strength))
      throw std::invalid_argument("repulsion_strength must be >= 0");
  }

  friend bool operator==(const SwarmConfig&, const SwarmConfig&) = default;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest_position;
  double pbest_fitness = 0.0;

  friend bool operator==(const Particle&, const Particle&) = default;
};

struct SwarmState {
  std::vector<Particle> particles;
  std::vector<double> gbest_position;
  double gbest_fitness = 0.0;
  std::size_t iteration = 0;
  Rng rng;

  friend bool operator==(const SwarmState&, const SwarmState&) = default;
};

template <typename F>
concept FitnessFunction = std::invocable<F&, std::span<const double>> &&
    std::convertible_to<std::invoke_result_t<F&, std::span<const double>>, double>;

inline constexpr double kRepulsionEpsilon = 1e-9;

namespace detail {

template <FitnessFunction F>
double evaluate(F& fitness, std::span<const double> position) {
  double f = fitness(position);
  if (!std::isfinite(f)) throw std::domain_error("fitness function returned a non-finite value");
  return f;
}

inline double clamp_velocity(double v, double vmax) {
  return v > vmax ? vmax : (v < -vmax ? -vmax : v);
}

}  // namespace detail

/// Random positions in [init_low, init_high) and velocities in [-vmax, vmax),
/// drawn particle by particle (positions first, then velocities). The first
/// particle with the lowest fitness becomes gbest.
template <FitnessFunction F>
SwarmState init_swarm(const SwarmConfig& config, std::size_t dimension, F&& fitness) {
  config.validate();
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");

  SwarmState state;
  state.rng.seed(config.seed);
  state.particles.resize(config.population);
  for (auto& p : state.particles) {
    p.position.resize(dimension);
    p.velocity.resize(dimension);
    for (auto& x : p.position) x = uniform(state.rng, config.init_low, config.init_high);
    for (auto& v : p.velocity) v = uniform(state.rng, -config.vmax, config.vmax);
    p.pbest_position = p.position;
    p.pbest_fitness = detail::evaluate(fitness, p.position);
  }
  const Particle* best = &state.particles.front();
  for (const auto& p : state.particles)
    if (p.pbest_fitness < best->pbest_fitness) best = &p;
  state.gbest_position = best->pbest_position;
  state.gbest_fitness = best->pbest_fitness;
  return state;
}

/// v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped to [-vmax, vmax].
/// Draws r1 then r2 for each component, 2 * dimension draws in total.
inline std::vector<double> update_velocity(const Particle& p, std::span<const double> gbest,
                                           const SwarmConfig& config, Rng& rng) {
  const std::size_t dim = p.position.size();
  if (p.velocity.size() != dim || p.pbest_position.size() != dim || gbest.size() != dim)
    throw std::invalid_argument("particle and gbest dimensions disagree");
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double r1 = uniform01(rng);
    double r2 = uniform01(rng);
    double next = config.inertia_w * p.velocity[i] +
                  config.cognitive_c1 * r1 * (p.pbest_position[i] - p.position[i]) +
                  config.social_c2 * r2 * (gbest[i] - p.position[i]);
    v[i] = detail::clamp_velocity(next, config.vmax);
  }
  return v;
}

/// x <- x + v. Positions are left unbounded.
inline std::vector<double> update_position(const Particle& p) {
  std::vector<double> x = p.position;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += p.velocity[i];
  return x;
}

/// Every pair of particles closer than 0.1 * sqrt(dim) * (init_high - init_low)
/// is pushed apart with magnitude strength / (distance + eps). Coincident
/// particles are separated along a random unit direction. Velocities are
/// re-clamped afterwards.
inline void apply_repulsion(SwarmState& state, const SwarmConfig& config) {
  auto& ps = state.particles;
  if (!config.repulsion_enabled || config.repulsion_strength == 0.0 || ps.size() < 2) return;
  const std::size_t dim = ps.front().position.size();
  const double threshold =
      0.1 * std::sqrt(static_cast<double>(dim)) * (config.init_high - config.init_low);

  std::vector<double> dir(dim);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        dir[k] = ps[i].position[k] - ps[j].position[k];
        d2 += dir[k] * dir[k];
      }
      double d = std::sqrt(d2);
      if (d >= threshold) continue;
      if (d > 0.0) {
        for (auto& c : dir) c /= d;
      } else {
        double norm2 = 0.0;
        do {
          norm2 = 0.0;
          for (auto& c : dir) {
            c = uniform(state.rng, -1.0, 1.0);
            norm2 += c * c;
          }
        } while (norm2 == 0.0);
        double norm = std::sqrt(norm2);
        for (auto& c : dir) c /= norm;
      }
      double magnitude = config.repulsion_strength / (d + kRepulsionEpsilon);
      for (std::size_t k = 0; k < dim; ++k) {
        ps[i].velocity[k] += magnitude * dir[k];
        ps[j].velocity[k] -= magnitude * dir[k];
      }
    }
  }
  for (auto& p : ps)
    for (auto& v : p.velocity) v = detail::clamp_velocity(v, config.vmax);
}

/// One iteration: repulsion (if enabled), velocity and position update for
/// every particle in index order, then fitness evaluation and pbest/gbest
/// refresh on strict improvement.
template <FitnessFunction F>
void step(SwarmState& state, F&& fitness, const SwarmConfig& config) {
  apply_repulsion(state, config);
  for (auto& p : state.particles) {
    p.velocity = update_velocity(p, state.gbest_position, config, state.rng);
    p.position = update_position(p);
  }
  for (auto& p : state.particles) {
    double f = detail::evaluate(fitness, p.position);
    if (f < p.pbest_fitness) {
      p.pbest_fitness = f;
      p.pbest_position = p.position;
      if (f < state.gbest_fitness) {
        state.gbest_fitness = f;
        state.gbest_position = p.position;
      }
    }
  }
  ++state.iteration;
}

}  // namespace swarmroute
