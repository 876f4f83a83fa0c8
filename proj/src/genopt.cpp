#include "wlab/genopt.hpp"

#include <algorithm>
#include <cmath>

#include "wlab/fock.hpp"
#include "wlab/readout.hpp"

namespace wlab {

void GenoptConfig::resolve_defaults() {
  if (max_amp <= 0.0) max_amp = 3.0 * kPi / n_timesteps;
  if (noise_amp <= 0.0) noise_amp = 0.05 * max_amp;
}

void GenoptConfig::validate() const {
  if (n_timesteps < 1) throw ConfigError("genopt: n_timesteps must be >= 1");
  if (2 * elite_count >= n_genomes)
    throw ConfigError("genopt: need 2 * elite_count < n_genomes");
  if (elite_count < 1) throw ConfigError("genopt: elite_count must be >= 1");
  if (max_amp <= 0.0) throw ConfigError("genopt: max_amp must be positive");
  if (noise_amp >= max_amp)
    throw ConfigError("genopt: noise_amp must be below max_amp");
  if (target.size() < 1) throw ConfigError("genopt: empty target vector");
  if (n_rep < 1) throw ConfigError("genopt: n_rep must be >= 1");
}

double chi_raw(const RealVector& p_ideal, const RealVector& p_meas) {
  if (p_ideal.size() != p_meas.size())
    throw NumericalError("chi: length mismatch");
  return p_ideal.dot(p_meas);
}

double chi_overlap(const RealVector& p_ideal, const RealVector& p_meas) {
  if (p_ideal.size() != p_meas.size())
    throw NumericalError("chi: length mismatch");
  double na = p_ideal.norm(), nb = p_meas.norm();
  if (na < 1e-300 || nb < 1e-300)
    throw NumericalError("chi: zero-norm population vector");
  return p_ideal.dot(p_meas) / (na * nb);
}

double evaluate_genome(const Genome& genome, const GenoptConfig& cfg,
                       const SystemParams& params, std::uint64_t seed) {
  PulseEnvelope env;
  env.samples = genome.samples;
  env.dt = 1.0;
  const Eigen::Index d = cfg.target.size();
  // Strong genomes can reach |alpha| ~ (1/2) sum |W| dt; grow the basis so
  // the truncation guard reflects physics, not an undersized workspace.
  double area = 0.5 * genome.samples.cwiseAbs().sum() * env.dt;
  SystemParams work = params;
  work.dim = std::max(params.dim, displacement_min_dim(area));
  RealVector p;
  if (work.has_decoherence()) {
    DensityMatrix rho0 = DensityMatrix::pure(fock_state(0, work.dim));
    p = populations(propagate(rho0, env, work), d);
  } else {
    p = populations(propagate_state(fock_state(0, work.dim), env, work), d);
  }
  if (cfg.noiseless) return chi_overlap(cfg.target, p);
  Rng rng(seed);
  return chi_overlap(cfg.target,
                     sample_populations(p, cfg.readout_repetitions, rng));
}

namespace {

Complex random_disk(double radius, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return std::polar(radius * std::sqrt(uni(rng)), 2.0 * kPi * uni(rng));
}

Complex clip_amp(Complex w, double max_amp) {
  double a = std::abs(w);
  return a > max_amp ? w * (max_amp / a) : w;
}

Genome random_genome(const GenoptConfig& cfg, Rng& rng) {
  Genome g;
  g.samples = ComplexVector(cfg.n_timesteps);
  for (Eigen::Index i = 0; i < cfg.n_timesteps; ++i)
    g.samples(i) = random_disk(cfg.max_amp, rng);
  return g;
}

}  // namespace

std::vector<Genome> evolve(const std::vector<Genome>& population,
                           const GenoptConfig& cfg, Rng& rng) {
  if (static_cast<int>(population.size()) != cfg.n_genomes)
    throw NumericalError("evolve: population size mismatch");
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i - 1].chi < population[i].chi)
      throw NumericalError("evolve: population not sorted by decreasing chi");

  std::vector<Genome> next;
  next.reserve(cfg.n_genomes);
  for (int k = 0; k < cfg.elite_count; ++k) next.push_back(population[k]);

  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < cfg.elite_count; ++k) {
    const Genome& a = population[k];
    const Genome& b = population[k + 1];
    Genome child;
    child.samples = ComplexVector(cfg.n_timesteps);
    for (Eigen::Index i = 0; i < cfg.n_timesteps; ++i) {
      Complex pick = coin(rng) ? a.samples(i) : b.samples(i);
      if (cfg.noise_amp > 0.0) pick += random_disk(cfg.noise_amp, rng);
      child.samples(i) = clip_amp(pick, cfg.max_amp);
    }
    next.push_back(std::move(child));
  }
  while (static_cast<int>(next.size()) < cfg.n_genomes)
    next.push_back(random_genome(cfg, rng));
  return next;
}

RunRecord run_genopt(const GenoptConfig& cfg, const Evaluator& evaluate) {
  GenoptConfig c = cfg;
  c.resolve_defaults();
  c.validate();

  Rng rng(derive_seed(c.seed, 0xE0, 0));
  std::vector<Genome> pop;
  pop.reserve(c.n_genomes);
  for (int i = 0; i < c.n_genomes; ++i) pop.push_back(random_genome(c, rng));

  RunRecord rec;
  double best_seen = -1.0;
  int since_improvement = 0;

  for (int gen = 0; gen < c.max_generations; ++gen) {
    // Elites keep their cached chi; everything below is (re)measured.
    int first_new = gen == 0 ? 0 : c.elite_count;
    for (int i = first_new; i < c.n_genomes; ++i)
      pop[i].chi = evaluate(pop[i], derive_seed(c.seed, gen + 1, i * 64));

    // Re-measurement rule: candidates that would displace the incumbent
    // best are scored as the mean of n_rep fresh measurements.
    double incumbent = gen == 0 ? -1.0 : pop[0].chi;
    if (!c.noiseless) {
      for (int i = first_new; i < c.n_genomes; ++i) {
        if (pop[i].chi <= incumbent) continue;
        double sum = 0.0;
        for (int r = 0; r < c.n_rep; ++r)
          sum += evaluate(pop[i], derive_seed(c.seed, gen + 1, i * 64 + r + 1));
        pop[i].chi = sum / c.n_rep;
      }
    }

    std::stable_sort(pop.begin(), pop.end(), [](const Genome& a,
                                                const Genome& b) {
      return a.chi > b.chi;
    });

    double mean = 0.0;
    for (const auto& g : pop) mean += g.chi;
    rec.best_chi.push_back(pop[0].chi);
    rec.mean_chi.push_back(mean / c.n_genomes);
    rec.generations = gen + 1;

    if (pop[0].chi > best_seen + c.plateau_threshold) {
      best_seen = pop[0].chi;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (since_improvement >= c.plateau_generations) break;
    if (gen + 1 < c.max_generations) pop = evolve(pop, c, rng);
  }
  rec.best = pop[0];
  return rec;
}

RunRecord run_genopt(const GenoptConfig& cfg, const SystemParams& params) {
  GenoptConfig c = cfg;
  c.resolve_defaults();
  c.validate();
  return run_genopt(c, [&c, &params](const Genome& g, std::uint64_t seed) {
    return evaluate_genome(g, c, params, seed);
  });
}

}  // namespace wlab
