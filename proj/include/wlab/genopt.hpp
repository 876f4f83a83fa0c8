#pragma once

#include <functional>
#include <vector>

#include "wlab/dynamics.hpp"
#include "wlab/types.hpp"
#include "wlab/util.hpp"

namespace wlab {

/// A candidate pulse: complex drive amplitudes at 1 ns spacing plus the
/// cached overlap score from its latest evaluation.
struct Genome {
  ComplexVector samples;
  double chi = 0.0;
};

struct GenoptConfig {
  int n_genomes = 30;       // N_G
  int elite_count = 8;      // N_a; requires 2*N_a < N_G
  double max_amp = 0.0;     // Omega_max (rad/ns); 0 -> area-3pi default
  double noise_amp = 0.0;   // eps_max; 0 -> 0.05 * max_amp
  int n_rep = 5;            // re-measurements for candidate-best genomes
  int n_timesteps = 15;     // N_t (samples at 1 ns)
  RealVector target;        // desired population vector
  int max_generations = 200;
  int plateau_generations = 30;   // stop after this many without improvement
  double plateau_threshold = 0.003;
  int readout_repetitions = 900;  // ignored when noiseless
  bool noiseless = false;
  std::uint64_t seed = 1;

  void resolve_defaults();
  void validate() const;
};

/// Normalized population overlap: cosine similarity between the target and
/// measured population vectors.
double chi_overlap(const RealVector& p_ideal, const RealVector& p_meas);

/// Raw dot product, the overlap exactly as a plain inner product.
double chi_raw(const RealVector& p_ideal, const RealVector& p_meas);

/// Propagates the ground state through the genome's envelope (decoherence
/// per params), reads populations (with shot noise unless noiseless), and
/// scores against the target.
double evaluate_genome(const Genome& genome, const GenoptConfig& cfg,
                       const SystemParams& params, std::uint64_t seed);

/// Evaluation hook: (genome, derived seed) -> chi. Tests can stub this.
using Evaluator = std::function<double(const Genome&, std::uint64_t)>;

/// One generation step. `population` must be sorted by decreasing chi.
/// Elites are preserved verbatim; the next elite_count slots are
/// per-timestep crossovers of adjacent parents plus bounded noise; the rest
/// are fresh uniform draws. All amplitudes are clipped to max_amp.
std::vector<Genome> evolve(const std::vector<Genome>& population,
                           const GenoptConfig& cfg, Rng& rng);

struct RunRecord {
  std::vector<double> best_chi;   // per generation, after re-measurement
  std::vector<double> mean_chi;
  Genome best;
  int generations = 0;
};

/// Full optimization loop with the re-measurement rule of step (c): any
/// genome whose score would beat the incumbent best is re-evaluated n_rep
/// times and its chi replaced by the mean before the final sort.
RunRecord run_genopt(const GenoptConfig& cfg, const SystemParams& params);

/// Same loop against a caller-supplied evaluator (testing, studies).
RunRecord run_genopt(const GenoptConfig& cfg, const Evaluator& evaluate);

}  // namespace wlab
