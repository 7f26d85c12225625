#pragma once

// Finite-statistics simulation of both protocols: Bernoulli sampling of the
// ancilla polarization, multinomial sampling of projective outcomes, and the
// estimator aggregation. Sampling is counter-based (Philox4x32-10, streams
// split by setting index), so identical (inputs, seed) give identical
// batches bit for bit, and a batch may be partitioned across workers by shot
// range with results that merge to the serial run.

#include <cstdint>
#include <string>
#include <vector>

#include "qskew/interferometry.hpp"
#include "qskew/qmat.hpp"

namespace qskew {

struct ShotBatch {
    long n_shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::vector<std::string> labels;
    std::vector<long> counts;   // same order as labels, sums to n_shots
    double estimate = 0.0;
    double stderr_ = 0.0;       // sample standard deviation / sqrt(n)
};

/// Bernoulli sampling of a +-1 polarization with P(+1) = p_plus;
/// estimate = 2 n_+ / n - 1.
ShotBatch sample_polarization(double p_plus, long n_shots, std::uint64_t seed,
                              std::uint64_t stream = 0);

/// Multinomial sampling of a projective-outcome distribution.
ShotBatch sample_projective(const RealVector& probs, long n_shots, std::uint64_t seed,
                            std::uint64_t stream = 0);

struct CoherenceExperiment {
    double estimate = 0.0;       // estimated I^L
    double stderr_ = 0.0;        // quadrature-propagated
    double exact_estimator = 0.0;  // the estimator evaluated on exact polarizations
    double exact_lower_bound = 0.0;
    ShotBatch purity_batch;
    ShotBatch overlap_batch;
    long measurement_budget = 2;
    bool qubit_exact = false;
};

/// Runs both interferometer settings of scheme 1 through sample_polarization
/// and combines them as (m_P - m_O) / (2 t^2 Tr[alpha sigma_z]). The qubit
/// variant uses theta = pi/2 with prefactor 1/2 instead. n_shots = 0 is the
/// exact-sampling limit (no noise, stderr 0).
CoherenceExperiment estimate_coherence_experiment(const DensityMatrix& rho,
                                                  const Observable& k, double t,
                                                  long n_shots_per_setting,
                                                  std::uint64_t seed,
                                                  bool qubit_exact = false);

/// Scheme-2 table assembled from finite-shot projective statistics, one
/// setting per S-vector (streams 0..3); total shot budget reported alongside
/// the 5d / 4d measurement accounting.
struct NoisySValueTable {
    SValueTable table;
    long shots_per_setting = 0;
    long total_shots = 0;
};
NoisySValueTable noisy_svalue_table(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                    const DensityMatrix& beta, const Matrix& basis,
                                    long n_shots_per_setting, std::uint64_t seed);

}  // namespace qskew
