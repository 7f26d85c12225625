#include "qskew/shots.hpp"

#include <cmath>

#include "qskew/measures.hpp"
#include "qskew/philox.hpp"

namespace qskew {

ShotBatch sample_polarization(double p_plus, long n_shots, std::uint64_t seed,
                              std::uint64_t stream) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
        throw InvalidProbability("p_plus = " + std::to_string(p_plus) + " outside [0,1]");
    }
    if (n_shots < 1) throw InvalidArgument("n_shots must be >= 1");
    const Philox gen(seed, stream);
    long n_plus = 0;
    for (long i = 0; i < n_shots; ++i) {
        if (gen.uniform(static_cast<std::uint64_t>(i)) < p_plus) ++n_plus;
    }
    ShotBatch b;
    b.n_shots = n_shots;
    b.seed = seed;
    b.stream = stream;
    b.labels = {"+1", "-1"};
    b.counts = {n_plus, n_shots - n_plus};
    const double mean = 2.0 * static_cast<double>(n_plus) / n_shots - 1.0;
    b.estimate = mean;
    // outcomes are +-1: sum (x_i - mean)^2 = n (1 - mean^2)
    b.stderr_ = n_shots > 1
                    ? std::sqrt(std::max(0.0, (1.0 - mean * mean) / (n_shots - 1.0)))
                    : 0.0;
    return b;
}

ShotBatch sample_projective(const RealVector& probs, long n_shots, std::uint64_t seed,
                            std::uint64_t stream) {
    const int d = static_cast<int>(probs.size());
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        if (probs(i) < -1e-12) {
            throw InvalidProbability("negative probability " + std::to_string(probs(i)));
        }
        total += probs(i);
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw InvalidProbability("probabilities sum to " + std::to_string(total));
    }
    if (n_shots < 1) throw InvalidArgument("n_shots must be >= 1");

    const Philox gen(seed, stream);
    std::vector<long> counts(d, 0);
    for (long s = 0; s < n_shots; ++s) {
        const double u = gen.uniform(static_cast<std::uint64_t>(s)) * total;
        double acc = 0.0;
        int outcome = d - 1;
        for (int i = 0; i < d; ++i) {
            acc += probs(i);
            if (u < acc) {
                outcome = i;
                break;
            }
        }
        ++counts[outcome];
    }
    ShotBatch b;
    b.n_shots = n_shots;
    b.seed = seed;
    b.stream = stream;
    for (int i = 0; i < d; ++i) {
        b.labels.push_back(std::to_string(i));
        b.counts.push_back(counts[i]);
    }
    b.estimate = 0.0;
    b.stderr_ = 0.0;
    return b;
}

CoherenceExperiment estimate_coherence_experiment(const DensityMatrix& rho,
                                                  const Observable& k, double t,
                                                  long n_shots_per_setting,
                                                  std::uint64_t seed, bool qubit_exact) {
    if (!qubit_exact && t == 0.0) throw ZeroPhase("t must be nonzero");
    Matrix alpha = Matrix::Zero(2, 2);
    alpha(0, 0) = 1.0;  // ancilla |0><0|, Tr[alpha sigma_z] = 1

    const double theta = qubit_exact ? 3.14159265358979323846 / 2.0 : t;
    const auto cfg = Scheme1Config::make(make_density(alpha), k, theta, rho);
    const auto purity_run = scheme1_polarization(cfg, /*rotated=*/false);
    const auto overlap_run = scheme1_polarization(cfg, /*rotated=*/true);

    const double pol_in = 1.0;
    const double denom = qubit_exact ? 2.0 * pol_in : 2.0 * t * t * pol_in;

    CoherenceExperiment out;
    out.qubit_exact = qubit_exact;
    out.measurement_budget = scheme1_budget();
    out.exact_estimator = (purity_run.polarization - overlap_run.polarization) / denom;
    out.exact_lower_bound = lower_bound(rho, k);

    if (n_shots_per_setting == 0) {
        out.estimate = out.exact_estimator;
        out.stderr_ = 0.0;
        return out;
    }
    if (n_shots_per_setting < 100) {
        throw InvalidArgument("n_shots_per_setting must be 0 (exact) or >= 100");
    }

    const double pp = (1.0 + purity_run.polarization) / 2.0;
    const double po = (1.0 + overlap_run.polarization) / 2.0;
    out.purity_batch = sample_polarization(pp, n_shots_per_setting, seed, /*stream=*/0);
    out.overlap_batch = sample_polarization(po, n_shots_per_setting, seed, /*stream=*/1);
    out.estimate = (out.purity_batch.estimate - out.overlap_batch.estimate) / denom;
    // settings are independent experiments: combine in quadrature
    out.stderr_ = std::sqrt(out.purity_batch.stderr_ * out.purity_batch.stderr_ +
                            out.overlap_batch.stderr_ * out.overlap_batch.stderr_) /
                  denom;
    return out;
}

NoisySValueTable noisy_svalue_table(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                    const DensityMatrix& beta, const Matrix& basis,
                                    long n_shots_per_setting, std::uint64_t seed) {
    if (n_shots_per_setting < 1) throw InvalidArgument("n_shots_per_setting must be >= 1");
    const auto probs = scheme2_probabilities(rho_a, rho_b, beta, basis);
    const int d = probs.dim;

    const auto estimate_s = [&](const RealVector& p, std::uint64_t stream) {
        const ShotBatch b = sample_projective(p, n_shots_per_setting, seed, stream);
        RealVector s(d);
        for (int i = 0; i < d; ++i) {
            s(i) = d * static_cast<double>(b.counts[i]) / b.n_shots - 1.0;
        }
        return s;
    };

    NoisySValueTable out;
    out.table.dim = d;
    out.table.basis = basis;
    out.table.beta_index = probs.beta_index;
    out.table.s_ab = estimate_s(probs.p_ab, 0);
    out.table.s_ba = estimate_s(probs.p_ba, 1);
    out.table.s_a = estimate_s(probs.p_a, 2);
    out.table.s_b = estimate_s(probs.p_b, 3);
    out.table.interacting_variant = false;
    out.table.measurement_count = measurement_budget(d, false);
    out.table.exact_overlap = probs.exact_overlap;
    out.shots_per_setting = n_shots_per_setting;
    out.total_shots = 4 * n_shots_per_setting;
    return out;
}

}  // namespace qskew
