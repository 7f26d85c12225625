#pragma once

// Scalar coherence and asymmetry functionals: the Wigner-Yanase-Dyson family,
// the p = 1/2 skew information and its observable lower bound, the variance
// split, multipartite local/residual coherence, the discord-style minimum
// over same-spectrum observables, and G-twirling asymmetry.
//
// For every functional with two algebraic routes the commutator form is the
// production path and the spectral form the test oracle; both are exposed.

#include <cstdint>
#include <functional>
#include <vector>

#include "qskew/gell_mann.hpp"
#include "qskew/qmat.hpp"

namespace qskew {

/// V(rho, K) = Tr[rho K^2] - Tr[rho K]^2.
double variance(const DensityMatrix& rho, const Observable& k);

/// I(rho, K) = -1/2 Tr[[sqrt(rho), K]^2], evaluated as
/// Tr[rho K^2] - Tr[sqrt(rho) K sqrt(rho) K].
double skew_information(const DensityMatrix& rho, const Observable& k);

/// Spectral oracle: 1/2 sum_ij (sqrt(l_i) - sqrt(l_j))^2 |<psi_i|K|psi_j>|^2.
double skew_information_spectral(const DensityMatrix& rho, const Observable& k);

/// WYD family I^p = -1/2 Tr[[rho^p, K][rho^{1-p}, K]], 0 < p < 1.
double skew_information_p(const DensityMatrix& rho, const Observable& k, double p);

/// I^L(rho, K) = -1/4 Tr[[rho, K]^2].
double lower_bound(const DensityMatrix& rho, const Observable& k);

/// Spectral oracle: 1/4 sum_ij (l_i - l_j)^2 |<psi_i|K|psi_j>|^2.
double lower_bound_spectral(const DensityMatrix& rho, const Observable& k);

/// All six report fields of a single (rho, K) evaluation.
struct CoherenceReport {
    double skew = 0.0;               // I
    double lower_bound = 0.0;        // I^L
    double variance = 0.0;           // V
    double classical_variance = 0.0; // V^C = V - I
    double purity = 0.0;
    bool degenerate_observable = false;
};

CoherenceReport coherence_report(const DensityMatrix& rho, const Observable& k);

/// K embedded at `site` by identity padding, I_(left) (x) K (x) I_(right).
Observable embed_at_site(const Observable& k, const std::vector<int>& dims, int site);

/// Skew information of the global state with K embedded at `site`.
double local_coherence(const DensityMatrix& rho_multi, const std::vector<int>& dims,
                       int site, const Observable& k);

/// local_coherence minus the skew information of the marginal at `site`.
double residual_coherence(const DensityMatrix& rho_multi, const std::vector<int>& dims,
                          int site, const Observable& k);

struct DiscordOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    double rel_tol = 1e-6;
    int max_iterations = 400;
};

struct DiscordResult {
    double value = 0.0;
    Observable argmin;
    int best_restart = 0;
};

/// min over K_A = U diag(spectrum) U^dag of I(rho_AB, K_A (x) I_B), via
/// random-restart Nelder-Mead on the chart U = exp(i sum_j theta_j s_j).
DiscordResult discord_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                          const RealVector& spectrum, const DiscordOptions& opts = {});

/// Finite list of unitaries, or the m-point phase grid of a supercharge.
/// Twirling averages the provided list as given; closure is not required.
class GroupRep {
public:
    static GroupRep from_elements(std::vector<Matrix> elements);
    /// U(2 pi j / m Q) for j = 0..m-1. Reproduces the exact twirl for Q with
    /// integer-spaced spectrum once m exceeds the spectral spread.
    static GroupRep phase_group(const Observable& q, int m = 64);

    const std::vector<Matrix>& elements() const { return elements_; }
    int dim() const { return elements_.empty() ? 0 : static_cast<int>(elements_[0].rows()); }

private:
    std::vector<Matrix> elements_;
};

/// G[rho] = average of U(g) rho U(g)^dag over the group elements.
DensityMatrix g_twirl(const DensityMatrix& rho, const GroupRep& group);

/// Asymmetry of rho under the supercharge Q: the skew information I(rho, Q).
double asymmetry(const DensityMatrix& rho, const Observable& q);

/// S(G[rho]) - S(rho), von Neumann entropies in natural log.
double rel_entropy_asymmetry(const DensityMatrix& rho, const GroupRep& group);

/// Natural-log von Neumann entropy with 0 ln 0 := 0; eigenvalues below 1e-14
/// are dropped.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qskew
