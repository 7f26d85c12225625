#pragma once

// Exact matrix-level simulation of both coherence-detection schemes, the
// Taylor estimator of the lower bound, the qubit closed form, and the
// Bloch-algebra cross-checks of the sqrt-SWAP protocol.
//
// Register layouts are frozen: scheme 1 = (ancilla qubit, copy 1, copy 2),
// scheme 2 = (copy A, ancilla qudit, copy B). The direct matrix simulation
// is authoritative; the Bloch-algebra formulas are cross-checks.

#include <cstdint>

#include "qskew/gell_mann.hpp"
#include "qskew/qmat.hpp"

namespace qskew {

/// One interferometer setting of the controlled-SWAP scheme.
struct Scheme1Config {
    DensityMatrix ancilla;  // 2x2, |Tr[alpha sigma_z]| > 1e-6
    Observable k;
    double t = 0.0;         // phase of U_K(t) in the rotated setting
    DensityMatrix state;    // the probed state rho

    static Scheme1Config make(DensityMatrix ancilla, Observable k, double t,
                              DensityMatrix state);
};

struct Scheme1Result {
    double polarization = 0.0;  // Tr[out (sigma_z (x) I)]
    double reference = 0.0;     // Tr[alpha sigma_z] * Tr[rho_1 rho_2]
    double deviation = 0.0;     // |polarization - reference|
    double swap_mean = 0.0;     // Tr[V (rho_1 (x) rho_2)]
};

/// Full (ancilla, copy, copy) circuit: H, controlled-V_12, H, then the
/// ancilla sigma_z mean. `rotated` applies U_K(t) to the second copy first.
/// The factorization identity is evaluated, not assumed: `deviation` carries
/// |polarization - Tr[alpha sigma_z] Tr[...]| for the caller to assert.
Scheme1Result scheme1_polarization(const Scheme1Config& cfg, bool rotated);

/// (purity - Tr[rho U rho U^dag]) / (2 t^2); error vs lower_bound is O(t^2).
double estimate_lower_bound_taylor(const DensityMatrix& rho, const Observable& k, double t);

/// Qubit closed form at theta = pi/2 for K = n.sigma:
/// 1/2 (Tr[rho^2] - Tr[rho U rho U^dag]), exactly I^L(rho, n.sigma).
double qubit_exact_lower_bound(const DensityMatrix& rho, double nx, double ny, double nz);

/// Projective-measurement statistics of the sqrt-SWAP protocol.
struct SValueTable {
    int dim = 0;
    Matrix basis;           // measurement basis vectors as columns
    int beta_index = -1;    // i_beta, the ancilla's basis element
    RealVector s_ab, s_ba;  // ancilla outcomes, S^i = d p_i - 1
    RealVector s_a, s_b;    // direct outcomes on rho_A, rho_B
    long measurement_count = 0;
    bool interacting_variant = false;
    double exact_overlap = 0.0;  // Tr[rho_A rho_B] from the simulated states
};

/// Runs the full three-register simulation with gates sqrt(V) =
/// (I - iV)/sqrt(2) on (A, ancilla) then (ancilla, B), the swapped repetition
/// for S_BA, and the direct measurements for S_A, S_B. The ancilla must be a
/// basis element (Tr[beta |i><i|] = delta up to 1e-10).
SValueTable scheme2_run(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                        const DensityMatrix& beta, const Matrix& basis,
                        bool interacting_variant = false);
/// Computational-basis convenience overload.
SValueTable scheme2_run(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                        const DensityMatrix& beta, bool interacting_variant = false);

/// Exact ancilla/state probability vectors feeding the table (also the
/// sampling targets for the finite-shot variant): p_ab, p_ba, p_a, p_b.
struct Scheme2Probabilities {
    int dim = 0;
    int beta_index = -1;
    RealVector p_ab, p_ba, p_a, p_b;
    double exact_overlap = 0.0;
};
Scheme2Probabilities scheme2_probabilities(const DensityMatrix& rho_a,
                                           const DensityMatrix& rho_b,
                                           const DensityMatrix& beta, const Matrix& basis);

/// Result of reconstructing the overlap from an SValueTable.
struct OverlapReconstruction {
    double bloch_dot_formula = 0.0;  // x_A . x_B from the printed formula
    double overlap_formula = 0.0;    // (1 + (d-1) x_A.x_B)/d from it
    double overlap_direct = 0.0;     // direct-simulation value carried by the table
    double overlap_qubit = 0.0;      // corrected single-table route, exact at d = 2
    double reported = 0.0;           // what a consumer should use
    bool formula_mismatch = false;
    double mismatch = 0.0;           // |overlap_formula - overlap_direct|
};

/// Applies the published reconstruction formula to the table and validates
/// it against the direct value at `tolerance`; any systematic discrepancy
/// sets FORMULA_MISMATCH and reports the direct-simulation value alongside.
OverlapReconstruction scheme2_reconstruct(const SValueTable& table, double tolerance = 1e-8);

/// Bloch exterior product (a ^ b)_k = wedge_scale(d) sum_ij f_ijk a_i b_j.
BlochVector bloch_wedge(const BlochVector& a, const BlochVector& b, const GellMannBasis& basis);

/// Compares the intermediate-marginal formula
/// y = (x_A + x_beta + (d-1) x_A ^ x_beta)/2 against the simulated ancilla
/// marginal after the first sqrt-SWAP gate.
struct BlochCheckReport {
    BlochVector y_formula;
    BlochVector y_simulated;
    double max_deviation = 0.0;
    bool pass = false;  // deviation below 1e-9
};
BlochCheckReport intermediate_bloch_check(const DensityMatrix& rho_a, const DensityMatrix& beta);

/// Measurement budgets: 5d for the sqrt-SWAP protocol, 4d for the
/// interacting-gate variant, 2 for scheme 1, d^2 - 1 for tomography.
long measurement_budget(int d, bool interacting);
long scheme1_budget();
long tomography_budget(int d);

}  // namespace qskew
