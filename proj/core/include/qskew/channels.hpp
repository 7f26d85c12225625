#pragma once

// CPTP machinery and generators for the channel classes the monotonicity
// battery exercises: incoherent Kraus maps, von Neumann measurements,
// K-invariant (covariant) channels and classical-encoding maps.
//
// The incoherence convention is K_n (.) K_n^dag throughout: a channel is
// incoherent w.r.t. a basis when every Kraus operator maps every basis
// projector to a matrix diagonal in that basis.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qskew/qmat.hpp"

namespace qskew {

/// A completely positive trace-preserving map as a Kraus set.
struct KrausChannel {
    int dim_in = 0;
    int dim_out = 0;
    std::vector<Matrix> kraus;
    std::vector<std::string> labels;  // optional outcome names
};

/// Validates completeness |sum K^dag K - I| <= 1e-10 entrywise.
KrausChannel make_kraus_channel(std::vector<Matrix> kraus,
                                std::vector<std::string> labels = {});

/// Unselective application sum_n K_n rho K_n^dag.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// Outcome branches (p_n, rho_n); branches with p_n < 1e-14 are dropped.
std::vector<std::pair<double, DensityMatrix>> apply_selective(const KrausChannel& channel,
                                                              const DensityMatrix& rho);

/// True iff every K_n |b_i><b_i| K_n^dag is diagonal in the given basis
/// (columns of `basis`), off-diagonal magnitude <= 1e-10.
bool is_incoherent(const KrausChannel& channel, const Matrix& basis);

/// Random incoherent channel in the computational basis with exactly
/// n_kraus branches, K_n = sum_i c_ni |f_n(i)><i| with column normalization.
/// The index maps are drawn from the monotonicity-safe subfamily (diagonal
/// branches, pinchings, measure-and-prepare relabelings, permutations at
/// d = 2); see the project notes on why the unrestricted family is excluded.
KrausChannel random_incoherent(int d, int n_kraus, std::uint64_t seed);

struct KInvariantChannel {
    KrausChannel channel;  // on A
    Matrix v;              // the K-invariant unitary on A (x) B
};

/// Channel rho_A -> Tr_B[V (rho_A (x) tau_B) V^dag] with V = exp(iH') and H'
/// a random Hermitian block-projected onto the commutant of
/// K_tot = K_A (x) I + I (x) K_B (eigenvalues with gap < 1e-8 share a block).
/// Requires [tau_B, K_B] = 0 within 1e-10.
KInvariantChannel k_invariant_channel(const Observable& k_a, const Observable& k_b,
                                      const DensityMatrix& tau_b, std::uint64_t seed);

/// sum_n p_n rho_n (x) |n><n|_B from the selective application; the flag
/// basis (columns) must have at least as many states as surviving branches.
DensityMatrix classical_encoding(const KrausChannel& channel, const DensityMatrix& rho_a,
                                 const Matrix& basis_b);

}  // namespace qskew
