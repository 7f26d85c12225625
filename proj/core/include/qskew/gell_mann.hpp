#pragma once

// Generalized Gell-Mann operator basis of su(d), its structure constants and
// the Bloch-vector parametrization rho = (I + x.tau)/d.
//
// Generator ordering is frozen as: symmetric pairs (j<k, lexicographic),
// antisymmetric pairs (same order), then the d-1 diagonal generators. The
// normalized generators satisfy Tr[s_i s_j] = 2 delta_ij (Pauli convention);
// the rescaled tau_i = sqrt(d(d-1)/2) s_i satisfy Tr[tau_i tau_j] =
// d(d-1) delta_ij and the SWAP expansion V = (I + sum_i tau_i (x) tau_i /
// (d-1)) / d, which is what pins the normalization.

#include <vector>

#include "qskew/qmat.hpp"

namespace qskew {

/// One nonzero entry f_{ijk} with i < j (the tensor is totally antisymmetric).
struct StructureConstant {
    int i, j, k;
    double value;
};

class GellMannBasis {
public:
    /// Standard construction for dimension d >= 2.
    static GellMannBasis make(int d);

    int dim() const { return dim_; }
    int count() const { return static_cast<int>(normalized_.size()); }
    /// Normalized generators s_i with Tr[s_i s_j] = 2 delta_ij.
    const std::vector<Matrix>& normalized_generators() const { return normalized_; }
    /// Rescaled generators tau_i = sqrt(d(d-1)/2) s_i.
    const std::vector<Matrix>& rescaled_generators() const { return rescaled_; }
    /// Nonzero f_{ijk} = -(i/4) Tr[[s_i, s_j] s_k], stored for i < j.
    const std::vector<StructureConstant>& structure_constants() const { return structure_; }

private:
    GellMannBasis() = default;
    int dim_ = 0;
    std::vector<Matrix> normalized_;
    std::vector<Matrix> rescaled_;
    std::vector<StructureConstant> structure_;
};

GellMannBasis gell_mann(int d);

/// Real coordinates x of rho = (I + x.tau)/d; |x| <= 1 with equality iff pure.
struct BlochVector {
    int dim = 0;
    RealVector components;
};

BlochVector bloch_from_state(const DensityMatrix& rho, const GellMannBasis& basis);
/// Assembles (I + x.tau)/d and validates it as a state (throws NotPositive
/// when x lies outside the state space).
DensityMatrix state_from_bloch(const BlochVector& x, const GellMannBasis& basis);

/// Scale of the exterior product on Bloch vectors, sqrt(2/(d(d-1))).
/// Fixed once by a least-squares fit of the d=2 intermediate-marginal
/// simulation (where it reduces to the 3-vector cross product) and validated
/// against the simulation at d = 3, 4 in the test suite.
double wedge_scale(int d);

}  // namespace qskew
