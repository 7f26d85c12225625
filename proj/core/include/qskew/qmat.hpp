#pragma once

// Validated quantum-state and observable types plus the dense operator
// constructions (tensor, partial trace, SWAP, projectors, controlled gates)
// the rest of the library is built on.
//
// Conventions, frozen project-wide:
//   - multi-register indices are row-major with the leftmost factor the
//     slowest index: tensor(A, B) puts A on the left register;
//   - density-matrix eigenvalues are clamped to [0, 1] after validation and
//     the stored matrix is the spectral reconstruction, so matrix-path and
//     spectrum-path computations agree to machine precision.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qskew/errors.hpp"

namespace qskew {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

/// Validated d-dimensional quantum state with its spectral decomposition
/// cached at construction. Immutable; safe for concurrent use.
class DensityMatrix {
public:
    static DensityMatrix make(const Matrix& rho);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    /// Eigenvalues, ascending, clamped to [0, 1].
    const RealVector& eigenvalues() const { return eigenvalues_; }
    /// Orthonormal eigenvectors as columns, ordered like eigenvalues().
    const Matrix& eigenvectors() const { return eigenvectors_; }

private:
    DensityMatrix(Matrix m, RealVector ev, Matrix evec)
        : matrix_(std::move(m)), eigenvalues_(std::move(ev)), eigenvectors_(std::move(evec)) {}

    Matrix matrix_;
    RealVector eigenvalues_;
    Matrix eigenvectors_;
};

/// Validated Hermitian observable with spectral data; doubles as the
/// supercharge of a superselection rule.
class Observable {
public:
    static Observable make(const Matrix& k);
    /// K = U diag(spectrum) U^dag for a given spectrum and unitary.
    static Observable from_spectrum(const RealVector& spectrum, const Matrix& unitary);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    const RealVector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }
    /// True when two eigenvalues coincide within 1e-10 (relative to span).
    bool degenerate() const { return degenerate_; }
    double spectral_norm() const;

private:
    Observable(Matrix m, RealVector ev, Matrix evec, bool deg)
        : matrix_(std::move(m)), eigenvalues_(std::move(ev)), eigenvectors_(std::move(evec)),
          degenerate_(deg) {}

    Matrix matrix_;
    RealVector eigenvalues_;
    Matrix eigenvectors_;
    bool degenerate_;
};

DensityMatrix make_density(const Matrix& rho);

/// Hermitian PSD square root via the cached spectral decomposition.
Matrix matrix_sqrt(const DensityMatrix& rho);

/// rho^p for p in (0, 1), eigenvalues clamped at 0 before the power.
Matrix density_power(const DensityMatrix& rho, double p);

/// Kronecker product; left factor is the slow (leftmost) register.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Partial trace of an operator on a multi-register space. `dims` lists the
/// register dimensions left to right; `keep` the registers to retain.
Matrix partial_trace(const Matrix& op, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// SWAP permutation V|i,j> = |j,i> on two d-dimensional registers.
Matrix swap_operator(int d);

/// Projectors (I +- V)/2 onto the symmetric / antisymmetric subspaces.
std::pair<Matrix, Matrix> symmetric_projectors(int d);

/// U_K(t) = exp(i K t) from the observable's spectral data.
Matrix unitary_exp(const Observable& k, double t);

/// |0><0| (x) I + |1><1| (x) U with the control qubit the leftmost register.
Matrix controlled(const Matrix& u);

double purity(const DensityMatrix& rho);
double overlap(const DensityMatrix& a, const DensityMatrix& b);
double linear_entropy(const DensityMatrix& rho);

/// Max entrywise |M - M^dag|.
double hermiticity_defect(const Matrix& m);
/// Max entrywise |U^dag U - I|.
double unitarity_defect(const Matrix& u);

/// Column vector |i> in dimension d.
Vector basis_ket(int d, int i);
/// Projector |i><i| in dimension d.
Matrix basis_projector(int d, int i);

}  // namespace qskew
