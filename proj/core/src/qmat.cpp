#include "qskew/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qskew {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

DensityMatrix DensityMatrix::make(const Matrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        throw DimensionMismatch("density matrix must be square, got " +
                                std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
    }
    const double herm = hermiticity_defect(rho);
    if (herm > kHermitianTol) {
        throw NotHermitian("max |rho - rho^dag| = " + fmt(herm) + " exceeds 1e-12");
    }
    const double trdev = std::abs(rho.trace() - cxd(1.0, 0.0));
    if (trdev > kTraceTol) {
        throw NotUnitTrace("|Tr rho - 1| = " + fmt(trdev) + " exceeds 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    RealVector ev = es.eigenvalues();
    if (ev.minCoeff() < -kPsdTol) {
        throw NotPositive("min eigenvalue = " + fmt(ev.minCoeff()) + " below -1e-10");
    }
    for (int i = 0; i < ev.size(); ++i) {
        ev(i) = std::clamp(ev(i), 0.0, 1.0);
    }
    // Reconstruct from the clamped spectrum so matrix and spectrum paths agree.
    Matrix m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(std::move(m), std::move(ev), es.eigenvectors());
}

DensityMatrix make_density(const Matrix& rho) { return DensityMatrix::make(rho); }

Observable Observable::make(const Matrix& k) {
    if (k.rows() != k.cols() || k.rows() < 1) {
        throw DimensionMismatch("observable must be square, got " +
                                std::to_string(k.rows()) + "x" + std::to_string(k.cols()));
    }
    const double herm = hermiticity_defect(k);
    if (herm > kHermitianTol) {
        throw NotHermitian("max |K - K^dag| = " + fmt(herm) + " exceeds 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(k);
    RealVector ev = es.eigenvalues();
    const double span = std::max(1.0, ev.cwiseAbs().maxCoeff());
    bool deg = false;
    for (int i = 0; i + 1 < ev.size(); ++i) {
        if (ev(i + 1) - ev(i) < 1e-10 * span) deg = true;
    }
    return Observable(k, std::move(ev), es.eigenvectors(), deg);
}

Observable Observable::from_spectrum(const RealVector& spectrum, const Matrix& unitary) {
    if (spectrum.size() != unitary.rows()) {
        throw DimensionMismatch("spectrum length does not match unitary dimension");
    }
    if (unitarity_defect(unitary) > kUnitaryTol) {
        throw NotUnitary("U^dag U deviates from identity by more than 1e-10");
    }
    Matrix k = unitary * spectrum.asDiagonal() * unitary.adjoint();
    // Symmetrize away the last-bit asymmetry of the triple product.
    k = (k + k.adjoint().eval()) / 2.0;
    return make(k);
}

double Observable::spectral_norm() const {
    return eigenvalues_.cwiseAbs().maxCoeff();
}

Matrix matrix_sqrt(const DensityMatrix& rho) {
    RealVector root = rho.eigenvalues().cwiseSqrt();
    return rho.eigenvectors() * root.asDiagonal() * rho.eigenvectors().adjoint();
}

Matrix density_power(const DensityMatrix& rho, double p) {
    RealVector powd(rho.eigenvalues().size());
    for (int i = 0; i < powd.size(); ++i) {
        powd(i) = rho.eigenvalues()(i) > 0.0 ? std::pow(rho.eigenvalues()(i), p) : 0.0;
    }
    return rho.eigenvectors() * powd.asDiagonal() * rho.eigenvectors().adjoint();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

void check_dims(Eigen::Index total, const std::vector<int>& dims, const std::vector<int>& keep) {
    long prod = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionMismatch("subsystem dimension must be positive");
        prod *= d;
    }
    if (prod != total) {
        throw DimensionMismatch("product of subsystem dims " + std::to_string(prod) +
                                " does not match operator dim " + std::to_string(total));
    }
    if (keep.empty()) throw DimensionMismatch("keep set must be nonempty");
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size())) {
            throw DimensionMismatch("keep index " + std::to_string(k) + " out of range");
        }
    }
}

}  // namespace

Matrix partial_trace(const Matrix& op, const std::vector<int>& dims,
                     const std::vector<int>& keep_in) {
    check_dims(op.rows(), dims, keep_in);
    std::vector<int> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    const int n = static_cast<int>(dims.size());
    std::vector<int> traced;
    for (int i = 0; i < n; ++i) {
        if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
    }
    long dk = 1, dt = 1;
    for (int k : keep) dk *= dims[k];
    for (int t : traced) dt *= dims[t];

    // Strides of each register in the flat row-major index.
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    auto compose = [&](long kept_idx, long traced_idx) {
        long flat = 0;
        long rem = kept_idx;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            flat += (rem % dims[keep[i]]) * stride[keep[i]];
            rem /= dims[keep[i]];
        }
        rem = traced_idx;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            flat += (rem % dims[traced[i]]) * stride[traced[i]];
            rem /= dims[traced[i]];
        }
        return flat;
    };

    Matrix out = Matrix::Zero(dk, dk);
    for (long r = 0; r < dk; ++r) {
        for (long c = 0; c < dk; ++c) {
            cxd acc(0.0, 0.0);
            for (long t = 0; t < dt; ++t) {
                acc += op(compose(r, t), compose(c, t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    return make_density(partial_trace(rho.matrix(), dims, keep));
}

Matrix swap_operator(int d) {
    if (d < 2) throw DimensionMismatch("swap_operator requires d >= 2");
    Matrix v = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            v(j * d + i, i * d + j) = 1.0;
        }
    }
    return v;
}

std::pair<Matrix, Matrix> symmetric_projectors(int d) {
    Matrix v = swap_operator(d);
    Matrix id = Matrix::Identity(d * d, d * d);
    return {(id + v) / 2.0, (id - v) / 2.0};
}

Matrix unitary_exp(const Observable& k, double t) {
    Vector phases(k.dim());
    for (int i = 0; i < k.dim(); ++i) {
        phases(i) = std::exp(cxd(0.0, k.eigenvalues()(i) * t));
    }
    return k.eigenvectors() * phases.asDiagonal() * k.eigenvectors().adjoint();
}

Matrix controlled(const Matrix& u) {
    if (u.rows() != u.cols()) throw DimensionMismatch("controlled() requires a square matrix");
    const double dev = unitarity_defect(u);
    if (dev > kUnitaryTol) {
        throw NotUnitary("max |U^dag U - I| = " + fmt(dev) + " exceeds 1e-10");
    }
    const Eigen::Index n = u.rows();
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = Matrix::Identity(n, n);
    out.bottomRightCorner(n, n) = u;
    return out;
}

double purity(const DensityMatrix& rho) {
    return rho.eigenvalues().squaredNorm();
}

double overlap(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("overlap of states with dims " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
    }
    return (a.matrix() * b.matrix()).trace().real();
}

double linear_entropy(const DensityMatrix& rho) {
    return 2.0 - 2.0 * purity(rho);
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

Vector basis_ket(int d, int i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

Matrix basis_projector(int d, int i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = 1.0;
    return m;
}

}  // namespace qskew
