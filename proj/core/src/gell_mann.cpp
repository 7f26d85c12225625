#include "qskew/gell_mann.hpp"

#include <cmath>

namespace qskew {

GellMannBasis GellMannBasis::make(int d) {
    if (d < 2) throw DimensionMismatch("gell_mann requires d >= 2");
    GellMannBasis b;
    b.dim_ = d;
    // symmetric pairs
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            b.normalized_.push_back(std::move(m));
        }
    }
    // antisymmetric pairs
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = cxd(0.0, -1.0);
            m(k, j) = cxd(0.0, 1.0);
            b.normalized_.push_back(std::move(m));
        }
    }
    // diagonal generators
    for (int l = 1; l < d; ++l) {
        Matrix m = Matrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int mm = 0; mm < l; ++mm) m(mm, mm) = scale;
        m(l, l) = -l * scale;
        b.normalized_.push_back(std::move(m));
    }

    const double c = std::sqrt(d * (d - 1) / 2.0);
    b.rescaled_.reserve(b.normalized_.size());
    for (const auto& s : b.normalized_) b.rescaled_.push_back(c * s);

    // f_{ijk} = -(i/4) Tr[[s_i, s_j] s_k]; sparse, i < j only.
    const int n = static_cast<int>(b.normalized_.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Matrix comm = b.normalized_[i] * b.normalized_[j] - b.normalized_[j] * b.normalized_[i];
            if (comm.cwiseAbs().maxCoeff() < 1e-14) continue;
            for (int k = 0; k < n; ++k) {
                const cxd tr = (comm * b.normalized_[k]).trace();
                const double f = (tr * cxd(0.0, -0.25)).real();
                if (std::abs(f) > 1e-12) b.structure_.push_back({i, j, k, f});
            }
        }
    }
    return b;
}

GellMannBasis gell_mann(int d) { return GellMannBasis::make(d); }

BlochVector bloch_from_state(const DensityMatrix& rho, const GellMannBasis& basis) {
    if (rho.dim() != basis.dim()) {
        throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                                " vs basis dim " + std::to_string(basis.dim()));
    }
    const int d = basis.dim();
    RealVector x(basis.count());
    for (int i = 0; i < basis.count(); ++i) {
        x(i) = (rho.matrix() * basis.rescaled_generators()[i]).trace().real() / (d - 1);
    }
    return {d, std::move(x)};
}

DensityMatrix state_from_bloch(const BlochVector& x, const GellMannBasis& basis) {
    if (x.dim != basis.dim() || x.components.size() != basis.count()) {
        throw DimensionMismatch("bloch vector does not match basis");
    }
    const int d = basis.dim();
    Matrix rho = Matrix::Identity(d, d);
    for (int i = 0; i < basis.count(); ++i) {
        rho += x.components(i) * basis.rescaled_generators()[i];
    }
    return make_density(rho / static_cast<double>(d));
}

double wedge_scale(int d) {
    return std::sqrt(2.0 / (d * (d - 1.0)));
}

}  // namespace qskew
