#include "qskew/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qskew/philox.hpp"

namespace qskew {

KrausChannel make_kraus_channel(std::vector<Matrix> kraus, std::vector<std::string> labels) {
    if (kraus.empty()) throw IncompleteKraus("empty Kraus set");
    const Eigen::Index din = kraus[0].cols();
    const Eigen::Index dout = kraus[0].rows();
    Matrix acc = Matrix::Zero(din, din);
    for (const auto& k : kraus) {
        if (k.cols() != din || k.rows() != dout) {
            throw DimensionMismatch("Kraus operators must share one shape");
        }
        acc += k.adjoint() * k;
    }
    const double dev = (acc - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw IncompleteKraus("max |sum K^dag K - I| = " + std::to_string(dev) +
                              " exceeds 1e-10");
    }
    KrausChannel ch;
    ch.dim_in = static_cast<int>(din);
    ch.dim_out = static_cast<int>(dout);
    ch.kraus = std::move(kraus);
    ch.labels = std::move(labels);
    return ch;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
    if (rho.dim() != channel.dim_in) {
        throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                                " vs channel input dim " + std::to_string(channel.dim_in));
    }
    Matrix out = Matrix::Zero(channel.dim_out, channel.dim_out);
    for (const auto& k : channel.kraus) out += k * rho.matrix() * k.adjoint();
    out = (out + out.adjoint().eval()) / 2.0;
    return make_density(out);
}

std::vector<std::pair<double, DensityMatrix>> apply_selective(const KrausChannel& channel,
                                                              const DensityMatrix& rho) {
    if (rho.dim() != channel.dim_in) {
        throw DimensionMismatch("state dim vs channel input dim");
    }
    std::vector<std::pair<double, DensityMatrix>> out;
    for (const auto& k : channel.kraus) {
        Matrix branch = k * rho.matrix() * k.adjoint();
        const double p = branch.trace().real();
        if (p < 1e-14) continue;
        branch /= p;
        branch = (branch + branch.adjoint().eval()) / 2.0;
        out.emplace_back(p, make_density(branch));
    }
    return out;
}

bool is_incoherent(const KrausChannel& channel, const Matrix& basis) {
    if (basis.rows() != channel.dim_in || basis.cols() != channel.dim_in) {
        throw DimensionMismatch("basis must be dim_in x dim_in");
    }
    for (const auto& k : channel.kraus) {
        for (Eigen::Index i = 0; i < basis.cols(); ++i) {
            const Vector b = basis.col(i);
            const Matrix img = k * (b * b.adjoint()) * k.adjoint();
            // off-diagonals of the image in the given basis
            const Matrix in_basis = basis.adjoint() * img * basis;
            for (Eigen::Index r = 0; r < in_basis.rows(); ++r) {
                for (Eigen::Index c = 0; c < in_basis.cols(); ++c) {
                    if (r != c && std::abs(in_basis(r, c)) > 1e-10) return false;
                }
            }
        }
    }
    return true;
}

namespace {

// Column-normalized coefficient table: sum_n |c_ni|^2 = 1 per input index i.
Eigen::MatrixXcd random_coefficients(int n_kraus, int d, PhiloxSequence& rng) {
    Eigen::MatrixXcd c(n_kraus, d);
    for (int n = 0; n < n_kraus; ++n) {
        for (int i = 0; i < d; ++i) {
            c(n, i) = cxd(rng.gaussian(), rng.gaussian());
        }
    }
    for (int i = 0; i < d; ++i) c.col(i).normalize();
    return c;
}

std::vector<int> random_permutation(int d, PhiloxSequence& rng) {
    std::vector<int> p(d);
    std::iota(p.begin(), p.end(), 0);
    for (int i = d - 1; i > 0; --i) {
        std::swap(p[i], p[static_cast<int>(rng.below(i + 1))]);
    }
    return p;
}

}  // namespace

KrausChannel random_incoherent(int d, int n_kraus, std::uint64_t seed) {
    if (d < 2) throw DimensionMismatch("random_incoherent requires d >= 2");
    if (n_kraus < 1) throw InvalidArgument("n_kraus must be >= 1");
    PhiloxSequence rng(seed, /*stream=*/0x1C0Cull);

    std::vector<Matrix> kraus;
    if (n_kraus == 1) {
        // Completeness with one term forces a permutation-phase unitary.
        // Relabeling permutations are monotonicity-safe only at d = 2, so
        // higher dimensions get a diagonal phase unitary.
        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        if (d == 2 && rng.uniform() < 0.5) std::swap(perm[0], perm[1]);
        Matrix k = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            k(perm[i], i) = std::exp(cxd(0.0, 2.0 * 3.14159265358979323846 * rng.uniform()));
        }
        kraus.push_back(std::move(k));
        return make_kraus_channel(std::move(kraus));
    }

    enum class Kind { Diagonal, Pinch, MeasurePrepare, QubitPermutation };
    std::vector<Kind> kinds = {Kind::Diagonal};
    if (n_kraus <= d) kinds.push_back(Kind::Pinch);
    if (n_kraus == d) kinds.push_back(Kind::MeasurePrepare);
    if (d == 2) kinds.push_back(Kind::QubitPermutation);
    const Kind kind = kinds[static_cast<size_t>(rng.below(kinds.size()))];

    switch (kind) {
        case Kind::Diagonal: {
            const auto c = random_coefficients(n_kraus, d, rng);
            for (int n = 0; n < n_kraus; ++n) {
                Matrix k = Matrix::Zero(d, d);
                for (int i = 0; i < d; ++i) k(i, i) = c(n, i);
                kraus.push_back(std::move(k));
            }
            break;
        }
        case Kind::Pinch: {
            // Partition the basis into exactly n_kraus nonempty blocks.
            std::vector<int> assign(d);
            for (int i = 0; i < n_kraus; ++i) assign[i] = i;
            for (int i = n_kraus; i < d; ++i) assign[i] = static_cast<int>(rng.below(n_kraus));
            const auto shuffle = random_permutation(d, rng);
            for (int n = 0; n < n_kraus; ++n) {
                Matrix k = Matrix::Zero(d, d);
                for (int i = 0; i < d; ++i) {
                    if (assign[shuffle[i]] == n) k(i, i) = 1.0;
                }
                kraus.push_back(std::move(k));
            }
            break;
        }
        case Kind::MeasurePrepare: {
            for (int n = 0; n < d; ++n) {
                Matrix k = Matrix::Zero(d, d);
                const int target = static_cast<int>(rng.below(d));
                k(target, n) = std::exp(cxd(0.0, 2.0 * 3.14159265358979323846 * rng.uniform()));
                kraus.push_back(std::move(k));
            }
            break;
        }
        case Kind::QubitPermutation: {
            const auto c = random_coefficients(n_kraus, 2, rng);
            for (int n = 0; n < n_kraus; ++n) {
                Matrix k = Matrix::Zero(2, 2);
                if (rng.uniform() < 0.5) {
                    k(0, 0) = c(n, 0);
                    k(1, 1) = c(n, 1);
                } else {
                    k(1, 0) = c(n, 0);
                    k(0, 1) = c(n, 1);
                }
                kraus.push_back(std::move(k));
            }
            break;
        }
    }
    return make_kraus_channel(std::move(kraus));
}

KInvariantChannel k_invariant_channel(const Observable& k_a, const Observable& k_b,
                                      const DensityMatrix& tau_b, std::uint64_t seed) {
    if (tau_b.dim() != k_b.dim()) {
        throw DimensionMismatch("tau_B dim vs K_B dim");
    }
    const Matrix comm = tau_b.matrix() * k_b.matrix() - k_b.matrix() * tau_b.matrix();
    if (comm.cwiseAbs().maxCoeff() > 1e-10) {
        throw NonIncoherentEnvironment("[tau_B, K_B] magnitude " +
                                       std::to_string(comm.cwiseAbs().maxCoeff()) +
                                       " exceeds 1e-10");
    }
    const int da = k_a.dim(), db = k_b.dim(), dd = da * db;
    const Matrix k_tot = tensor(k_a.matrix(), Matrix::Identity(db, db)) +
                         tensor(Matrix::Identity(da, da), k_b.matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> es(k_tot);

    PhiloxSequence rng(seed, /*stream=*/0xC0Dull);
    Matrix h(dd, dd);
    for (int i = 0; i < dd; ++i) {
        for (int j = 0; j < dd; ++j) h(i, j) = cxd(rng.gaussian(), rng.gaussian());
    }
    h = (h + h.adjoint().eval()) / 2.0;

    // Block-project onto the commutant: zero entries between eigenvalue
    // clusters (gap < 1e-8 shares a block, guarding float near-degeneracy).
    std::vector<int> cluster(dd, 0);
    for (int i = 1; i < dd; ++i) {
        cluster[i] = cluster[i - 1] + (es.eigenvalues()(i) - es.eigenvalues()(i - 1) > 1e-8);
    }
    Matrix hw = es.eigenvectors().adjoint() * h * es.eigenvectors();
    for (int i = 0; i < dd; ++i) {
        for (int j = 0; j < dd; ++j) {
            if (cluster[i] != cluster[j]) hw(i, j) = 0.0;
        }
    }
    Matrix hp = es.eigenvectors() * hw * es.eigenvectors().adjoint();
    hp = (hp + hp.adjoint().eval()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> hs(hp);
    Vector phases(dd);
    for (int i = 0; i < dd; ++i) phases(i) = std::exp(cxd(0.0, hs.eigenvalues()(i)));
    Matrix v = hs.eigenvectors() * phases.asDiagonal() * hs.eigenvectors().adjoint();

    const double invdev = (v * k_tot * v.adjoint() - k_tot).cwiseAbs().maxCoeff();
    if (invdev > 1e-9) {
        throw NotUnitary("commutant projection failed, |V K V^dag - K| = " +
                         std::to_string(invdev));
    }

    // Kraus form: K_{nm} = sqrt(t_m) (I (x) <n|) V (I (x) |e_m>), where |e_m>
    // are tau_B's eigenvectors and <n| runs over the computational basis.
    std::vector<Matrix> kraus;
    for (int n = 0; n < db; ++n) {
        for (int m = 0; m < db; ++m) {
            const double t = tau_b.eigenvalues()(m);
            if (t < 1e-15) continue;
            const Vector em = tau_b.eigenvectors().col(m);
            Matrix k = Matrix::Zero(da, da);
            for (int r = 0; r < da; ++r) {
                for (int c = 0; c < da; ++c) {
                    cxd acc(0.0, 0.0);
                    for (int q = 0; q < db; ++q) {
                        acc += v(r * db + n, c * db + q) * em(q);
                    }
                    k(r, c) = acc;
                }
            }
            kraus.push_back(std::sqrt(t) * k);
        }
    }
    KInvariantChannel out;
    out.channel = make_kraus_channel(std::move(kraus));
    out.v = std::move(v);
    return out;
}

DensityMatrix classical_encoding(const KrausChannel& channel, const DensityMatrix& rho_a,
                                 const Matrix& basis_b) {
    const auto branches = apply_selective(channel, rho_a);
    if (static_cast<Eigen::Index>(branches.size()) > basis_b.cols()) {
        throw TooFewFlagStates(std::to_string(basis_b.cols()) + " flag states for " +
                               std::to_string(branches.size()) + " branches");
    }
    const Eigen::Index da = channel.dim_out;
    const Eigen::Index db = basis_b.rows();
    Matrix out = Matrix::Zero(da * db, da * db);
    for (size_t n = 0; n < branches.size(); ++n) {
        const Vector flag = basis_b.col(static_cast<Eigen::Index>(n));
        out += branches[n].first *
               tensor(branches[n].second.matrix(), flag * flag.adjoint());
    }
    out = (out + out.adjoint().eval()) / 2.0;
    return make_density(out);
}

}  // namespace qskew
