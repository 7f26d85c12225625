#include "qskew/randlab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qskew/channels.hpp"
#include "qskew/interferometry.hpp"
#include "qskew/measures.hpp"
#include "qskew/philox.hpp"
#include "qskew/shots.hpp"

namespace qskew {

namespace {

Matrix ginibre(int rows, int cols, PhiloxSequence& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) g(i, j) = cxd(rng.gaussian(), rng.gaussian());
    }
    return g;
}

}  // namespace

DensityMatrix haar_pure(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionMismatch("d must be positive");
    PhiloxSequence rng(seed, /*stream=*/1);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(rng.gaussian(), rng.gaussian());
    v.normalize();
    return make_density(v * v.adjoint());
}

DensityMatrix hs_random_density(int d, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > d) {
        throw RankOutOfRange("rank " + std::to_string(rank) + " outside [1, " +
                             std::to_string(d) + "]");
    }
    PhiloxSequence rng(seed, /*stream=*/2);
    const Matrix g = ginibre(d, rank, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    m = (m + m.adjoint().eval()) / 2.0;
    return make_density(m);
}

Observable random_observable(int d, std::uint64_t seed,
                             const std::optional<RealVector>& spectrum) {
    PhiloxSequence rng(seed, /*stream=*/3);
    if (spectrum) {
        if (spectrum->size() != d) throw DimensionMismatch("spectrum length vs d");
        return Observable::from_spectrum(*spectrum, random_unitary(d, seed ^ 0x5eC7Ru));
    }
    Matrix a = ginibre(d, d, rng);
    a = (a + a.adjoint().eval()) / 2.0;
    return Observable::make(a);
}

Matrix random_unitary(int d, std::uint64_t seed) {
    PhiloxSequence rng(seed, /*stream=*/4);
    const Matrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const cxd rii = r(i, i);
        q.col(i) *= std::abs(rii) > 0 ? rii / std::abs(rii) : cxd(1.0, 0.0);
    }
    return q;
}

// ---------------------------------------------------------------------------
// property registry
// ---------------------------------------------------------------------------

namespace {

int pick_dim(std::uint64_t seed, const std::vector<int>& dims) {
    return dims[seed % dims.size()];
}

DensityMatrix random_state(int d, std::uint64_t seed) {
    PhiloxSequence r(seed, /*stream=*/9);
    const double u = r.uniform();
    if (u < 0.2) return haar_pure(d, seed);
    const int rank = 1 + static_cast<int>(r.below(d));
    return hs_random_density(d, rank, seed);
}

double chain_violation(const DensityMatrix& rho, const Observable& k) {
    const double il = lower_bound(rho, k);
    const double i = skew_information(rho, k);
    const double v = variance(rho, k);
    return std::max({-il, il - i, i - v});
}

double vn_average_violation(std::uint64_t s, int d) {
    const auto rho = random_state(d, s);
    const auto k = random_observable(d, s ^ 0xAFu);
    PhiloxSequence r(s, /*stream=*/21);
    const int nblocks = 1 + static_cast<int>(r.below(d));
    std::vector<int> assign(d);
    for (int i = 0; i < d; ++i) assign[i] = static_cast<int>(r.below(nblocks));
    const double before = skew_information(rho, k);
    double avg = 0.0;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
        Matrix p = Matrix::Zero(d, d);
        bool any = false;
        for (int i = 0; i < d; ++i) {
            if (assign[i] == bidx) {
                p += k.eigenvectors().col(i) * k.eigenvectors().col(i).adjoint();
                any = true;
            }
        }
        if (!any) continue;
        Matrix br = p * rho.matrix() * p;
        const double prob = br.trace().real();
        if (prob < 1e-14) continue;
        br /= prob;
        br = (br + br.adjoint().eval()) / 2.0;
        avg += prob * skew_information(make_density(br), k);
    }
    return avg - before;
}

Observable diagonal_observable(int d, std::uint64_t seed) {
    PhiloxSequence r(seed, /*stream=*/22);
    Matrix k = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) k(i, i) = r.gaussian();
    return Observable::make(k);
}

// one fixed instance of the registry, assembled once
std::vector<Property> build_registry() {
    std::vector<Property> reg;

    // ---- core -------------------------------------------------------------
    reg.push_back({"clamp-trace-stability", "core", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto rho = random_state(d, s);
                       return std::abs(rho.matrix().trace().real() - 1.0);
                   }});
    reg.push_back({"swap-gellmann-expansion", "core", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>&) {
                       const int d = 2 + static_cast<int>(s % 5);  // 2..6
                       const auto basis = gell_mann(d);
                       Matrix acc = Matrix::Identity(d * d, d * d);
                       for (const auto& t : basis.rescaled_generators()) {
                           acc += tensor(t, t) / (d - 1.0);
                       }
                       acc /= d;
                       return (acc - swap_operator(d)).cwiseAbs().maxCoeff();
                   }});
    reg.push_back({"tensor-ptrace-roundtrip", "core", 1e-12, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto rho = random_state(d, s);
                       const auto tau = random_state(d, s ^ 0x7Au);
                       const Matrix big = tensor(rho.matrix(), tau.matrix());
                       const Matrix back = partial_trace(big, {d, d}, {0});
                       return (back - rho.matrix()).cwiseAbs().maxCoeff();
                   }});
    reg.push_back({"unitary-exp-inverse", "core", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto k = random_observable(d, s);
                       PhiloxSequence r(s, 23);
                       const double t = 4.0 * r.uniform() - 2.0;
                       const Matrix u = unitary_exp(k, t) * unitary_exp(k, -t);
                       return (u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
                   }});

    // ---- inequalities -----------------------------------------------------
    reg.push_back({"inequality-chain", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       return chain_violation(random_state(d, s), random_observable(d, s ^ 0x11u));
                   }});
    reg.push_back({"faithfulness-two-sided", "inequalities", 0.0, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto k = random_observable(d, s);
                       // commuting pair: random mixture of K eigenprojectors
                       PhiloxSequence r(s, 24);
                       Matrix diag = Matrix::Zero(d, d);
                       double tot = 0.0;
                       std::vector<double> w(d);
                       for (int i = 0; i < d; ++i) {
                           w[i] = r.uniform() + 1e-3;
                           tot += w[i];
                       }
                       for (int i = 0; i < d; ++i) {
                           diag += (w[i] / tot) * k.eigenvectors().col(i) *
                                   k.eigenvectors().col(i).adjoint();
                       }
                       diag = (diag + diag.adjoint().eval()) / 2.0;
                       const double i_comm = skew_information(make_density(diag), k);
                       double viol = std::max(0.0, i_comm - 1e-10);
                       // non-commuting pair must register coherence
                       const auto rho = random_state(d, s ^ 0x33u);
                       const Matrix c = rho.matrix() * k.matrix() - k.matrix() * rho.matrix();
                       const double cnorm = c.cwiseAbs().maxCoeff();
                       const double i_nc = skew_information(rho, k);
                       if (cnorm > 1e-8 && i_nc <= 1e-10) viol = std::max(viol, cnorm);
                       return viol;
                   }});
    reg.push_back({"pure-state-equalities", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto phi = haar_pure(d, s);
                       const auto k = random_observable(d, s ^ 0x44u);
                       const double v = variance(phi, k);
                       const double i = skew_information(phi, k);
                       const double il = lower_bound(phi, k);
                       return std::max(std::abs(v - i), std::abs(i - 2.0 * il));
                   }});
    reg.push_back({"qubit-double-bound", "inequalities", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>&) {
                       const auto rho = random_state(2, s);
                       const auto k = random_observable(2, s ^ 0x55u);
                       return skew_information(rho, k) - 2.0 * lower_bound(rho, k);
                   }});
    reg.push_back({"dual-form-agreement", "inequalities", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto rho = random_state(d, s);
                       const auto k = random_observable(d, s ^ 0x66u);
                       const double a = std::abs(skew_information(rho, k) -
                                                 skew_information_spectral(rho, k));
                       const double b = std::abs(lower_bound(rho, k) -
                                                 lower_bound_spectral(rho, k));
                       return std::max(a, b);
                   }});
    reg.push_back({"convexity", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto k = random_observable(d, s);
                       PhiloxSequence r(s, 25);
                       const int m = 2 + static_cast<int>(r.below(3));
                       std::vector<double> q(m);
                       double tot = 0.0;
                       for (auto& x : q) {
                           x = r.uniform() + 1e-3;
                           tot += x;
                       }
                       Matrix mix = Matrix::Zero(d, d);
                       double rhs = 0.0;
                       for (int j = 0; j < m; ++j) {
                           const auto rho_j = random_state(d, s ^ (0x100u + j));
                           mix += (q[j] / tot) * rho_j.matrix();
                           rhs += (q[j] / tot) * skew_information(rho_j, k);
                       }
                       return skew_information(make_density(mix), k) - rhs;
                   }});
    reg.push_back({"ensemble-variance-bound", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto rho = random_state(d, s);
                       const auto k = random_observable(d, s ^ 0x77u);
                       const double i = skew_information(rho, k);
                       // eigendecomposition ensemble
                       double eig_sum = 0.0;
                       for (int j = 0; j < d; ++j) {
                           const double p = rho.eigenvalues()(j);
                           if (p < 1e-14) continue;
                           const Vector v = rho.eigenvectors().col(j);
                           const double kv = (v.adjoint() * k.matrix() * v).value().real();
                           const double k2v =
                               (v.adjoint() * k.matrix() * k.matrix() * v).value().real();
                           eig_sum += p * (k2v - kv * kv);
                       }
                       // random decomposition via a Haar isometry mixing
                       const int m = d + 1;
                       const Matrix w = random_unitary(m, s ^ 0x88u).leftCols(d);
                       double mix_sum = 0.0;
                       for (int row = 0; row < m; ++row) {
                           Vector v = Vector::Zero(d);
                           for (int j = 0; j < d; ++j) {
                               v += w(row, j) * std::sqrt(rho.eigenvalues()(j)) *
                                    rho.eigenvectors().col(j);
                           }
                           const double p = v.squaredNorm();
                           if (p < 1e-14) continue;
                           v /= std::sqrt(p);
                           const double kv = (v.adjoint() * k.matrix() * v).value().real();
                           const double k2v =
                               (v.adjoint() * k.matrix() * k.matrix() * v).value().real();
                           mix_sum += p * (k2v - kv * kv);
                       }
                       return std::max(i - eig_sum, i - mix_sum);
                   }});
    reg.push_back({"superadditivity", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int da = std::min(pick_dim(s, dims), 4);
                       const int db = 2 + static_cast<int>(s % 2);
                       const auto rho_ab = random_state(da * db, s);
                       const auto ka = random_observable(da, s ^ 0x99u);
                       const auto marg = partial_trace(rho_ab, {da, db}, {0});
                       return skew_information(marg, ka) -
                              local_coherence(rho_ab, {da, db}, 0, ka);
                   }});
    reg.push_back({"wyd-family", "inequalities", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       const auto phi = haar_pure(d, s);
                       const auto k = random_observable(d, s ^ 0xAAu);
                       const double v = variance(phi, k);
                       double viol = 0.0;
                       for (const double p : {0.2, 0.5, 0.8}) {
                           viol = std::max(viol, std::abs(skew_information_p(phi, k, p) - v));
                       }
                       // p = 1/2 coincides with the skew information
                       const auto rho = random_state(d, s ^ 0xBBu);
                       viol = std::max(viol, std::abs(skew_information_p(rho, k, 0.5) -
                                                      skew_information(rho, k)));
                       // commuting pair vanishes for all p
                       PhiloxSequence r(s, 26);
                       Matrix diag = Matrix::Zero(d, d);
                       double tot = 0.0;
                       std::vector<double> w(d);
                       for (int i = 0; i < d; ++i) {
                           w[i] = r.uniform() + 1e-3;
                           tot += w[i];
                       }
                       for (int i = 0; i < d; ++i) {
                           diag += (w[i] / tot) * k.eigenvectors().col(i) *
                                   k.eigenvectors().col(i).adjoint();
                       }
                       diag = (diag + diag.adjoint().eval()) / 2.0;
                       const auto comm = make_density(diag);
                       for (const double p : {0.3, 0.7}) {
                           viol = std::max(viol, std::abs(skew_information_p(comm, k, p)));
                       }
                       return viol;
                   }});

    // ---- monotonicity -----------------------------------------------------
    reg.push_back({"incoherent-monotone", "monotonicity", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       PhiloxSequence r(s, 27);
                       const int nk = 1 + static_cast<int>(r.below(2 * d));
                       const auto ch = random_incoherent(d, nk, s);
                       const auto rho = random_state(d, s ^ 0xCCu);
                       const auto k = diagonal_observable(d, s ^ 0xDDu);
                       return skew_information(apply(ch, rho), k) - skew_information(rho, k);
                   }});
    reg.push_back({"vn-average-monotone", "monotonicity", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       return vn_average_violation(s, std::min(pick_dim(s, dims), 4));
                   }});
    reg.push_back({"k-invariant-monotone", "monotonicity", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int da = std::min(pick_dim(s, dims), 3);
                       const int db = 2 + static_cast<int>(s % 2);
                       const auto ka = random_observable(da, s);
                       const auto kb = random_observable(db, s ^ 0xEEu);
                       // tau_B diagonal in K_B's eigenbasis
                       PhiloxSequence r(s, 28);
                       Matrix tau = Matrix::Zero(db, db);
                       double tot = 0.0;
                       std::vector<double> w(db);
                       for (int i = 0; i < db; ++i) {
                           w[i] = r.uniform() + 1e-3;
                           tot += w[i];
                       }
                       for (int i = 0; i < db; ++i) {
                           tau += (w[i] / tot) * kb.eigenvectors().col(i) *
                                  kb.eigenvectors().col(i).adjoint();
                       }
                       tau = (tau + tau.adjoint().eval()) / 2.0;
                       const auto kic = k_invariant_channel(ka, kb, make_density(tau), s);
                       const Matrix k_tot =
                           tensor(ka.matrix(), Matrix::Identity(db, db)) +
                           tensor(Matrix::Identity(da, da), kb.matrix());
                       const double comm_dev =
                           (kic.v * k_tot * kic.v.adjoint() - k_tot).cwiseAbs().maxCoeff();
                       const auto rho = random_state(da, s ^ 0xFFu);
                       const double mono = skew_information(apply(kic.channel, rho), ka) -
                                           skew_information(rho, ka);
                       return std::max(mono, comm_dev);
                   }});
    reg.push_back({"classical-encoding-monotone", "monotonicity", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       PhiloxSequence r(s, 29);
                       const int nk = 1 + static_cast<int>(r.below(d));
                       const auto ch = random_incoherent(d, nk, s);
                       const auto rho = random_state(d, s ^ 0x123u);
                       const auto k = diagonal_observable(d, s ^ 0x234u);
                       const Matrix flags = Matrix::Identity(nk, nk);
                       const auto enc = classical_encoding(ch, rho, flags);
                       const double enc_i = local_coherence(enc, {d, nk}, 0, k);
                       return enc_i - skew_information(rho, k);
                   }});
    reg.push_back({"g-covariance", "monotonicity", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int da = std::min(pick_dim(s, dims), 3);
                       const int db = 2;
                       const auto ka = random_observable(da, s);
                       const auto kb = random_observable(db, s ^ 0x345u);
                       PhiloxSequence r(s, 30);
                       Matrix tau = Matrix::Zero(db, db);
                       const double w0 = 0.2 + 0.6 * r.uniform();
                       tau += w0 * kb.eigenvectors().col(0) * kb.eigenvectors().col(0).adjoint();
                       tau += (1.0 - w0) * kb.eigenvectors().col(1) *
                              kb.eigenvectors().col(1).adjoint();
                       tau = (tau + tau.adjoint().eval()) / 2.0;
                       const auto kic = k_invariant_channel(ka, kb, make_density(tau), s);
                       const auto rho = random_state(da, s ^ 0x456u);
                       const double g = 2.0 * 3.14159265358979323846 * r.uniform();
                       const Matrix u = unitary_exp(ka, g);
                       Matrix lhs_in = u * rho.matrix() * u.adjoint();
                       lhs_in = (lhs_in + lhs_in.adjoint().eval()) / 2.0;
                       const Matrix lhs = apply(kic.channel, make_density(lhs_in)).matrix();
                       const Matrix rhs = u * apply(kic.channel, rho).matrix() * u.adjoint();
                       return (lhs - rhs).cwiseAbs().maxCoeff();
                   }});
    reg.push_back({"cptp-preserves-state", "monotonicity", 0.0, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       PhiloxSequence r(s, 31);
                       const int nk = 1 + static_cast<int>(r.below(2 * d));
                       const auto ch = random_incoherent(d, nk, s);
                       const auto rho = random_state(d, s ^ 0x567u);
                       try {
                           const auto out = apply(ch, rho);  // validates
                           const auto branches = apply_selective(ch, rho);
                           double psum = 0.0;
                           for (const auto& [p, st] : branches) psum += p;
                           return std::abs(psum - 1.0) > 1e-10 ? std::abs(psum - 1.0) : 0.0;
                       } catch (const Error&) {
                           return 1.0;
                       }
                   }});

    // ---- protocols ----------------------------------------------------------
    reg.push_back({"scheme1-identity", "protocols", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 5);
                       auto ancilla = hs_random_density(2, 2, s ^ 0x678u);
                       // retry until the ancilla has sigma_z sensitivity
                       for (std::uint64_t bump = 1;; ++bump) {
                           const double pol =
                               (ancilla.matrix()(0, 0) - ancilla.matrix()(1, 1)).real();
                           if (std::abs(pol) > 1e-3) break;
                           ancilla = hs_random_density(2, 2, s ^ (0x678u + bump));
                       }
                       const auto rho = random_state(d, s);
                       const auto k = random_observable(d, s ^ 0x789u);
                       PhiloxSequence r(s, 32);
                       const auto cfg =
                           Scheme1Config::make(ancilla, k, 0.3 + r.uniform(), rho);
                       const auto plain = scheme1_polarization(cfg, false);
                       const auto rot = scheme1_polarization(cfg, true);
                       return std::max(plain.deviation, rot.deviation);
                   }});
    reg.push_back({"scheme1-ancilla-factorization", "protocols", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto rho = random_state(d, s);
                       const auto k = random_observable(d, s ^ 0x89Au);
                       double ratios[2];
                       for (int a = 0; a < 2; ++a) {
                           DensityMatrix anc = hs_random_density(2, 2, s ^ (0xA0u + a));
                           for (std::uint64_t bump = 1;; ++bump) {
                               const double pol =
                                   (anc.matrix()(0, 0) - anc.matrix()(1, 1)).real();
                               if (std::abs(pol) > 1e-2) break;
                               anc = hs_random_density(2, 2, s ^ (0xA0u + a + 7 * bump));
                           }
                           const double pol_in =
                               (anc.matrix()(0, 0) - anc.matrix()(1, 1)).real();
                           const auto cfg = Scheme1Config::make(anc, k, 0.7, rho);
                           const auto res = scheme1_polarization(cfg, true);
                           ratios[a] = res.polarization / pol_in;
                       }
                       return std::abs(ratios[0] - ratios[1]);
                   }});
    reg.push_back({"taylor-convergence", "protocols", 0.0, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto rho = random_state(d, s);
                       auto k_raw = random_observable(d, s ^ 0x9ABu);
                       const Matrix km = k_raw.matrix() / k_raw.spectral_norm();
                       const auto k = Observable::make(km);
                       const double exact = lower_bound(rho, k);
                       const double e4 =
                           std::abs(estimate_lower_bound_taylor(rho, k, 1e-4) - exact);
                       double viol = std::max(0.0, e4 - 1e-7);
                       const double e3 =
                           std::abs(estimate_lower_bound_taylor(rho, k, 1e-3) - exact);
                       if (e3 > 1e-9) {
                           const double e32 =
                               std::abs(estimate_lower_bound_taylor(rho, k, 5e-4) - exact);
                           viol = std::max(viol, e32 / e3 - 0.75);
                       }
                       return viol;
                   }});
    reg.push_back({"qubit-exact-form", "protocols", 1e-12, false, 1,
                   [](std::uint64_t s, const std::vector<int>&) {
                       const auto rho = random_state(2, s);
                       PhiloxSequence r(s, 33);
                       double n[3];
                       double norm = 0.0;
                       do {
                           norm = 0.0;
                           for (auto& x : n) {
                               x = r.gaussian();
                               norm += x * x;
                           }
                           norm = std::sqrt(norm);
                       } while (norm < 1e-3);
                       for (auto& x : n) x /= norm;
                       Matrix km(2, 2);
                       km << n[2], cxd(n[0], -n[1]), cxd(n[0], n[1]), -n[2];
                       const auto k = Observable::make(km);
                       return std::abs(qubit_exact_lower_bound(rho, n[0], n[1], n[2]) -
                                       lower_bound(rho, k));
                   }});
    reg.push_back({"svector-normalization", "protocols", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto rho_a = random_state(d, s);
                       const auto rho_b = random_state(d, s ^ 0xABCu);
                       PhiloxSequence r(s, 34);
                       const int ib = static_cast<int>(r.below(d));
                       const auto beta = make_density(basis_projector(d, ib));
                       const auto table = scheme2_run(rho_a, rho_b, beta);
                       double viol = 0.0;
                       for (const auto* sv : {&table.s_ab, &table.s_ba, &table.s_a, &table.s_b}) {
                           viol = std::max(viol, std::abs(sv->sum()));
                           viol = std::max(viol, std::max(sv->maxCoeff() - (d - 1.0),
                                                          -1.0 - sv->minCoeff()));
                       }
                       return viol;
                   }});
    reg.push_back({"scheme2-direct-value", "protocols", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto rho_a = random_state(d, s);
                       const auto rho_b = random_state(d, s ^ 0xBCDu);
                       const auto beta = make_density(basis_projector(d, 0));
                       const auto table = scheme2_run(rho_a, rho_b, beta);
                       const auto rec = scheme2_reconstruct(table);
                       double viol = std::abs(rec.overlap_direct - overlap(rho_a, rho_b));
                       // reported overlap stays a physical overlap
                       viol = std::max(viol, std::max(rec.reported - 1.0 - 1e-8,
                                                      -1e-8 - rec.reported));
                       // corrected single-table route is exact on qubits
                       if (d == 2) {
                           viol = std::max(viol,
                                           std::abs(rec.overlap_qubit - rec.overlap_direct));
                       }
                       // slice identity, all d: T^b = d p_A p_B - d Re<b|AB|b>
                       const int b = table.beta_index;
                       const double t_b = table.s_ab(b) + table.s_ba(b) -
                                          0.75 * (table.s_a(b) + table.s_b(b)) -
                                          0.5 * (d - 1.0);
                       const double pa = (table.s_a(b) + 1.0) / d;
                       const double pb = (table.s_b(b) + 1.0) / d;
                       const cxd ab = (rho_a.matrix() * rho_b.matrix())(b, b);
                       const double rhs = d * pa * pb - d * ab.real();
                       return std::max(viol, std::abs(t_b - rhs));
                   }});
    reg.push_back({"scheme2-formula-flag", "protocols", 0.0, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto rho_a = random_state(d, s);
                       const auto rho_b = random_state(d, s ^ 0xCDEu);
                       const auto beta = make_density(basis_projector(d, 0));
                       const auto rec = scheme2_reconstruct(scheme2_run(rho_a, rho_b, beta));
                       const bool should = rec.mismatch > 1e-8;
                       if (should != rec.formula_mismatch) return 1.0;
                       const double want = should ? rec.overlap_direct : rec.overlap_formula;
                       return rec.reported == want ? 0.0 : 1.0;
                   }});
    reg.push_back({"wedge-intermediate", "protocols", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       PhiloxSequence r(s, 35);
                       const auto beta =
                           make_density(basis_projector(d, static_cast<int>(r.below(d))));
                       const auto rep = intermediate_bloch_check(random_state(d, s), beta);
                       return rep.max_deviation;
                   }});
    reg.push_back({"budget-accounting", "protocols", 0.0, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = pick_dim(s, dims);
                       double viol = 0.0;
                       if (measurement_budget(d, false) != 5L * d) viol = 1.0;
                       if (measurement_budget(d, true) != 4L * d) viol = 1.0;
                       if (scheme1_budget() != 2) viol = 1.0;
                       if (tomography_budget(d) != static_cast<long>(d) * d - 1) viol = 1.0;
                       return viol;
                   }});

    // ---- supplement ---------------------------------------------------------
    reg.push_back({"additivity", "supplement", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int ds = std::min(pick_dim(s, dims), 3);
                       const int dr = 2 + static_cast<int>(s % 2);
                       const auto rho = random_state(ds, s);
                       const auto tau = random_state(dr, s ^ 0xDEFu);
                       const auto qs = random_observable(ds, s ^ 0xEF0u);
                       const auto qr = random_observable(dr, s ^ 0xF01u);
                       const Matrix q_tot =
                           tensor(qs.matrix(), Matrix::Identity(dr, dr)) +
                           tensor(Matrix::Identity(ds, ds), qr.matrix());
                       const double total = skew_information(
                           make_density(tensor(rho.matrix(), tau.matrix())),
                           Observable::make(q_tot));
                       return std::abs(total - skew_information(rho, qs) -
                                       skew_information(tau, qr));
                   }});
    reg.push_back({"symmetry-transfer", "supplement", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int ds = std::min(pick_dim(s, dims), 3);
                       const int dr = 2;
                       const auto qs = random_observable(ds, s);
                       const auto qr = random_observable(dr, s ^ 0x102u);
                       PhiloxSequence r(s, 36);
                       Matrix tau = Matrix::Zero(dr, dr);
                       const double w0 = 0.2 + 0.6 * r.uniform();
                       tau += w0 * qr.eigenvectors().col(0) * qr.eigenvectors().col(0).adjoint();
                       tau += (1.0 - w0) * qr.eigenvectors().col(1) *
                              qr.eigenvectors().col(1).adjoint();
                       tau = (tau + tau.adjoint().eval()) / 2.0;
                       // reuse the commutant machinery to build a Q-invariant V
                       const auto kic = k_invariant_channel(qs, qr, make_density(tau), s);
                       const auto rho = random_state(ds, s ^ 0x103u);
                       const Matrix joint = tensor(rho.matrix(), tau);
                       const Matrix q_tot =
                           tensor(qs.matrix(), Matrix::Identity(dr, dr)) +
                           tensor(Matrix::Identity(ds, ds), qr.matrix());
                       const auto q_obs = Observable::make(q_tot);
                       Matrix coupled = kic.v * joint * kic.v.adjoint();
                       coupled = (coupled + coupled.adjoint().eval()) / 2.0;
                       return std::abs(skew_information(make_density(coupled), q_obs) -
                                       skew_information(make_density(joint), q_obs));
                   }});
    reg.push_back({"twirl-idempotent", "supplement", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       // integer-spaced supercharge so the 64-point grid is exact
                       PhiloxSequence r(s, 37);
                       Matrix q = Matrix::Zero(d, d);
                       for (int i = 0; i < d; ++i) {
                           q(i, i) = static_cast<double>(r.below(7)) - 3.0;
                       }
                       const auto group = GroupRep::phase_group(Observable::make(q));
                       const auto rho = random_state(d, s);
                       const auto once = g_twirl(rho, group);
                       const auto twice = g_twirl(once, group);
                       return (twice.matrix() - once.matrix()).cwiseAbs().maxCoeff();
                   }});
    reg.push_back({"twirl-kills-asymmetry", "supplement", 1e-10, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       PhiloxSequence r(s, 38);
                       Matrix qd = Matrix::Zero(d, d);
                       for (int i = 0; i < d; ++i) {
                           qd(i, i) = static_cast<double>(r.below(7)) - 3.0;
                       }
                       const Matrix u = random_unitary(d, s ^ 0x104u);
                       Matrix qm = u * qd * u.adjoint();
                       qm = (qm + qm.adjoint().eval()) / 2.0;
                       const auto q = Observable::make(qm);
                       const auto group = GroupRep::phase_group(q);
                       return asymmetry(g_twirl(random_state(d, s), group), q);
                   }});
    reg.push_back({"rel-entropy-asymmetry-nonneg", "supplement", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 4);
                       const auto q = random_observable(d, s);
                       const auto group = GroupRep::phase_group(q, 32);
                       return -rel_entropy_asymmetry(random_state(d, s ^ 0x105u), group);
                   }});
    reg.push_back({"residual-coherence", "supplement", 1e-9, false, 1,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int da = std::min(pick_dim(s, dims), 3);
                       const int db = 2;
                       const auto ka = random_observable(da, s);
                       const auto rho_ab = random_state(da * db, s ^ 0x106u);
                       const double res = residual_coherence(rho_ab, {da, db}, 0, ka);
                       double viol = std::max(0.0, -res);
                       // product states have zero residual coherence
                       const auto rho = random_state(da, s ^ 0x107u);
                       const auto tau = random_state(db, s ^ 0x108u);
                       const auto prod = make_density(tensor(rho.matrix(), tau.matrix()));
                       viol = std::max(viol,
                                       std::abs(residual_coherence(prod, {da, db}, 0, ka)));
                       return viol;
                   }});

    // ---- shots ----------------------------------------------------------------
    reg.push_back({"seeded-determinism", "shots", 0.0, false, 4,
                   [](std::uint64_t s, const std::vector<int>&) {
                       PhiloxSequence r(s, 39);
                       const double p = r.uniform();
                       const auto a = sample_polarization(p, 5000, s, 0);
                       const auto b = sample_polarization(p, 5000, s, 0);
                       if (a.counts != b.counts) return 1.0;
                       if (a.estimate != b.estimate || a.stderr_ != b.stderr_) return 1.0;
                       const auto c = sample_polarization(p, 5000, s, 1);
                       // distinct streams must not repeat the draw sequence
                       return (a.counts == c.counts && p > 0.01 && p < 0.99) ? 1.0 : 0.0;
                   }});
    reg.push_back({"polarization-unbiased", "shots", 0.0, false, 20,
                   [](std::uint64_t s, const std::vector<int>&) {
                       PhiloxSequence r(s, 40);
                       const double p_plus = 0.05 + 0.9 * r.uniform();
                       const double exact = 2.0 * p_plus - 1.0;
                       const int nseeds = 1000;
                       const long n = 2000;
                       double mean = 0.0, var_acc = 0.0;
                       for (int i = 0; i < nseeds; ++i) {
                           const auto b = sample_polarization(p_plus, n, s ^ (0x200u + i), 0);
                           mean += b.estimate;
                           var_acc += b.stderr_ * b.stderr_;
                       }
                       mean /= nseeds;
                       const double combined = std::sqrt(var_acc) / nseeds;
                       return std::max(0.0, std::abs(mean - exact) - 3.0 * combined);
                   }});
    reg.push_back({"coverage-2sigma", "shots", 0.0, false, 20,
                   [](std::uint64_t s, const std::vector<int>&) {
                       PhiloxSequence r(s, 41);
                       const double p_plus = 0.2 + 0.6 * r.uniform();
                       const double exact = 2.0 * p_plus - 1.0;
                       const int nseeds = 400;
                       const long n = 10000;
                       int covered = 0;
                       for (int i = 0; i < nseeds; ++i) {
                           const auto b = sample_polarization(p_plus, n, s ^ (0x300u + i), 0);
                           if (std::abs(b.estimate - exact) <= 2.0 * b.stderr_) ++covered;
                       }
                       const double frac = static_cast<double>(covered) / nseeds;
                       if (frac < 0.93) return 0.93 - frac;
                       if (frac > 0.97) return frac - 0.97;
                       return 0.0;
                   }});
    reg.push_back({"stderr-sqrt-scaling", "shots", 0.0, false, 20,
                   [](std::uint64_t s, const std::vector<int>&) {
                       PhiloxSequence r(s, 42);
                       const double p_plus = 0.2 + 0.6 * r.uniform();
                       std::vector<double> logn, logerr;
                       for (const long n : {1000L, 10000L, 100000L, 1000000L}) {
                           const auto b = sample_polarization(p_plus, n, s, 0);
                           logn.push_back(std::log10(static_cast<double>(n)));
                           logerr.push_back(std::log10(b.stderr_));
                       }
                       double sx = 0, sy = 0, sxx = 0, sxy = 0;
                       const int m = static_cast<int>(logn.size());
                       for (int i = 0; i < m; ++i) {
                           sx += logn[i];
                           sy += logerr[i];
                           sxx += logn[i] * logn[i];
                           sxy += logn[i] * logerr[i];
                       }
                       const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
                       return std::max(0.0, std::abs(slope + 0.5) - 0.05);
                   }});
    reg.push_back({"projective-consistency", "shots", 0.0, false, 10,
                   [](std::uint64_t s, const std::vector<int>& dims) {
                       const int d = std::min(pick_dim(s, dims), 3);
                       const auto rho_a = random_state(d, s);
                       const auto rho_b = random_state(d, s ^ 0x109u);
                       const auto beta = make_density(basis_projector(d, 0));
                       const Matrix basis = Matrix::Identity(d, d);
                       const auto exact = scheme2_run(rho_a, rho_b, beta);
                       double prev = 1e9;
                       double viol = 0.0;
                       for (const long n : {1000L, 1000000L}) {
                           const auto noisy =
                               noisy_svalue_table(rho_a, rho_b, beta, basis, n, s);
                           double dev = 0.0;
                           dev = std::max(dev,
                                          (noisy.table.s_ab - exact.s_ab).cwiseAbs().maxCoeff());
                           dev = std::max(dev,
                                          (noisy.table.s_ba - exact.s_ba).cwiseAbs().maxCoeff());
                           if (n == 1000000L) {
                               viol = std::max(0.0, dev - 0.02);
                               viol = std::max(viol, dev - prev - 0.01);
                           }
                           prev = dev;
                       }
                       return viol;
                   }});

    // ---- negative controls -----------------------------------------------
    reg.push_back({"negcontrol-hadamard-monotone", "negative", 1e-9, true, 1,
                   [](std::uint64_t s, const std::vector<int>&) {
                       Matrix h(2, 2);
                       const double r2 = 1.0 / std::sqrt(2.0);
                       h << r2, r2, r2, -r2;
                       const auto ch = make_kraus_channel({h});
                       PhiloxSequence r(s, 43);
                       Matrix diag = Matrix::Zero(2, 2);
                       const double w = 0.05 + 0.4 * r.uniform();
                       diag(0, 0) = 1.0 - w;
                       diag(1, 1) = w;
                       const auto rho = make_density(diag);
                       const auto k = diagonal_observable(2, s);
                       return skew_information(apply(ch, rho), k) - skew_information(rho, k);
                   }});
    reg.push_back({"negcontrol-hadamard-incoherence", "negative", 0.0, true, 1,
                   [](std::uint64_t, const std::vector<int>&) {
                       Matrix h(2, 2);
                       const double r2 = 1.0 / std::sqrt(2.0);
                       h << r2, r2, r2, -r2;
                       const auto ch = make_kraus_channel({h});
                       // asserts (wrongly) that the Hadamard is incoherent
                       return is_incoherent(ch, Matrix::Identity(2, 2)) ? 0.0 : 1.0;
                   }});
    reg.push_back({"negcontrol-permutation-incoherent", "negative", 1e-9, true, 1,
                   [](std::uint64_t s, const std::vector<int>&) {
                       // The unrestricted index-map family: random permutation
                       // branches at d = 3. Incoherent, yet not monotone.
                       const int d = 3;
                       PhiloxSequence r(s, 44);
                       const int nk = 2 + static_cast<int>(r.below(3));
                       Eigen::MatrixXcd c(nk, d);
                       for (int n = 0; n < nk; ++n) {
                           for (int i = 0; i < d; ++i) c(n, i) = cxd(r.gaussian(), r.gaussian());
                       }
                       for (int i = 0; i < d; ++i) c.col(i).normalize();
                       std::vector<Matrix> kraus;
                       for (int n = 0; n < nk; ++n) {
                           std::vector<int> perm(d);
                           for (int i = 0; i < d; ++i) perm[i] = i;
                           for (int i = d - 1; i > 0; --i) {
                               std::swap(perm[i], perm[static_cast<int>(r.below(i + 1))]);
                           }
                           Matrix kkk = Matrix::Zero(d, d);
                           for (int i = 0; i < d; ++i) kkk(perm[i], i) = c(n, i);
                           kraus.push_back(std::move(kkk));
                       }
                       const auto ch = make_kraus_channel(std::move(kraus));
                       const auto rho = random_state(d, s ^ 0x10Au);
                       const auto k = diagonal_observable(d, s ^ 0x10Bu);
                       return skew_information(apply(ch, rho), k) - skew_information(rho, k);
                   }});

    return reg;
}

}  // namespace

const std::vector<Property>& property_registry() {
    static const std::vector<Property> reg = build_registry();
    return reg;
}

std::vector<std::string> suite_names() {
    return {"default", "core",       "inequalities", "monotonicity",
            "protocols", "supplement", "shots",        "negative"};
}

std::vector<PropertyReport> run_property_suite(const std::string& suite, long trials,
                                               const std::vector<int>& dims,
                                               std::uint64_t seed, int jobs) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (dims.empty()) throw InvalidArgument("dims must be nonempty");
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UnknownSuite("no suite named \"" + suite + "\"");
    }

    std::vector<PropertyReport> reports;
    std::uint64_t prop_index = 0;
    for (const auto& prop : property_registry()) {
        ++prop_index;
        const bool selected =
            (suite == prop.suite) || (suite == "default" && prop.suite != "negative");
        if (!selected) continue;

        const long n = std::max(1L, trials / prop.trial_divisor);
        PropertyReport rep;
        rep.name = prop.name;
        rep.suite = prop.suite;
        rep.trials = n;
        rep.negative_control = prop.negative_control;
        rep.max_violation = 0.0;

        const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
        std::vector<std::vector<PropertyFailure>> fails(nthreads);
        std::vector<double> maxv(nthreads, 0.0);
        auto worker = [&](int w) {
            for (long t = w; t < n; t += nthreads) {
                const std::uint64_t trial_seed =
                    seed ^ (0x9E3779B97F4A7C15ULL * (prop_index * 100003ULL + t + 1));
                double v;
                try {
                    v = prop.run(trial_seed, dims);
                } catch (const std::exception&) {
                    v = 1.0;  // an unexpected throw is a failure
                }
                maxv[w] = std::max(maxv[w], v);
                if (v > prop.tolerance) fails[w].push_back({trial_seed, v});
            }
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
            for (auto& th : pool) th.join();
        }
        for (int w = 0; w < nthreads; ++w) {
            rep.max_violation = std::max(rep.max_violation, maxv[w]);
            rep.failures.insert(rep.failures.end(), fails[w].begin(), fails[w].end());
        }
        rep.pass = rep.failures.empty();
        reports.push_back(std::move(rep));
    }
    return reports;
}

bool all_pass(const std::vector<PropertyReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace qskew
