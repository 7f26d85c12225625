#include "qskew/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qskew/philox.hpp"

namespace qskew {

namespace {

void check_dims(const DensityMatrix& rho, const Observable& k) {
    if (rho.dim() != k.dim()) {
        throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                                " vs observable dim " + std::to_string(k.dim()));
    }
}

}  // namespace

double variance(const DensityMatrix& rho, const Observable& k) {
    check_dims(rho, k);
    const Matrix& km = k.matrix();
    const double first = (rho.matrix() * km).trace().real();
    const double second = (rho.matrix() * km * km).trace().real();
    return second - first * first;
}

double skew_information(const DensityMatrix& rho, const Observable& k) {
    check_dims(rho, k);
    const Matrix s = matrix_sqrt(rho);
    const Matrix& km = k.matrix();
    const double term1 = (rho.matrix() * km * km).trace().real();
    const double term2 = (s * km * s * km).trace().real();
    return term1 - term2;
}

double skew_information_spectral(const DensityMatrix& rho, const Observable& k) {
    check_dims(rho, k);
    const int d = rho.dim();
    // K in the rho eigenbasis.
    const Matrix kk = rho.eigenvectors().adjoint() * k.matrix() * rho.eigenvectors();
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double diff = std::sqrt(rho.eigenvalues()(i)) - std::sqrt(rho.eigenvalues()(j));
            acc += diff * diff * std::norm(kk(i, j));
        }
    }
    return 0.5 * acc;
}

double skew_information_p(const DensityMatrix& rho, const Observable& k, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("skew_information_p requires p in (0,1), got " +
                              std::to_string(p));
    }
    check_dims(rho, k);
    const Matrix rp = density_power(rho, p);
    const Matrix rq = density_power(rho, 1.0 - p);
    const Matrix& km = k.matrix();
    // -1/2 Tr[[rho^p, K][rho^{1-p}, K]] = Tr[rho K^2] - Tr[rho^p K rho^{1-p} K]
    const cxd cross = (rp * km * rq * km).trace();
    const double term1 = (rho.matrix() * km * km).trace().real();
    return term1 - cross.real();
}

double lower_bound(const DensityMatrix& rho, const Observable& k) {
    check_dims(rho, k);
    const Matrix c = rho.matrix() * k.matrix() - k.matrix() * rho.matrix();
    return -0.25 * (c * c).trace().real();
}

double lower_bound_spectral(const DensityMatrix& rho, const Observable& k) {
    check_dims(rho, k);
    const int d = rho.dim();
    const Matrix kk = rho.eigenvectors().adjoint() * k.matrix() * rho.eigenvectors();
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double diff = rho.eigenvalues()(i) - rho.eigenvalues()(j);
            acc += diff * diff * std::norm(kk(i, j));
        }
    }
    return 0.25 * acc;
}

CoherenceReport coherence_report(const DensityMatrix& rho, const Observable& k) {
    CoherenceReport r;
    r.skew = skew_information(rho, k);
    r.lower_bound = lower_bound(rho, k);
    r.variance = variance(rho, k);
    r.classical_variance = r.variance - r.skew;
    r.purity = purity(rho);
    r.degenerate_observable = k.degenerate();
    return r;
}

Observable embed_at_site(const Observable& k, const std::vector<int>& dims, int site) {
    if (site < 0 || site >= static_cast<int>(dims.size())) {
        throw DimensionMismatch("site index out of range");
    }
    if (dims[site] != k.dim()) {
        throw DimensionMismatch("observable dim " + std::to_string(k.dim()) +
                                " vs site dim " + std::to_string(dims[site]));
    }
    Matrix m = Matrix::Identity(1, 1);
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
        m = tensor(m, i == site ? k.matrix() : Matrix(Matrix::Identity(dims[i], dims[i])));
    }
    return Observable::make(m);
}

double local_coherence(const DensityMatrix& rho_multi, const std::vector<int>& dims,
                       int site, const Observable& k) {
    return skew_information(rho_multi, embed_at_site(k, dims, site));
}

double residual_coherence(const DensityMatrix& rho_multi, const std::vector<int>& dims,
                          int site, const Observable& k) {
    const DensityMatrix marginal = partial_trace(rho_multi, dims, {site});
    return local_coherence(rho_multi, dims, site, k) - skew_information(marginal, k);
}

namespace {

// Nelder-Mead on R^n, good enough for the smooth low-dimensional landscape
// of the unitary chart. Returns the best point found.
struct NelderMeadResult {
    RealVector x;
    double f;
};

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& fn,
                             const RealVector& x0, double step, double rel_tol,
                             int max_iter) {
    const int n = static_cast<int>(x0.size());
    std::vector<RealVector> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
    for (int i = 0; i <= n; ++i) fv[i] = fn(pts[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<RealVector> p2(n + 1);
        std::vector<double> f2(n + 1);
        for (int i = 0; i <= n; ++i) {
            p2[i] = pts[idx[i]];
            f2[i] = fv[idx[i]];
        }
        pts.swap(p2);
        fv.swap(f2);
    };

    order();
    for (int it = 0; it < max_iter; ++it) {
        if (fv[n] - fv[0] <= 1e-9 + rel_tol * std::abs(fv[0])) break;
        RealVector centroid = RealVector::Zero(n);
        for (int i = 0; i < n; ++i) centroid += pts[i];
        centroid /= n;

        RealVector xr = centroid + (centroid - pts[n]);
        const double fr = fn(xr);
        if (fr < fv[0]) {
            RealVector xe = centroid + 2.0 * (centroid - pts[n]);
            const double fe = fn(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            RealVector xc = centroid + 0.5 * (pts[n] - centroid);
            const double fc = fn(xc);
            if (fc < fv[n]) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    fv[i] = fn(pts[i]);
                }
            }
        }
        order();
    }
    return {pts[0], fv[0]};
}

Matrix chart_unitary(const RealVector& theta, const GellMannBasis& basis) {
    const int d = basis.dim();
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < basis.count(); ++i) {
        h += theta(i) * basis.normalized_generators()[i];
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(d);
    for (int i = 0; i < d; ++i) phases(i) = std::exp(cxd(0.0, es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DiscordResult discord_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                          const RealVector& spectrum, const DiscordOptions& opts) {
    if (dim_a * dim_b != rho_ab.dim()) {
        throw DimensionMismatch("dim_a * dim_b != state dim");
    }
    if (spectrum.size() != dim_a) {
        throw DimensionMismatch("spectrum length must equal dim_a");
    }
    const double spread = spectrum.maxCoeff() - spectrum.minCoeff();
    if (spread < 1e-12) {
        throw DegenerateSpectrum("all spectrum entries equal; the minimum is trivially 0");
    }
    const GellMannBasis basis = gell_mann(dim_a);
    const Matrix id_b = Matrix::Identity(dim_b, dim_b);

    auto objective = [&](const RealVector& theta) {
        const Matrix u = chart_unitary(theta, basis);
        const Matrix ka = u * spectrum.asDiagonal() * u.adjoint();
        Matrix big = tensor(ka, id_b);
        big = (big + big.adjoint().eval()) / 2.0;
        return skew_information(rho_ab, Observable::make(big));
    };

    const int n = basis.count();
    DiscordResult best;
    best.value = std::numeric_limits<double>::infinity();
    PhiloxSequence rng(opts.seed, /*stream=*/0xD15C0ULL);
    for (int r = 0; r < opts.restarts; ++r) {
        RealVector x0(n);
        for (int i = 0; i < n; ++i) x0(i) = rng.gaussian();
        const auto res = nelder_mead(objective, x0, 0.4, opts.rel_tol, opts.max_iterations);
        if (res.f < best.value) {
            const Matrix u = chart_unitary(res.x, basis);
            best.value = res.f;
            best.argmin = Observable::from_spectrum(spectrum, u);
            best.best_restart = r;
        }
    }
    return best;
}

GroupRep GroupRep::from_elements(std::vector<Matrix> elements) {
    if (elements.empty()) throw EmptyGroup("group representation needs at least one element");
    const Eigen::Index d = elements[0].rows();
    for (const auto& u : elements) {
        if (u.rows() != d || u.cols() != d) {
            throw DimensionMismatch("group elements must share one dimension");
        }
        if (unitarity_defect(u) > kUnitaryTol) {
            throw NotUnitary("group element deviates from unitarity by more than 1e-10");
        }
    }
    GroupRep g;
    g.elements_ = std::move(elements);
    return g;
}

GroupRep GroupRep::phase_group(const Observable& q, int m) {
    if (m < 1) throw EmptyGroup("phase grid size must be >= 1");
    std::vector<Matrix> els;
    els.reserve(m);
    for (int j = 0; j < m; ++j) {
        els.push_back(unitary_exp(q, 2.0 * 3.14159265358979323846 * j / m));
    }
    return from_elements(std::move(els));
}

DensityMatrix g_twirl(const DensityMatrix& rho, const GroupRep& group) {
    if (group.dim() != rho.dim()) {
        throw DimensionMismatch("group dim " + std::to_string(group.dim()) +
                                " vs state dim " + std::to_string(rho.dim()));
    }
    Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
    for (const auto& u : group.elements()) {
        acc += u * rho.matrix() * u.adjoint();
    }
    acc /= static_cast<double>(group.elements().size());
    acc = (acc + acc.adjoint().eval()) / 2.0;
    return make_density(acc);
}

double asymmetry(const DensityMatrix& rho, const Observable& q) {
    return skew_information(rho, q);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (int i = 0; i < rho.eigenvalues().size(); ++i) {
        const double l = rho.eigenvalues()(i);
        if (l > 1e-14) s -= l * std::log(l);
    }
    return s;
}

double rel_entropy_asymmetry(const DensityMatrix& rho, const GroupRep& group) {
    return von_neumann_entropy(g_twirl(rho, group)) - von_neumann_entropy(rho);
}

}  // namespace qskew
