#include "qskew/interferometry.hpp"

#include <cmath>

namespace qskew {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix hadamard2() {
    Matrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return h;
}

Matrix sigma_z2() {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

Matrix sqrt_swap(int d) {
    return kInvSqrt2 * (Matrix::Identity(d * d, d * d) - cxd(0.0, 1.0) * swap_operator(d));
}

}  // namespace

Scheme1Config Scheme1Config::make(DensityMatrix ancilla, Observable k, double t,
                                  DensityMatrix state) {
    if (ancilla.dim() != 2) {
        throw DimensionMismatch("scheme 1 ancilla must be a qubit");
    }
    if (k.dim() != state.dim()) {
        throw DimensionMismatch("observable dim vs state dim");
    }
    const double sens = std::abs((ancilla.matrix() * sigma_z2()).trace().real());
    if (sens <= 1e-6) {
        throw ZeroSensitivityAncilla("|Tr[alpha sigma_z]| = " + std::to_string(sens) +
                                     " gives a zero-visibility interferometer");
    }
    Scheme1Config cfg{std::move(ancilla), std::move(k), t, std::move(state)};
    return cfg;
}

Scheme1Result scheme1_polarization(const Scheme1Config& cfg, bool rotated) {
    const int d = cfg.state.dim();
    const Matrix& rho1 = cfg.state.matrix();
    Matrix rho2 = rho1;
    if (rotated) {
        const Matrix u = unitary_exp(cfg.k, cfg.t);
        rho2 = u * rho1 * u.adjoint();
        rho2 = (rho2 + rho2.adjoint().eval()) / 2.0;
    }

    const Matrix h_full = tensor(hadamard2(), Matrix::Identity(d * d, d * d));
    const Matrix cv = controlled(swap_operator(d));
    const Matrix circuit = h_full * cv * h_full;

    Matrix total = tensor(cfg.ancilla.matrix(), tensor(rho1, rho2));
    total = circuit * total * circuit.adjoint();

    const Matrix readout = tensor(sigma_z2(), Matrix::Identity(d * d, d * d));
    Scheme1Result res;
    res.polarization = (total * readout).trace().real();
    res.swap_mean = (swap_operator(d) * tensor(rho1, rho2)).trace().real();
    const double pol_in = (cfg.ancilla.matrix() * sigma_z2()).trace().real();
    res.reference = pol_in * res.swap_mean;
    res.deviation = std::abs(res.polarization - res.reference);
    return res;
}

double estimate_lower_bound_taylor(const DensityMatrix& rho, const Observable& k, double t) {
    if (t == 0.0) throw ZeroPhase("Taylor estimator needs t != 0");
    if (rho.dim() != k.dim()) throw DimensionMismatch("state dim vs observable dim");
    const Matrix u = unitary_exp(k, t);
    Matrix rotated = u * rho.matrix() * u.adjoint();
    const double ov = (rho.matrix() * rotated).trace().real();
    return (purity(rho) - ov) / (2.0 * t * t);
}

double qubit_exact_lower_bound(const DensityMatrix& rho, double nx, double ny, double nz) {
    if (rho.dim() != 2) throw DimensionMismatch("qubit form needs a 2x2 state");
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw NotUnitVector("|n| = " + std::to_string(norm) + " differs from 1 beyond 1e-10");
    }
    Matrix k(2, 2);
    k << nz, cxd(nx, -ny), cxd(nx, ny), -nz;
    const Matrix u = unitary_exp(Observable::make(k), 3.14159265358979323846 / 2.0);
    const Matrix rotated = u * rho.matrix() * u.adjoint();
    const double ov = (rho.matrix() * rotated).trace().real();
    return 0.5 * (purity(rho) - ov);
}

namespace {

int find_beta_index(const DensityMatrix& beta, const Matrix& basis) {
    int idx = -1;
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
        const Vector b = basis.col(i);
        const double p = (b.adjoint() * beta.matrix() * b).value().real();
        if (std::abs(p - 1.0) <= 1e-10) {
            idx = static_cast<int>(i);
        } else if (std::abs(p) > 1e-10) {
            throw AncillaNotBasisElement("Tr[beta |i><i|] = " + std::to_string(p) +
                                         " at i = " + std::to_string(i) +
                                         "; ancilla must be a basis element");
        }
    }
    if (idx < 0) throw AncillaNotBasisElement("ancilla has no unit-probability basis element");
    return idx;
}

RealVector ancilla_svec(const DensityMatrix& rho_first, const DensityMatrix& rho_second,
                        const DensityMatrix& beta, const Matrix& basis) {
    const int d = rho_first.dim();
    const Matrix g = sqrt_swap(d);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix g1 = tensor(g, id);  // on (A, ancilla)
    const Matrix g2 = tensor(id, g);  // on (ancilla, B)

    Matrix st = tensor(rho_first.matrix(), tensor(beta.matrix(), rho_second.matrix()));
    st = g1 * st * g1.adjoint();
    st = g2 * st * g2.adjoint();
    const Matrix marg = partial_trace(st, {d, d, d}, {1});

    RealVector s(d);
    for (int i = 0; i < d; ++i) {
        const Vector b = basis.col(i);
        const double p = (b.adjoint() * marg * b).value().real();
        s(i) = d * p - 1.0;
    }
    return s;
}

RealVector direct_svec(const DensityMatrix& rho, const Matrix& basis) {
    const int d = rho.dim();
    RealVector s(d);
    for (int i = 0; i < d; ++i) {
        const Vector b = basis.col(i);
        const double p = (b.adjoint() * rho.matrix() * b).value().real();
        s(i) = d * p - 1.0;
    }
    return s;
}

}  // namespace

Scheme2Probabilities scheme2_probabilities(const DensityMatrix& rho_a,
                                           const DensityMatrix& rho_b,
                                           const DensityMatrix& beta, const Matrix& basis) {
    const int d = rho_a.dim();
    if (rho_b.dim() != d || beta.dim() != d) {
        throw DimensionMismatch("scheme 2 requires equal dimensions on all registers");
    }
    if (basis.rows() != d || basis.cols() != d) {
        throw DimensionMismatch("measurement basis must be d x d");
    }
    Scheme2Probabilities out;
    out.dim = d;
    out.beta_index = find_beta_index(beta, basis);
    const auto to_p = [d](const RealVector& s) {
        RealVector p(d);
        for (int i = 0; i < d; ++i) p(i) = (s(i) + 1.0) / d;
        return p;
    };
    out.p_ab = to_p(ancilla_svec(rho_a, rho_b, beta, basis));
    out.p_ba = to_p(ancilla_svec(rho_b, rho_a, beta, basis));
    out.p_a = to_p(direct_svec(rho_a, basis));
    out.p_b = to_p(direct_svec(rho_b, basis));
    out.exact_overlap = overlap(rho_a, rho_b);
    return out;
}

SValueTable scheme2_run(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                        const DensityMatrix& beta, const Matrix& basis,
                        bool interacting_variant) {
    const auto probs = scheme2_probabilities(rho_a, rho_b, beta, basis);
    const int d = probs.dim;
    SValueTable t;
    t.dim = d;
    t.basis = basis;
    t.beta_index = probs.beta_index;
    const auto to_s = [d](const RealVector& p) {
        RealVector s(d);
        for (int i = 0; i < d; ++i) s(i) = d * p(i) - 1.0;
        return s;
    };
    t.s_ab = to_s(probs.p_ab);
    t.s_ba = to_s(probs.p_ba);
    t.s_a = to_s(probs.p_a);
    t.s_b = to_s(probs.p_b);
    t.interacting_variant = interacting_variant;
    t.measurement_count = measurement_budget(d, interacting_variant);
    t.exact_overlap = probs.exact_overlap;
    return t;
}

SValueTable scheme2_run(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                        const DensityMatrix& beta, bool interacting_variant) {
    return scheme2_run(rho_a, rho_b, beta,
                       Matrix(Matrix::Identity(rho_a.dim(), rho_a.dim())), interacting_variant);
}

OverlapReconstruction scheme2_reconstruct(const SValueTable& table, double tolerance) {
    const int d = table.dim;
    if (d < 2 || table.beta_index < 0 || table.s_ab.size() != d || table.s_ba.size() != d ||
        table.s_a.size() != d || table.s_b.size() != d) {
        throw IncompleteTable("table is missing S-vectors or the ancilla index");
    }
    const int b = table.beta_index;

    // The published formula: x_A.x_B = sum_i [ 2(S^i_AB + S^i_BA)
    //   - 3/2 (S^i_A + S^i_B) + (S^i_A S^b_B + S^i_B S^b_A)/(2(d-1)) ] - 1.
    double xdot = -1.0;
    for (int i = 0; i < d; ++i) {
        xdot += 2.0 * (table.s_ab(i) + table.s_ba(i)) -
                1.5 * (table.s_a(i) + table.s_b(i)) +
                (table.s_a(i) * table.s_b(b) + table.s_b(i) * table.s_a(b)) / (2.0 * (d - 1));
    }

    OverlapReconstruction rec;
    rec.bloch_dot_formula = xdot;
    rec.overlap_formula = (1.0 + (d - 1) * xdot) / d;
    rec.overlap_direct = table.exact_overlap;

    // Corrected single-table route. The slice statistic
    //   T^i = S^i_AB + S^i_BA - 3/4 (S^i_A + S^i_B) - 1/2 S^i_beta
    // obeys T^i/d = Re(<i|rho_A|b><b|rho_B|i>) for i != b, which covers every
    // off-diagonal product touching |b>. At d = 2 that is the full overlap:
    //   overlap = sum_i p^i_A p^i_B + (2/d) sum_{i != b} T^i.
    // For d >= 3 the pairs (i, j) with i, j != b are not measurable from a
    // single-beta table, so the value below is exact only at d = 2.
    double diag = 0.0, slices = 0.0;
    for (int i = 0; i < d; ++i) {
        const double pa = (table.s_a(i) + 1.0) / d;
        const double pb = (table.s_b(i) + 1.0) / d;
        diag += pa * pb;
        if (i == b) continue;
        const double s_beta = -1.0;  // d * delta_{i,b} - 1 for i != b
        const double t_i = table.s_ab(i) + table.s_ba(i) -
                           0.75 * (table.s_a(i) + table.s_b(i)) - 0.5 * s_beta;
        slices += t_i;
    }
    rec.overlap_qubit = diag + 2.0 * slices / d;

    rec.mismatch = std::abs(rec.overlap_formula - rec.overlap_direct);
    rec.formula_mismatch = rec.mismatch > tolerance;
    rec.reported = rec.formula_mismatch ? rec.overlap_direct : rec.overlap_formula;
    return rec;
}

BlochVector bloch_wedge(const BlochVector& a, const BlochVector& b, const GellMannBasis& basis) {
    if (a.dim != basis.dim() || b.dim != basis.dim()) {
        throw DimensionMismatch("bloch_wedge: vector dims do not match basis");
    }
    const double scale = wedge_scale(basis.dim());
    RealVector out = RealVector::Zero(basis.count());
    for (const auto& f : basis.structure_constants()) {
        // f is stored for i < j; use antisymmetry for the (j, i) term.
        out(f.k) += scale * f.value * (a.components(f.i) * b.components(f.j) -
                                       a.components(f.j) * b.components(f.i));
    }
    return {basis.dim(), std::move(out)};
}

BlochCheckReport intermediate_bloch_check(const DensityMatrix& rho_a,
                                          const DensityMatrix& beta) {
    const int d = rho_a.dim();
    if (beta.dim() != d) throw DimensionMismatch("state and ancilla dims differ");
    const GellMannBasis basis = gell_mann(d);

    const Matrix g = sqrt_swap(d);
    Matrix st = tensor(rho_a.matrix(), beta.matrix());
    st = g * st * g.adjoint();
    const Matrix marg = partial_trace(st, {d, d}, {1});
    const BlochVector y_sim = bloch_from_state(make_density(marg), basis);

    const BlochVector xa = bloch_from_state(rho_a, basis);
    const BlochVector xb = bloch_from_state(beta, basis);
    const BlochVector w = bloch_wedge(xa, xb, basis);
    BlochVector y_form{d, 0.5 * (xa.components + xb.components + (d - 1) * w.components)};

    BlochCheckReport rep;
    rep.max_deviation = (y_form.components - y_sim.components).cwiseAbs().maxCoeff();
    rep.pass = rep.max_deviation <= 1e-9;
    rep.y_formula = std::move(y_form);
    rep.y_simulated = y_sim;
    return rep;
}

long measurement_budget(int d, bool interacting) {
    return interacting ? 4L * d : 5L * d;
}

long scheme1_budget() { return 2; }

long tomography_budget(int d) { return static_cast<long>(d) * d - 1; }

}  // namespace qskew
