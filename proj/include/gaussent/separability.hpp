// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// PPT-based entanglement criteria for one-vs-two and one-vs-one mode
// splittings, the resulting three-mode separability class, and Gaussian
// localizable entanglement.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gaussent/errors.hpp"
#include "gaussent/gaussian_ops.hpp"
#include "gaussent/phase_space.hpp"

namespace gaussent {

using ModeNames = std::array<std::string, 3>;

inline const ModeNames& default_mode_names() {
    static const ModeNames names{"A", "A′", "B"};
    return names;
}

/// Verdict for the splitting of one mode from the other two.
struct SplittingVerdict {
    std::string splitting;  // e.g. "A|(A′B)"
    int mode = 0;
    double sigma = 0.0;
    double pt_mu = 1.0;      // smallest symplectic eigenvalue of the partial transpose
    bool entangled = false;  // sigma < -kBoundaryTol or pt_mu < 1 - kPhysicalTol
    bool boundary = false;   // |sigma| <= kBoundaryTol
};

/// Two-mode PPT data.
struct EntanglementMetrics {
    double mu = 1.0;                   // lower symplectic eigenvalue of the partial transpose
    double log_negativity = 0.0;       // max(0, -log2 mu)
    double delta_tilde = 2.0;          // det A + det B - 2 det C
    double ppt_condition_value = 0.0;  // det g - delta_tilde + 1
    bool entangled = false;            // mu < 1 - kBoundaryTol
    bool boundary = false;             // |mu - 1| <= kBoundaryTol
};

inline double log_negativity(double mu) {
    if (!(mu >= 0.0)) throw Error(ErrorKind::DomainError, "symplectic eigenvalue must be >= 0");
    return std::max(0.0, -std::log2(mu));
}

inline double log_negativity(const EntanglementMetrics& metrics) { return log_negativity(metrics.mu); }

inline std::string splitting_label(int mode, const ModeNames& names = default_mode_names()) {
    std::string label = names[static_cast<std::size_t>(mode)] + "|(";
    for (int k = 0; k < 3; ++k) {
        if (k != mode) label += names[static_cast<std::size_t>(k)];
    }
    return label + ")";
}

/// Sigma_x = I3 - I2 + I1 - 1 of the matrix partially transposed on `mode`.
///
/// Sigma_x is the product of (nu~^2 - 1) over the partial-transpose spectrum,
/// which for a 1 x 2 splitting has at most one value below 1. Sigma_x < 0 is
/// then equivalent to entanglement except when another nu~ equals 1, where
/// Sigma_x vanishes (up to rounding that grows with squeezing). That happens
/// for every pure state, so the verdict also consults the spectrum itself.
inline SplittingVerdict sigma_x(const CovarianceMatrix& cm, int mode, const ModeNames& names = default_mode_names()) {
    if (cm.n_modes() != 3) throw Error(ErrorKind::DimensionMismatch, "sigma_x needs a three-mode state");
    detail::check_modes({mode}, 3, true);
    const InvariantTriple inv = char_poly_invariants(partial_transpose(cm, {mode}));
    SplittingVerdict v;
    v.splitting = splitting_label(mode, names);
    v.mode = mode;
    v.sigma = inv.sigma();
    v.pt_mu = symplectic_eigenvalues(partial_transpose(cm, {mode})).front();
    v.boundary = std::abs(v.sigma) <= kBoundaryTol;
    v.entangled = v.sigma < -kBoundaryTol || v.pt_mu < 1.0 - kPhysicalTol;
    return v;
}

/// PPT test for a two-mode state. With the seralian of the partial transpose,
/// delta_tilde = det A + det B - 2 det C, one has
/// mu^2 = (delta_tilde - sqrt(delta_tilde^2 - 4 det g)) / 2 and
/// (mu^2 - 1)(nu_+^2 - 1) = det g - delta_tilde + 1.
/// The square root loses half the digits when mu and nu_+ nearly coincide
/// (states close to a product of vacua), so mu itself is taken from the
/// symmetric eigenproblem of the partial transpose.
inline EntanglementMetrics two_mode_condition(const CovarianceMatrix& cm) {
    if (cm.n_modes() != 2) throw Error(ErrorKind::DimensionMismatch, "two_mode_condition needs a two-mode state");
    const Matrix& g = cm.matrix();
    const double det_a = g.block<2, 2>(0, 0).determinant();
    const double det_b = g.block<2, 2>(2, 2).determinant();
    const double det_c = g.block<2, 2>(0, 2).determinant();
    const double det_g = g.determinant();

    EntanglementMetrics m;
    m.delta_tilde = det_a + det_b - 2.0 * det_c;
    m.ppt_condition_value = det_g - m.delta_tilde + 1.0;
    const double disc = m.delta_tilde * m.delta_tilde - 4.0 * det_g;
    if (disc < -1e-9 * std::max(1.0, m.delta_tilde * m.delta_tilde)) {
        throw Error(ErrorKind::ComplexEigenvalue,
                    "negative discriminant " + std::to_string(disc) + " in partial-transpose spectrum");
    }
    m.mu = symplectic_eigenvalues(partial_transpose(cm, {1})).front();
    m.log_negativity = log_negativity(m.mu);
    m.entangled = m.mu < 1.0 - kBoundaryTol;
    m.boundary = std::abs(m.mu - 1.0) <= kBoundaryTol;
    return m;
}

enum class SeparabilityClass {
    FullyInseparable,     // entangled across all three splittings
    OneModeBiseparable,   // exactly one separable splitting
    TwoModeBiseparable,   // exactly one entangled splitting
    PptAllSplittings,     // three-mode biseparable or fully separable, not distinguished
};

constexpr std::string_view to_string(SeparabilityClass c) {
    switch (c) {
        case SeparabilityClass::FullyInseparable: return "fully-inseparable";
        case SeparabilityClass::OneModeBiseparable: return "one-mode-biseparable";
        case SeparabilityClass::TwoModeBiseparable: return "two-mode-biseparable";
        case SeparabilityClass::PptAllSplittings: return "ppt-all-splittings";
    }
    return "unknown";
}

struct PairMetrics {
    std::string pair;  // e.g. "(A,B)"
    int first = 0;
    int second = 0;
    EntanglementMetrics metrics;
};

struct SeparabilityReport {
    std::array<SplittingVerdict, 3> verdicts;
    std::array<PairMetrics, 3> pairwise;
    SeparabilityClass class_label = SeparabilityClass::PptAllSplittings;
    // The separable splitting for one-mode-biseparable states, the entangled
    // one for two-mode-biseparable states, empty otherwise.
    std::string distinguished_splitting;
};

inline SeparabilityReport classify_three_mode(const CovarianceMatrix& cm, const ModeNames& names = default_mode_names()) {
    if (cm.n_modes() != 3) throw Error(ErrorKind::DimensionMismatch, "classification needs a three-mode state");
    SeparabilityReport report;
    int n_entangled = 0;
    for (int k = 0; k < 3; ++k) {
        report.verdicts[static_cast<std::size_t>(k)] = sigma_x(cm, k, names);
        if (report.verdicts[static_cast<std::size_t>(k)].entangled) ++n_entangled;
    }
    constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [a, b] = pairs[p];
        report.pairwise[p] = PairMetrics{
            "(" + names[static_cast<std::size_t>(a)] + "," + names[static_cast<std::size_t>(b)] + ")", a, b,
            two_mode_condition(reduce(cm, {a, b}))};
    }
    switch (n_entangled) {
        case 3: report.class_label = SeparabilityClass::FullyInseparable; break;
        case 2: report.class_label = SeparabilityClass::OneModeBiseparable; break;
        case 1: report.class_label = SeparabilityClass::TwoModeBiseparable; break;
        default: report.class_label = SeparabilityClass::PptAllSplittings; break;
    }
    for (const auto& v : report.verdicts) {
        if ((n_entangled == 2 && !v.entangled) || (n_entangled == 1 && v.entangled)) {
            report.distinguished_splitting = v.splitting;
        }
    }
    return report;
}

namespace detail {

inline std::vector<int> other_modes(int measured) {
    std::vector<int> kept;
    for (int k = 0; k < 3; ++k) {
        if (k != measured) kept.push_back(k);
    }
    return kept;
}

inline void require_bisymmetric(const CovarianceMatrix& cm, int measured) {
    const auto kept = other_modes(measured);
    const int u = kept[0];
    const int v = kept[1];
    const double err = std::max({(cm.block(u, u) - cm.block(v, v)).cwiseAbs().maxCoeff(),
                                 (cm.block(u, measured) - cm.block(v, measured)).cwiseAbs().maxCoeff(),
                                 (cm.block(u, v) - cm.block(v, u)).cwiseAbs().maxCoeff()});
    if (err > 1e-8) {
        throw Error(ErrorKind::NotBisymmetric,
                    "state is not symmetric under exchange of the unmeasured modes (deviation " +
                        std::to_string(err) + ")");
    }
}

}  // namespace detail

/// Lower PT symplectic eigenvalue of the two-mode state left after homodyne
/// detection of x on `measured_mode`. For states symmetric under exchange of
/// the two other modes this is the minimum over all Gaussian measurements.
inline double localizable_mu(const CovarianceMatrix& cm, int measured_mode) {
    if (cm.n_modes() != 3) throw Error(ErrorKind::DimensionMismatch, "localizable_mu needs a three-mode state");
    detail::check_modes({measured_mode}, 3, true);
    detail::require_bisymmetric(cm, measured_mode);
    const GaussianState cond = condition_on_measurement(GaussianState(cm), MeasurementSpec::homodyne_x(measured_mode));
    return two_mode_condition(cond.cm()).mu;
}

/// Grid of measurement seeds R(theta) diag(t, 1/t) R(theta)^T with
/// theta_i = i pi / n_theta and t log-spaced over [t_min, t_max].
struct ScanGrid {
    int n_theta = 64;
    int n_t = 64;
    double t_min = 1e-6;
    double t_max = 1e6;

    /// A grid that contains every point of this one.
    ScanGrid refined() const { return {2 * n_theta, 2 * n_t - 1, t_min, t_max}; }

    double theta(int i) const { return std::numbers::pi * i / n_theta; }
    double t(int j) const {
        if (n_t == 1) return t_min;
        const double f = static_cast<double>(j) / (n_t - 1);
        return std::exp(std::log(t_min) + f * (std::log(t_max) - std::log(t_min)));
    }
};

struct ScanResult {
    double min_mu = std::numeric_limits<double>::infinity();
    double theta = 0.0;
    double t = 0.0;
};

/// Brute-force minimum of mu over pure single-mode Gaussian measurements.
inline ScanResult measurement_scan_oracle(const CovarianceMatrix& cm, int measured_mode, const ScanGrid& grid = {}) {
    if (grid.n_theta < 1 || grid.n_t < 1) throw Error(ErrorKind::InvalidArgument, "scan grid is empty");
    const GaussianState state(cm);
    ScanResult best;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double th = grid.theta(i);
        Eigen::Matrix2d rot;
        rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        for (int j = 0; j < grid.n_t; ++j) {
            const double t = grid.t(j);
            Eigen::Matrix2d seed = rot * Eigen::Vector2d(t, 1.0 / t).asDiagonal() * rot.transpose();
            seed = (0.5 * (seed + seed.transpose())).eval();
            // Pure by construction; skip the det >= 1 check, which loses
            // precision for t far from 1.
            const MeasurementSpec spec{measured_mode, MeasurementSpec::Kind::General, seed};
            const auto cond = condition_on_measurement(state, spec);
            const double mu = two_mode_condition(cond.cm()).mu;
            if (mu < best.min_mu) best = {mu, th, t};
        }
    }
    return best;
}

}  // namespace gaussent
