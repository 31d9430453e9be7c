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

// Entanglement sharing with separable states.
//
// Alice (mode A) and Bob (mode B) start from a separable, classically
// correlated two-mode state. Alice splits A on a balanced beam splitter with
// a vacuum mode A'. The resulting state has no two-mode entanglement and B is
// separable from (AA'), yet A and A' are each entangled with the rest. Sending
// A' (or A) to Bob and mixing it with B on a second beam splitter entangles
// Alice's remaining mode with B.
//
// Mode order everywhere: (A, A', B) for three modes, (A, B) for the initial
// two-mode state.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gaussent/errors.hpp"
#include "gaussent/gaussian_ops.hpp"
#include "gaussent/params.hpp"
#include "gaussent/phase_space.hpp"
#include "gaussent/separability.hpp"

namespace gaussent {

namespace mode {
inline constexpr int A = 0;
inline constexpr int Aprime = 1;
inline constexpr int B = 2;
}  // namespace mode

/// Diagonal 2x2 blocks of the shared three-mode matrix
/// [[alpha, delta, tau], [delta, alpha, tau], [tau, tau, beta]].
struct BlockSet {
    Eigen::Matrix2d alpha;
    Eigen::Matrix2d beta;
    Eigen::Matrix2d tau;
    Eigen::Matrix2d delta;
};

inline BlockSet blocks(const ProtocolParams& p) {
    const double e2r = std::exp(2.0 * p.r);
    const double em2r = std::exp(-2.0 * p.r);
    const double noise = em2r * std::expm1(2.0 * p.epsilon);  // e^{-2r}(e^{2eps} - 1)
    auto diag = [](double a, double b) { return Eigen::Vector2d(a, b).asDiagonal().toDenseMatrix(); };
    BlockSet b;
    b.alpha = diag(2.0 + noise, e2r + 1.0) / 2.0;
    b.beta = diag(2.0 - em2r, 1.0);
    b.tau = diag(em2r - 1.0, 0.0) / std::numbers::sqrt2;
    b.delta = diag(noise, e2r - 1.0) / 2.0;
    return b;
}

namespace detail {

inline Matrix assemble(const std::array<std::array<Eigen::Matrix2d, 3>, 3>& blk) {
    Matrix g(6, 6);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) g.block<2, 2>(2 * a, 2 * b) = blk[a][b];
    }
    return g;
}

}  // namespace detail

/// Initial separable state of modes (A, B).
inline GaussianState initial_cm(const ProtocolParams& p) {
    const double em2r = std::exp(-2.0 * p.r);
    Matrix g = Matrix::Zero(4, 4);
    g(0, 0) = 1.0 + em2r * std::expm1(2.0 * p.epsilon);
    g(1, 1) = std::exp(2.0 * p.r);
    g(0, 2) = g(2, 0) = em2r - 1.0;
    g(2, 2) = 2.0 - em2r;
    g(3, 3) = 1.0;
    return GaussianState(CovarianceMatrix(g));
}

struct SharedState {
    GaussianState state;
    BlockSet blocks;
};

/// State after Alice splits A with a vacuum A'; modes (A, A', B).
inline SharedState shared_cm(const ProtocolParams& p) {
    const BlockSet b = blocks(p);
    const Matrix g = detail::assemble({{{b.alpha, b.delta, b.tau}, {b.delta, b.alpha, b.tau}, {b.tau, b.tau, b.beta}}});
    return {GaussianState(CovarianceMatrix(g)), b};
}

enum class FinalRoute {
    ViaAprime,  // A' sent to Bob and mixed with B
    ViaA,       // A sent to Bob and mixed with B
};

/// State after Bob's beam splitter; modes (A, A', B).
inline GaussianState final_cm(const ProtocolParams& p, FinalRoute route) {
    const BlockSet b = blocks(p);
    const double s2 = std::numbers::sqrt2;
    const Eigen::Matrix2d bright = (b.alpha + b.beta + 2.0 * b.tau) / 2.0;
    const Eigen::Matrix2d dark = (b.alpha + b.beta - 2.0 * b.tau) / 2.0;
    Matrix g;
    if (route == FinalRoute::ViaAprime) {
        const Eigen::Matrix2d c_aap = (b.tau - b.delta) / s2;
        const Eigen::Matrix2d c_ab = (b.tau + b.delta) / s2;
        const Eigen::Matrix2d c_apb = (b.beta - b.alpha) / 2.0;
        g = detail::assemble({{{b.alpha, c_aap, c_ab}, {c_aap, dark, c_apb}, {c_ab, c_apb, bright}}});
    } else {
        const Eigen::Matrix2d c_aap = (b.delta - b.tau) / s2;
        const Eigen::Matrix2d c_ab = (b.alpha - b.beta) / 2.0;
        const Eigen::Matrix2d c_apb = (b.delta + b.tau) / s2;
        g = detail::assemble({{{dark, c_aap, c_ab}, {c_aap, b.alpha, c_apb}, {c_ab, c_apb, bright}}});
    }
    return GaussianState(CovarianceMatrix(g));
}

/// Two-mode state Alice and Bob keep after the final step (the same for both
/// routes): [[alpha, (delta + tau)/sqrt2], [., (alpha + beta + 2 tau)/2]].
inline GaussianState final_pair_cm(const ProtocolParams& p) {
    const BlockSet b = blocks(p);
    Matrix g(4, 4);
    g.block<2, 2>(0, 0) = b.alpha;
    g.block<2, 2>(0, 2) = (b.delta + b.tau) / std::numbers::sqrt2;
    g.block<2, 2>(2, 0) = (b.delta + b.tau) / std::numbers::sqrt2;
    g.block<2, 2>(2, 2) = (b.alpha + b.beta + 2.0 * b.tau) / 2.0;
    return GaussianState(CovarianceMatrix(g));
}

// Pipeline constructions from the generic machinery. These are the reference
// the closed forms above are checked against.

inline GaussianState shared_pipeline(const ProtocolParams& p) {
    const GaussianState split_input = embed_vacuum(initial_cm(p), mode::Aprime);
    return apply_symplectic(split_input, beam_splitter(3, mode::A, mode::Aprime, BeamSplitterVariant::Plus));
}

inline GaussianState final_pipeline(const ProtocolParams& p, FinalRoute route) {
    const GaussianState shared = shared_pipeline(p);
    if (route == FinalRoute::ViaAprime) {
        return apply_symplectic(shared, beam_splitter(3, mode::B, mode::Aprime, BeamSplitterVariant::Plus));
    }
    return apply_symplectic(shared, beam_splitter(3, mode::A, mode::B, BeamSplitterVariant::Minus));
}

/// Modes Alice and Bob keep after the given final route.
inline std::vector<int> final_pair_modes(FinalRoute route) {
    return route == FinalRoute::ViaAprime ? std::vector<int>{mode::A, mode::B}
                                          : std::vector<int>{mode::Aprime, mode::B};
}

/// Lower PT symplectic eigenvalue of the final Alice-Bob pair.
inline double pair_mu(const ProtocolParams& p) { return two_mode_condition(final_pair_cm(p).cm()).mu; }

// Thresholds ---------------------------------------------------------------

/// Squeezing above which the final Alice-Bob pair is entangled. Written with
/// e^{2 eps} factored out of the logarithm so large eps does not overflow.
inline double threshold_r_e(double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
    const double k = 8.0 * std::numbers::sqrt2 - 1.0;
    const double inv_u = std::exp(-2.0 * epsilon);
    const double a = 11.0 + (8.0 * std::numbers::sqrt2 - 13.0) * inv_u;  // (11u + 8 sqrt2 - 13) / u
    const double root = std::sqrt(a * a + 4.0 * k * inv_u);
    return epsilon + 0.5 * std::log((a + root) / (2.0 * k));
}

/// Squeezing above which a Gaussian measurement on B can localize
/// entanglement between A and A'.
inline double threshold_r_m(double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
    // ln[u + sqrt(u(u - 1))] / 2 with u = e^{2 eps}
    return epsilon + 0.5 * std::log1p(std::sqrt(-std::expm1(-2.0 * epsilon)));
}

/// Coefficients of the depressed cubic whose root fixes the branch point of mu_m.
struct CubicCoefficients {
    double p;
    double q;
};

inline CubicCoefficients cubic_coefficients(double epsilon) {
    const double u = std::exp(2.0 * epsilon);
    return {1.0 / 6.0 - u, 5.0 / 54.0 + u / 6.0};
}

/// Branch point of mu_m: below it the homodyne-conditioned pair has lower PT
/// eigenvalue e^r, above it the noise-dependent branch.
inline double threshold_r_l(double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
    const auto [p, q] = cubic_coefficients(epsilon);
    double arg = -q / 2.0 * std::sqrt(-27.0 / (p * p * p));
    if (std::abs(arg) > 1.0) {
        if (std::abs(arg) - 1.0 > 1e-12) {
            throw Error(ErrorKind::DomainError, "arccos argument " + std::to_string(arg) + " outside [-1, 1]");
        }
        arg = std::clamp(arg, -1.0, 1.0);
    }
    const double root = 1.0 / 3.0 + 2.0 * std::sqrt(-p / 3.0) * std::cos(std::acos(arg) / 3.0);
    return 0.5 * std::log(root);
}

namespace detail {

// Square of the noise-dependent branch minus one, without cancellation near
// r = 0 where the branch touches 1 quadratically.
inline double mu_m_upper_excess(const ProtocolParams& p) {
    const double em2r = std::exp(-2.0 * p.r);
    const double c = std::expm1(-2.0 * p.r);
    return em2r * std::expm1(2.0 * p.epsilon) - c * c / (2.0 - em2r);
}

}  // namespace detail

/// The noise-dependent branch of mu_m.
inline double mu_m_upper_branch(const ProtocolParams& p) { return std::sqrt(1.0 + detail::mu_m_upper_excess(p)); }

/// Minimal lower PT symplectic eigenvalue of (A, A') over Gaussian
/// measurements on B.
inline double mu_m(const ProtocolParams& p) {
    if (p.r < threshold_r_l(p.epsilon)) return std::exp(p.r);
    return mu_m_upper_branch(p);
}

/// Bisection for the crossing of a predicate that is false at lo and true at
/// hi. Stops when the bracket is narrower than tol.
inline double bisect(const std::function<bool(double)>& crossed, double lo, double hi, double tol = 1e-10) {
    if (crossed(lo) || !crossed(hi)) {
        throw Error(ErrorKind::NumericalFailure, "bisection bracket does not contain a crossing");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (crossed(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

inline constexpr double kBisectLo = 0.0;
inline constexpr double kBisectHi = 5.0;

/// r_e located numerically as the onset of pair_mu < 1 on [0, 5]. At r = 0
/// the pair is a product state whose mu is 1 only up to rounding, so the
/// predicate asks for a drop below the boundary band.
inline double bisect_r_e(double epsilon) {
    return bisect([epsilon](double r) { return pair_mu({r, epsilon}) < 1.0 - kBoundaryTol; }, kBisectLo,
                  kBisectHi);
}

/// r_m located numerically as the onset of mu_m < 1 on [0, 5].
inline double bisect_r_m(double epsilon) {
    const double r_l = threshold_r_l(epsilon);
    return bisect([=](double r) { return r >= r_l && detail::mu_m_upper_excess({r, epsilon}) < 0.0; },
                  kBisectLo, kBisectHi);
}

struct ThresholdReport {
    double epsilon = 0.0;
    double r_l = 0.0;
    double r_e = 0.0;
    double r_m = 0.0;
    double gap = 0.0;  // r_m - r_e
    double p = 0.0;
    double q = 0.0;
};

inline ThresholdReport threshold_report(double epsilon) {
    ThresholdReport t;
    t.epsilon = epsilon;
    t.r_l = threshold_r_l(epsilon);
    t.r_e = threshold_r_e(epsilon);
    t.r_m = threshold_r_m(epsilon);
    t.gap = t.r_m - t.r_e;
    const auto c = cubic_coefficients(epsilon);
    t.p = c.p;
    t.q = c.q;
    return t;
}

inline std::vector<ThresholdReport> gap_profile(const std::vector<double>& epsilon_grid) {
    std::vector<ThresholdReport> out;
    out.reserve(epsilon_grid.size());
    for (double eps : epsilon_grid) out.push_back(threshold_report(eps));
    return out;
}

// Protocol stages ------------------------------------------------------------

enum class Stage { Initial, Shared, FinalViaAprime, FinalViaA };

constexpr std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::Initial: return "initial";
        case Stage::Shared: return "shared";
        case Stage::FinalViaAprime: return "final-via-aprime";
        case Stage::FinalViaA: return "final-via-a";
    }
    return "unknown";
}

inline Stage parse_stage(std::string_view name) {
    for (Stage s : {Stage::Initial, Stage::Shared, Stage::FinalViaAprime, Stage::FinalViaA}) {
        if (name == to_string(s)) return s;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown stage '" + std::string(name) + "'");
}

struct StageState {
    Stage stage;
    ProtocolParams params;
    GaussianState state;  // always three modes (A, A', B)
    SeparabilityReport report;
};

/// Three-mode state of a protocol stage with its separability report. The
/// initial stage is the initial (A, B) state with A' in vacuum.
inline StageState stage_state(const ProtocolParams& p, Stage stage) {
    auto make = [&](GaussianState s) {
        SeparabilityReport rep = classify_three_mode(s.cm());
        return StageState{stage, p, std::move(s), std::move(rep)};
    };
    switch (stage) {
        case Stage::Initial: return make(embed_vacuum(initial_cm(p), mode::Aprime));
        case Stage::Shared: return make(shared_cm(p).state);
        case Stage::FinalViaAprime: return make(final_cm(p, FinalRoute::ViaAprime));
        case Stage::FinalViaA: return make(final_cm(p, FinalRoute::ViaA));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown stage");
}

}  // namespace gaussent
