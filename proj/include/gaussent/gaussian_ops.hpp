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

// Gaussian unitaries (as symplectic matrices) and Gaussian measurements.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaussent/errors.hpp"
#include "gaussent/phase_space.hpp"

namespace gaussent {

/// Real 2n x 2n matrix S with S Omega S^T = Omega, checked on construction.
class SymplecticTransform {
  public:
    static constexpr double kTolerance = 1e-10;

    explicit SymplecticTransform(const Matrix& s) : s_(s) {
        detail::require_even_square(s_, "symplectic matrix");
        const Matrix omega = symplectic_form(n_modes());
        const double err = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
        if (!(err <= kTolerance)) {
            throw Error(ErrorKind::NotSymplectic,
                        "S Omega S^T deviates from Omega by " + std::to_string(err));
        }
    }

    static SymplecticTransform identity(int n_modes) {
        return SymplecticTransform(Matrix::Identity(2 * n_modes, 2 * n_modes));
    }

    int n_modes() const noexcept { return static_cast<int>(s_.rows() / 2); }
    const Matrix& matrix() const noexcept { return s_; }

    SymplecticTransform operator*(const SymplecticTransform& rhs) const {
        if (rhs.n_modes() != n_modes()) {
            throw Error(ErrorKind::DimensionMismatch, "composing transforms of different size");
        }
        return SymplecticTransform(s_ * rhs.s_);
    }

  private:
    Matrix s_;
};

/// g -> S g S^T, d -> S d.
inline GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s) {
    if (s.n_modes() != state.n_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "transform acts on " + std::to_string(s.n_modes()) + " modes, state has " +
                        std::to_string(state.n_modes()));
    }
    const Matrix& sm = s.matrix();
    Matrix g = sm * state.cm().matrix() * sm.transpose();
    g = (0.5 * (g + g.transpose())).eval();
    return GaussianState(CovarianceMatrix(g), sm * state.displacement());
}

enum class BeamSplitterVariant {
    Plus,   // (1/sqrt2) [[I, I], [I, -I]]
    Minus,  // (1/sqrt2) [[I, -I], [I, I]]
};

/// Balanced beam splitter between modes i and j of an n-mode system; identity
/// on every other mode.
inline SymplecticTransform beam_splitter(int n_modes, int i, int j, BeamSplitterVariant variant) {
    if (i == j) throw Error(ErrorKind::BadModeIndex, "beam splitter needs two distinct modes");
    detail::check_modes({i, j}, n_modes, true);
    const double h = 1.0 / std::sqrt(2.0);
    const double sign_ij = variant == BeamSplitterVariant::Plus ? 1.0 : -1.0;
    const double sign_jj = variant == BeamSplitterVariant::Plus ? -1.0 : 1.0;
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    for (int q = 0; q < 2; ++q) {
        s(2 * i + q, 2 * i + q) = h;
        s(2 * i + q, 2 * j + q) = sign_ij * h;
        s(2 * j + q, 2 * i + q) = h;
        s(2 * j + q, 2 * j + q) = sign_jj * h;
    }
    return SymplecticTransform(s);
}

/// Inserts a vacuum mode so that it becomes mode `position` of the result.
inline GaussianState embed_vacuum(const GaussianState& state, int position) {
    const int n = state.n_modes();
    if (position < 0 || position > n) {
        throw Error(ErrorKind::BadModeIndex, "vacuum slot " + std::to_string(position) + " out of range");
    }
    const int dim = 2 * (n + 1);
    // Map each old quadrature index to its new slot.
    auto slot = [position](int k) { return k / 2 < position ? k : k + 2; };
    Matrix g = Matrix::Identity(dim, dim);
    Vector d = Vector::Zero(dim);
    const Matrix& old = state.cm().matrix();
    for (int a = 0; a < 2 * n; ++a) {
        d(slot(a)) = state.displacement()(a);
        for (int b = 0; b < 2 * n; ++b) g(slot(a), slot(b)) = old(a, b);
    }
    return GaussianState(CovarianceMatrix(g), std::move(d));
}

/// A Gaussian measurement on one mode.
///
/// General measurements project onto a pure or mixed Gaussian state whose
/// covariance matrix is `seed`. Homodyne-x is the limit of seeds whose x
/// variance tends to zero, e.g. diag(t, 1/t) with t -> 0.
struct MeasurementSpec {
    enum class Kind { HomodyneX, HomodyneP, General };

    int mode = 0;
    Kind kind = Kind::HomodyneX;
    Eigen::Matrix2d seed = Eigen::Matrix2d::Identity();

    static MeasurementSpec homodyne_x(int mode) { return {mode, Kind::HomodyneX, Eigen::Matrix2d::Identity()}; }
    static MeasurementSpec homodyne_p(int mode) { return {mode, Kind::HomodyneP, Eigen::Matrix2d::Identity()}; }
    static MeasurementSpec general(int mode, const Eigen::Matrix2d& seed) {
        CovarianceMatrix checked{Matrix(seed)};
        return {mode, Kind::General, checked.matrix()};
    }
};

namespace detail {

inline Matrix pseudo_inverse(const Matrix& m, double cutoff) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vector inv = svd.singularValues();
    for (Eigen::Index k = 0; k < inv.size(); ++k) inv(k) = inv(k) > cutoff ? 1.0 / inv(k) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace detail

/// Covariance matrix of the unmeasured modes after measuring `spec.mode`.
///
/// With the state split as [[A, C], [C^T, B]] around the measured mode, a
/// general measurement gives A - C (B + seed)^-1 C^T and homodyne gives
/// A - C P (P B P)^+ P C^T with P the quadrature projector. The result does
/// not depend on the outcome; the returned displacement is the prior mean of
/// the unmeasured modes, i.e. the outcome-averaged one.
inline GaussianState condition_on_measurement(const GaussianState& state, const MeasurementSpec& spec) {
    const int n = state.n_modes();
    if (n < 2) throw Error(ErrorKind::DimensionMismatch, "need at least two modes to condition");
    detail::check_modes({spec.mode}, n, true);

    std::vector<int> kept;
    for (int k = 0; k < n; ++k) {
        if (k != spec.mode) kept.push_back(k);
    }
    const Matrix& g = state.cm().matrix();
    const Matrix a = reduce(g, kept);
    const Eigen::Matrix2d b = g.block<2, 2>(2 * spec.mode, 2 * spec.mode);
    Matrix c(a.rows(), 2);
    for (std::size_t r = 0; r < kept.size(); ++r) {
        c.block<2, 2>(2 * static_cast<int>(r), 0) = g.block<2, 2>(2 * kept[r], 2 * spec.mode);
    }

    Matrix gain;
    switch (spec.kind) {
        case MeasurementSpec::Kind::General: {
            const Matrix sum = b + spec.seed;
            Eigen::JacobiSVD<Matrix> svd(sum);
            const auto& sv = svd.singularValues();
            if (!(sv(1) > 1e-12 * sv(0))) {
                throw Error(ErrorKind::SingularConditioning, "B + seed is numerically singular");
            }
            gain = sum.inverse();
            break;
        }
        case MeasurementSpec::Kind::HomodyneX:
        case MeasurementSpec::Kind::HomodyneP: {
            Eigen::Matrix2d proj = Eigen::Matrix2d::Zero();
            const int q = spec.kind == MeasurementSpec::Kind::HomodyneX ? 0 : 1;
            proj(q, q) = 1.0;
            gain = proj * detail::pseudo_inverse(proj * b * proj, 1e-12) * proj;
            break;
        }
    }
    Matrix out = a - c * gain * c.transpose();
    out = (0.5 * (out + out.transpose())).eval();

    Vector d(out.rows());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        d.segment<2>(2 * static_cast<int>(r)) = state.displacement().segment<2>(2 * kept[r]);
    }
    return GaussianState(CovarianceMatrix(out), std::move(d));
}

}  // namespace gaussent
