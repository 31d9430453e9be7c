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

// Phase-space representation of Gaussian states.
//
// Conventions used throughout the library:
//   * quadratures are ordered (x1, p1, x2, p2, ...);
//   * the vacuum covariance matrix is the identity, i.e. entries are
//     <{xi_i - d_i, xi_j - d_j}> with [x, p] = i;
//   * a state is physical iff every symplectic eigenvalue is >= 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaussent/errors.hpp"

namespace gaussent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kPhysicalTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-12;

namespace detail {

inline double max_asymmetry(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

inline void require_even_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " must be a non-empty square matrix of even dimension, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_symmetric(const Matrix& m) {
    const double asym = max_asymmetry(m);
    if (!(asym < kSymmetryTol)) {
        throw Error(ErrorKind::NotSymmetric,
                    "matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
    }
}

inline void check_modes(const std::vector<int>& modes, int n_modes, bool require_nonempty) {
    if (require_nonempty && modes.empty()) {
        throw Error(ErrorKind::BadModeIndex, "mode list is empty");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_modes), false);
    for (int k : modes) {
        if (k < 0 || k >= n_modes) {
            throw Error(ErrorKind::BadModeIndex,
                        "mode index " + std::to_string(k) + " out of range for " +
                            std::to_string(n_modes) + " modes");
        }
        if (seen[static_cast<std::size_t>(k)]) {
            throw Error(ErrorKind::BadModeIndex, "mode index " + std::to_string(k) + " repeated");
        }
        seen[static_cast<std::size_t>(k)] = true;
    }
}

}  // namespace detail

/// Block-diagonal symplectic form with blocks [[0, 1], [-1, 0]].
struct SymplecticForm {
    int n_modes;
    Matrix matrix;

    explicit SymplecticForm(int n) : n_modes(n), matrix(Matrix::Zero(2 * n, 2 * n)) {
        for (int k = 0; k < n; ++k) {
            matrix(2 * k, 2 * k + 1) = 1.0;
            matrix(2 * k + 1, 2 * k) = -1.0;
        }
    }
};

inline Matrix symplectic_form(int n_modes) { return SymplecticForm(n_modes).matrix; }

/// Symplectic spectrum of a real symmetric 2n x 2n matrix, ascending.
///
/// Physicality is not required, so the function can be applied to partial
/// transposes. Positive-definite inputs go through the symmetric problem
/// L^T Omega^T m Omega L (with m = L L^T), which is similar to -(Omega m)^2
/// and has eigenvalues nu_k^2, each twice. Indefinite inputs fall back to the
/// moduli of the eigenvalues of Omega m, which also come in +/- pairs.
inline std::vector<double> symplectic_eigenvalues(const Matrix& m) {
    detail::require_even_square(m, "covariance matrix");
    detail::require_symmetric(m);
    const int dim = static_cast<int>(m.rows());
    const int n = dim / 2;
    const Matrix omega = symplectic_form(n);
    const Matrix sym = 0.5 * (m + m.transpose());

    std::vector<double> doubled(static_cast<std::size_t>(dim));
    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() == Eigen::Success) {
        const Matrix lower = llt.matrixL();
        Matrix k = lower.transpose() * omega.transpose() * sym * omega * lower;
        k = (0.5 * (k + k.transpose())).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(k, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw Error(ErrorKind::NumericalFailure, "symmetric eigensolver did not converge");
        }
        for (int i = 0; i < dim; ++i) {
            doubled[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
        }
    } else {
        Eigen::EigenSolver<Matrix> es(omega * sym, false);
        if (es.info() != Eigen::Success) {
            throw Error(ErrorKind::NumericalFailure, "eigensolver did not converge");
        }
        for (int i = 0; i < dim; ++i) {
            doubled[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
        }
    }
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> nu(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        nu[static_cast<std::size_t>(k)] =
            0.5 * (doubled[static_cast<std::size_t>(2 * k)] + doubled[static_cast<std::size_t>(2 * k + 1)]);
    }
    return nu;
}

/// A validated covariance matrix: symmetric and satisfying the uncertainty
/// principle. Construction through validate_cm() or the checking constructor.
class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(const Matrix& m);

    static CovarianceMatrix vacuum(int n_modes) { return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes)); }

    int n_modes() const noexcept { return static_cast<int>(m_.rows() / 2); }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    /// 2x2 block coupling modes a and b.
    Eigen::Matrix2d block(int a, int b) const { return m_.block<2, 2>(2 * a, 2 * b); }

  private:
    Matrix m_;
};

/// Checks symmetry and physicality. Asymmetry below kSymmetryTol is removed by
/// symmetrization; a smallest symplectic eigenvalue below 1 - kPhysicalTol
/// raises UnphysicalError carrying that eigenvalue.
inline CovarianceMatrix validate_cm(const Matrix& m) { return CovarianceMatrix(m); }

inline CovarianceMatrix::CovarianceMatrix(const Matrix& m) {
    detail::require_even_square(m, "covariance matrix");
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "covariance matrix has non-finite entries");
    }
    detail::require_symmetric(m);
    m_ = 0.5 * (m + m.transpose());
    const double nu_min = symplectic_eigenvalues(m_).front();
    if (nu_min < 1.0 - kPhysicalTol) {
        throw UnphysicalError(nu_min, "smallest symplectic eigenvalue " + std::to_string(nu_min) +
                                          " is below 1");
    }
}

/// Covariance matrix plus first moments d = <xi>.
class GaussianState {
  public:
    explicit GaussianState(CovarianceMatrix cm) : cm_(std::move(cm)), d_(Vector::Zero(cm_.dim())) {}

    GaussianState(CovarianceMatrix cm, Vector displacement) : cm_(std::move(cm)), d_(std::move(displacement)) {
        if (d_.size() != cm_.dim()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "displacement has length " + std::to_string(d_.size()) + ", expected " +
                            std::to_string(cm_.dim()));
        }
    }

    static GaussianState vacuum(int n_modes) { return GaussianState(CovarianceMatrix::vacuum(n_modes)); }

    int n_modes() const noexcept { return cm_.n_modes(); }
    const CovarianceMatrix& cm() const noexcept { return cm_; }
    const Vector& displacement() const noexcept { return d_; }

  private:
    CovarianceMatrix cm_;
    Vector d_;
};

/// Coefficients of det(Omega g - q I) = q^6 + i1 q^4 + i2 q^2 + i3 for a
/// three-mode matrix g. The vacuum gives (q^2 + 1)^3, i.e. (3, 3, 1).
struct InvariantTriple {
    double i1;
    double i2;
    double i3;

    /// I3 - I2 + I1 - 1, the product of (nu_k^2 - 1) over the symplectic spectrum.
    double sigma() const noexcept { return i3 - i2 + i1 - 1.0; }
};

/// Lambda g Lambda^T with Lambda flipping the momentum of each listed mode.
inline Matrix partial_transpose(const Matrix& m, const std::vector<int>& modes) {
    detail::require_even_square(m, "covariance matrix");
    detail::check_modes(modes, static_cast<int>(m.rows() / 2), true);
    Matrix out = m;
    for (int k : modes) {
        out.row(2 * k + 1) *= -1.0;
        out.col(2 * k + 1) *= -1.0;
    }
    return out;
}

inline Matrix partial_transpose(const CovarianceMatrix& cm, const std::vector<int>& modes) {
    return partial_transpose(cm.matrix(), modes);
}

namespace detail {

/// Sum of all k x k principal minors of m (the k-th elementary symmetric
/// function of its eigenvalues).
inline double principal_minor_sum(const Matrix& m, int k) {
    const int dim = static_cast<int>(m.rows());
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    double total = 0.0;
    Matrix sub(k, k);
    while (true) {
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                sub(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            }
        }
        total += sub.determinant();
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return total;
}

}  // namespace detail

/// Symplectic invariants of a (partially transposed) three-mode matrix.
/// I1 and I2 are the 2x2 and 4x4 principal-minor sums of Omega g, I3 = det g.
inline InvariantTriple char_poly_invariants(const Matrix& pt) {
    if (pt.rows() != 6 || pt.cols() != 6) {
        throw Error(ErrorKind::DimensionMismatch, "invariant triple needs a 6x6 matrix");
    }
    const Matrix m = symplectic_form(3) * pt;
    return InvariantTriple{detail::principal_minor_sum(m, 2), detail::principal_minor_sum(m, 4),
                           pt.determinant()};
}

/// Principal submatrix on the given modes, in the given order.
inline Matrix reduce(const Matrix& m, const std::vector<int>& modes) {
    detail::require_even_square(m, "covariance matrix");
    detail::check_modes(modes, static_cast<int>(m.rows() / 2), true);
    const int k = static_cast<int>(modes.size());
    Matrix out(2 * k, 2 * k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            out.block<2, 2>(2 * a, 2 * b) =
                m.block<2, 2>(2 * modes[static_cast<std::size_t>(a)], 2 * modes[static_cast<std::size_t>(b)]);
        }
    }
    return out;
}

inline CovarianceMatrix reduce(const CovarianceMatrix& cm, const std::vector<int>& modes) {
    return CovarianceMatrix(reduce(cm.matrix(), modes));
}

inline GaussianState reduce(const GaussianState& state, const std::vector<int>& modes) {
    CovarianceMatrix cm = reduce(state.cm(), modes);
    Vector d(cm.dim());
    for (std::size_t a = 0; a < modes.size(); ++a) {
        d.segment<2>(2 * static_cast<int>(a)) = state.displacement().segment<2>(2 * modes[a]);
    }
    return GaussianState(std::move(cm), std::move(d));
}

/// True iff the normally ordered matrix g - I is positive semidefinite, so the
/// state has a non-singular Glauber-Sudarshan representation.
inline bool is_classical(const CovarianceMatrix& cm) {
    const Matrix normal = cm.matrix() - Matrix::Identity(cm.dim(), cm.dim());
    Eigen::SelfAdjointEigenSolver<Matrix> es(normal, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -kPhysicalTol;
}

}  // namespace gaussent
