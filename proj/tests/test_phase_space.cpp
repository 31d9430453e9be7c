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

#include "gaussent/phase_space.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace gaussent;
using gaussent::testing::Rng;

namespace {

Matrix diag(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v.asDiagonal();
}

}  // namespace

TEST(ValidateCm, vacuum_is_valid) {
    const auto cm = validate_cm(Matrix::Identity(6, 6));
    EXPECT_EQ(cm.n_modes(), 3);
    EXPECT_EQ(cm.matrix(), Matrix::Identity(6, 6));
}

TEST(ValidateCm, sub_vacuum_is_unphysical) {
    try {
        validate_cm(diag({0.5, 0.5}));
        FAIL() << "expected UnphysicalError";
    } catch (const UnphysicalError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unphysical);
        EXPECT_NEAR(e.eigenvalue(), 0.5, 1e-12);
    }
}

TEST(ValidateCm, initial_protocol_state_is_valid) {
    const Matrix g = gaussent::testing::initial_matrix_literal(0.3, 0.1);
    for (double nu : gaussent::testing::symplectic_spectrum_oracle(g)) EXPECT_GE(nu, 1.0 - 1e-12);
    EXPECT_NO_THROW(validate_cm(g));
}

TEST(ValidateCm, rejects_asymmetric_and_badly_shaped) {
    Matrix g = Matrix::Identity(4, 4);
    g(0, 2) = 1e-3;
    try {
        validate_cm(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
    }
    try {
        validate_cm(Matrix::Identity(3, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(ValidateCm, tiny_asymmetry_is_symmetrized) {
    Matrix g = 2.0 * Matrix::Identity(4, 4);
    g(0, 2) = 0.1;
    g(2, 0) = 0.1 + 1e-12;
    const auto cm = validate_cm(g);
    EXPECT_EQ(cm(0, 2), cm(2, 0));
}

TEST(SymplecticEigenvalues, trivial_cases) {
    for (double nu : symplectic_eigenvalues(Matrix::Identity(6, 6))) EXPECT_NEAR(nu, 1.0, 1e-14);
    const auto single = symplectic_eigenvalues(diag({4.0, 1.0}));
    ASSERT_EQ(single.size(), 1u);
    EXPECT_NEAR(single[0], 2.0, 1e-14);
}

TEST(SymplecticEigenvalues, two_mode_squeezed_vacuum_is_pure) {
    const Matrix g = gaussent::testing::two_mode_squeezed_vacuum(0.5);
    const auto oracle = gaussent::testing::symplectic_spectrum_oracle(g);
    const auto nu = symplectic_eigenvalues(g);
    ASSERT_EQ(nu.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(nu[k], 1.0, 1e-12);
        EXPECT_NEAR(nu[k], oracle[k], 1e-12);
    }
}

TEST(SymplecticEigenvalues, matches_williamson_construction) {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const auto sample = gaussent::testing::random_physical(rng, n);
        const auto nu = symplectic_eigenvalues(sample.cm);
        ASSERT_EQ(nu.size(), static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(nu[k], sample.nu[k], 1e-8 * sample.nu[k]);
            EXPECT_GE(nu[k], 1.0 - 1e-9);
        }
    }
}

TEST(SymplecticEigenvalues, pure_states_have_unit_spectrum) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto sample = gaussent::testing::random_physical(rng, 3, /*pure=*/true);
        ASSERT_LT(std::abs(sample.cm.determinant() - 1.0), 1e-9);
        for (double nu : symplectic_eigenvalues(sample.cm)) EXPECT_NEAR(nu, 1.0, 1e-8);
    }
}

TEST(SymplecticEigenvalues, indefinite_input_matches_oracle) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = gaussent::testing::random_symmetric(rng, 6);
        const auto nu = symplectic_eigenvalues(m);
        const auto oracle = gaussent::testing::symplectic_spectrum_oracle(m);
        for (std::size_t k = 0; k < nu.size(); ++k) EXPECT_NEAR(nu[k], oracle[k], 1e-8 * std::max(1.0, oracle[k]));
    }
}

TEST(PartialTranspose, vacuum_is_unchanged) {
    EXPECT_EQ(partial_transpose(Matrix::Identity(6, 6), {0, 2}), Matrix::Identity(6, 6));
}

TEST(PartialTranspose, is_an_involution) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = gaussent::testing::random_symmetric(rng, 6, 5.0);
        for (const std::vector<int>& modes : {std::vector<int>{0}, {1}, {2}, {0, 2}, {0, 1, 2}}) {
            EXPECT_EQ(partial_transpose(partial_transpose(m, modes), modes), m);
        }
    }
}

TEST(PartialTranspose, bad_modes) {
    for (const std::vector<int>& modes : {std::vector<int>{}, {3}, {-1}, {1, 1}}) {
        try {
            partial_transpose(Matrix::Identity(6, 6), modes);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::BadModeIndex);
        }
    }
}

TEST(PartialTranspose, shared_state_on_A_has_sub_unit_eigenvalue) {
    const Matrix g = gaussent::testing::shared_matrix_literal(0.3, 0.1);
    EXPECT_LT(symplectic_eigenvalues(partial_transpose(g, {0})).front(), 1.0);
    EXPECT_GE(symplectic_eigenvalues(partial_transpose(g, {2})).front(), 1.0 - 1e-9);
}

TEST(CharPolyInvariants, vacuum_expands_to_cube) {
    // det(Omega - q I) = (q^2 + 1)^3 = q^6 + 3 q^4 + 3 q^2 + 1.
    const auto inv = char_poly_invariants(Matrix::Identity(6, 6));
    EXPECT_NEAR(inv.i1, 3.0, 1e-14);
    EXPECT_NEAR(inv.i2, 3.0, 1e-14);
    EXPECT_NEAR(inv.i3, 1.0, 1e-14);
    EXPECT_NEAR(inv.sigma(), 0.0, 1e-14);
}

TEST(CharPolyInvariants, reproduce_determinant_polynomial) {
    Rng rng(19);
    const Matrix w = gaussent::testing::omega(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix g = partial_transpose(gaussent::testing::random_physical(rng, 3).cm, {trial % 3});
        const auto inv = char_poly_invariants(g);
        EXPECT_NEAR(inv.i3, g.determinant(), 1e-9 * std::abs(g.determinant()));
        for (double q : {-1.7, -0.3, 0.5, 2.0}) {
            const double direct = (w * g - q * Matrix::Identity(6, 6)).determinant();
            const double q2 = q * q;
            const double poly = q2 * q2 * q2 + inv.i1 * q2 * q2 + inv.i2 * q2 + inv.i3;
            EXPECT_NEAR(poly, direct, 1e-8 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(CharPolyInvariants, vanish_at_numeric_eigenvalues) {
    Rng rng(23);
    const Matrix w = gaussent::testing::omega(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Matrix g = partial_transpose(gaussent::testing::random_symmetric(rng, 6, 2.0), {trial % 3});
        const auto inv = char_poly_invariants(g);
        Eigen::EigenSolver<Matrix> es(w * g, false);
        for (Eigen::Index k = 0; k < 6; ++k) {
            const std::complex<double> q = es.eigenvalues()(k);
            const std::complex<double> q2 = q * q;
            const std::complex<double> value = q2 * q2 * q2 + inv.i1 * q2 * q2 + inv.i2 * q2 + inv.i3;
            EXPECT_LE(std::abs(value), 1e-6 * std::max(1.0, std::pow(std::abs(q), 6)));
        }
    }
}

TEST(CharPolyInvariants, shared_state_sigma_matches_closed_form) {
    const Matrix g = gaussent::testing::shared_matrix_literal(0.3, 0.1);
    const auto inv = char_poly_invariants(partial_transpose(g, {0}));
    const double expected = gaussent::testing::sigma_shared_closed_form(0.3, 0.1);
    EXPECT_NEAR(expected, -0.1222883292, 1e-9);
    EXPECT_NEAR(inv.sigma(), expected, 1e-9);
}

TEST(CharPolyInvariants, shape_mismatch) {
    EXPECT_THROW(char_poly_invariants(Matrix::Identity(4, 4)), Error);
}

TEST(Reduce, vacuum_single_mode) {
    EXPECT_EQ(reduce(CovarianceMatrix::vacuum(3), {0}).matrix(), Matrix::Identity(2, 2));
}

TEST(Reduce, picks_blocks_in_given_order) {
    Rng rng(2);
    const Matrix g = gaussent::testing::random_physical(rng, 3).cm;
    const Matrix sub = reduce(g, {2, 0});
    EXPECT_EQ(Matrix(sub.block(0, 0, 2, 2)), Matrix(g.block(4, 4, 2, 2)));
    EXPECT_EQ(Matrix(sub.block(0, 2, 2, 2)), Matrix(g.block(4, 0, 2, 2)));
    EXPECT_EQ(Matrix(sub.block(2, 2, 2, 2)), Matrix(g.block(0, 0, 2, 2)));
}

TEST(Reduce, shared_state_mode_A_is_alpha) {
    const double r = 0.3, eps = 0.1;
    const auto cm = validate_cm(gaussent::testing::shared_matrix_literal(r, eps));
    const Matrix alpha = reduce(cm, {0}).matrix();
    EXPECT_NEAR(alpha(0, 0), (2.0 + std::exp(-2 * r) * (std::exp(2 * eps) - 1.0)) / 2.0, 1e-15);
    EXPECT_NEAR(alpha(1, 1), (std::exp(2 * r) + 1.0) / 2.0, 1e-15);
    EXPECT_EQ(alpha(0, 1), 0.0);
}

TEST(Reduce, bad_modes) {
    EXPECT_THROW(reduce(CovarianceMatrix::vacuum(2), {0, 0}), Error);
    EXPECT_THROW(reduce(CovarianceMatrix::vacuum(2), {2}), Error);
}

TEST(IsClassical, examples) {
    EXPECT_TRUE(is_classical(CovarianceMatrix::vacuum(2)));
    EXPECT_FALSE(is_classical(validate_cm(diag({std::exp(-0.4), std::exp(0.6)}))));
    const double r = 0.3, eps = 0.1;
    EXPECT_TRUE(is_classical(validate_cm(diag({1.0 + std::exp(-2 * r) * (std::exp(2 * eps) - 1.0), std::exp(2 * r)}))));
}

TEST(GaussianState, displacement_length_checked) {
    EXPECT_THROW(GaussianState(CovarianceMatrix::vacuum(2), Vector::Zero(3)), Error);
    const GaussianState s = GaussianState::vacuum(2);
    EXPECT_EQ(s.displacement().size(), 4);
}

TEST(SymplecticForm, antisymmetric_and_squares_to_minus_identity) {
    const SymplecticForm w(3);
    EXPECT_EQ(w.matrix.transpose(), -w.matrix);
    EXPECT_EQ(w.matrix * w.matrix, -Matrix::Identity(6, 6));
}
