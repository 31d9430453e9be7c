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

// Monte Carlo check of the correlated-displacement preparation.
//
// Random stream layout (fixed, so a batch is reproducible from (seed, count)):
//   * samples are split into chunks of kChunkSize, in order;
//   * chunk k draws from std::mt19937_64 seeded with
//     std::seed_seq{seed_lo32, seed_hi32, k_lo32, k_hi32};
//   * each sample draws, in order, one standard normal per phase-space
//     quadrature (std::normal_distribution<double>) followed by one for the
//     classical displacement;
//   * chunk sums are merged in chunk order.
// Output is therefore independent of the number of worker threads. Bit-level
// identity across different C++ standard libraries is not guaranteed because
// std::normal_distribution is implementation-defined.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "gaussent/errors.hpp"
#include "gaussent/params.hpp"
#include "gaussent/phase_space.hpp"

namespace gaussent {

struct SampleBatch {
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    Matrix empirical_cm;  // 2 x sample covariance; symmetric, not necessarily physical
    Vector empirical_mean;
};

inline constexpr std::int64_t kChunkSize = 1 << 16;

/// Worker count from GAUSSENT_THREADS, else the hardware concurrency.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("GAUSSENT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Factor L with L L^T = cov. Cholesky first; symmetric eigendecomposition
/// (negative eigenvalues clipped) when cov is only semidefinite.
inline Matrix sampling_factor(const Matrix& cov) {
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal();
}

namespace detail {

struct ChunkMoments {
    std::int64_t n = 0;
    Vector sum;
    Matrix outer;
};

inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace detail

/// Draws `count` phase-space points of mode A (CM diag(e^{-2(r-eps)}, e^{2r}))
/// and vacuum mode B, each quadrature with variance CM entry / 2, then applies
/// x_A += xbar, x_B -= xbar with <xbar^2> = (1 - e^{-2r}) / 2.
inline SampleBatch sample_preparation(const ProtocolParams& params, std::int64_t count, std::uint64_t seed,
                                      unsigned threads = 0) {
    if (count < 2) throw Error(ErrorKind::BadCount, "need at least 2 samples, got " + std::to_string(count));
    if (threads == 0) threads = default_thread_count();

    const double r = params.r;
    const double eps = params.epsilon;
    Matrix product = Matrix::Zero(4, 4);
    product.diagonal() << std::exp(-2.0 * (r - eps)), std::exp(2.0 * r), 1.0, 1.0;
    const Matrix factor = sampling_factor(0.5 * product);
    const double xbar_sd = std::sqrt(0.5 * (1.0 - std::exp(-2.0 * r)));

    const std::int64_t n_chunks = (count + kChunkSize - 1) / kChunkSize;
    std::vector<detail::ChunkMoments> moments(static_cast<std::size_t>(n_chunks));

    auto run_chunk = [&](std::int64_t k) {
        auto engine = detail::chunk_engine(seed, static_cast<std::uint64_t>(k));
        std::normal_distribution<double> normal(0.0, 1.0);
        const std::int64_t begin = k * kChunkSize;
        const std::int64_t end = std::min(count, begin + kChunkSize);
        detail::ChunkMoments m{end - begin, Vector::Zero(4), Matrix::Zero(4, 4)};
        Eigen::Vector4d z;
        Eigen::Vector4d xi;
        for (std::int64_t s = begin; s < end; ++s) {
            for (int q = 0; q < 4; ++q) z(q) = normal(engine);
            const double xbar = xbar_sd * normal(engine);
            xi = factor * z;
            xi(0) += xbar;
            xi(2) -= xbar;
            m.sum += xi;
            m.outer.noalias() += xi * xi.transpose();
        }
        moments[static_cast<std::size_t>(k)] = std::move(m);
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(threads, n_chunks));
    if (workers <= 1) {
        for (std::int64_t k = 0; k < n_chunks; ++k) run_chunk(k);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t k = next++; k < n_chunks; k = next++) run_chunk(k);
            });
        }
        for (auto& t : pool) t.join();
    }

    Vector sum = Vector::Zero(4);
    Matrix outer = Matrix::Zero(4, 4);
    for (const auto& m : moments) {
        sum += m.sum;
        outer += m.outer;
    }
    const double n = static_cast<double>(count);
    SampleBatch batch;
    batch.count = count;
    batch.seed = seed;
    batch.empirical_mean = sum / n;
    Matrix cov = (outer - n * batch.empirical_mean * batch.empirical_mean.transpose()) / (n - 1.0);
    batch.empirical_cm = cov + cov.transpose();
    return batch;
}

}  // namespace gaussent
