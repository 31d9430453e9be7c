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

// JSON documents.
//
// Covariance-matrix file:
//   { "n_modes": n, "cm": [2n*2n numbers, row-major], "displacement": [2n numbers] (optional) }
// Every floating-point value written by this header is rounded to 12
// significant digits first.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gaussent/errors.hpp"
#include "gaussent/phase_space.hpp"
#include "gaussent/protocol.hpp"
#include "gaussent/sampling.hpp"
#include "gaussent/separability.hpp"

namespace gaussent::io {

using json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

/// x rounded to 12 significant digits; the JSON writer then prints the
/// shortest representation of that value.
inline double round_sig(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    return std::strtod(buf, nullptr);
}

inline json number(double x) { return json(round_sig(x)); }

inline json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json row_major(const Matrix& m) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(number(m(i, j)));
    }
    return flat;
}

inline json vector_values(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

// Covariance-matrix files ------------------------------------------------------

inline GaussianState state_from_json(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorKind::InvalidArgument, "CM document must be a JSON object");
    if (!doc.contains("n_modes") || !doc["n_modes"].is_number_integer()) {
        throw Error(ErrorKind::InvalidArgument, "field 'n_modes' missing or not an integer");
    }
    const int n = doc["n_modes"].get<int>();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "'n_modes' must be positive");
    const int dim = 2 * n;
    if (!doc.contains("cm") || !doc["cm"].is_array()) {
        throw Error(ErrorKind::InvalidArgument, "field 'cm' missing or not an array");
    }
    const json& flat = doc["cm"];
    if (flat.size() != static_cast<std::size_t>(dim * dim)) {
        throw Error(ErrorKind::DimensionMismatch, "'cm' has " + std::to_string(flat.size()) + " entries, expected " +
                                                      std::to_string(dim * dim));
    }
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const json& v = flat[static_cast<std::size_t>(i * dim + j)];
            if (!v.is_number()) throw Error(ErrorKind::InvalidArgument, "'cm' entries must be numbers");
            m(i, j) = v.get<double>();
        }
    }
    CovarianceMatrix cm = validate_cm(m);
    if (!doc.contains("displacement")) return GaussianState(std::move(cm));
    const json& jd = doc["displacement"];
    if (!jd.is_array() || jd.size() != static_cast<std::size_t>(dim)) {
        throw Error(ErrorKind::DimensionMismatch, "'displacement' must be an array of " + std::to_string(dim) + " numbers");
    }
    Vector d(dim);
    for (int i = 0; i < dim; ++i) {
        if (!jd[static_cast<std::size_t>(i)].is_number()) {
            throw Error(ErrorKind::InvalidArgument, "'displacement' entries must be numbers");
        }
        d(i) = jd[static_cast<std::size_t>(i)].get<double>();
    }
    return GaussianState(std::move(cm), std::move(d));
}

inline json to_json(const GaussianState& state) {
    return json{{"n_modes", state.n_modes()},
                {"cm", row_major(state.cm().matrix())},
                {"displacement", vector_values(state.displacement())}};
}

inline GaussianState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
    }
    return state_from_json(doc);
}

// Reports ------------------------------------------------------------------------

inline json to_json(const SplittingVerdict& v) {
    return json{{"splitting", v.splitting},
                {"mode", v.mode},
                {"sigma", number(v.sigma)},
                {"pt_mu", number(v.pt_mu)},
                {"entangled", v.entangled},
                {"boundary", v.boundary}};
}

inline json to_json(const EntanglementMetrics& m) {
    return json{{"mu", number(m.mu)},
                {"log_negativity", number(m.log_negativity)},
                {"delta_tilde", number(m.delta_tilde)},
                {"ppt_condition_value", number(m.ppt_condition_value)},
                {"entangled", m.entangled},
                {"boundary", m.boundary}};
}

inline json to_json(const SeparabilityReport& r) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    json pairwise = json::array();
    for (const auto& p : r.pairwise) {
        json entry = to_json(p.metrics);
        entry["pair"] = p.pair;
        entry["modes"] = json::array({p.first, p.second});
        pairwise.push_back(std::move(entry));
    }
    json out{{"verdicts", std::move(verdicts)}, {"pairwise", std::move(pairwise)}, {"class", std::string(to_string(r.class_label))}};
    out["splitting"] = r.distinguished_splitting.empty() ? json(nullptr) : json(r.distinguished_splitting);
    return out;
}

inline json to_json(const ThresholdReport& t) {
    return json{{"epsilon", number(t.epsilon)}, {"r_l", number(t.r_l)}, {"r_e", number(t.r_e)},
                {"r_m", number(t.r_m)},         {"gap", number(t.gap)}, {"p", number(t.p)},
                {"q", number(t.q)}};
}

inline json to_json(const StageState& s) {
    return json{{"stage", std::string(to_string(s.stage))},
                {"r", number(s.params.r)},
                {"epsilon", number(s.params.epsilon)},
                {"modes", json::array({"A", "A′", "B"})},
                {"state", to_json(s.state)},
                {"report", to_json(s.report)}};
}

/// Monte Carlo batch next to the closed-form matrix it estimates.
inline json to_json(const SampleBatch& b, const Matrix& analytic_cm) {
    return json{{"count", b.count},
                {"seed", b.seed},
                {"empirical_mean", vector_values(b.empirical_mean)},
                {"empirical_cm", matrix_rows(b.empirical_cm)},
                {"analytic_cm", matrix_rows(analytic_cm)},
                {"max_abs_dev", number((b.empirical_cm - analytic_cm).cwiseAbs().maxCoeff())}};
}

}  // namespace gaussent::io
