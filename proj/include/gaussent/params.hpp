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

#pragma once

#include <cmath>
#include <string>

#include "gaussent/errors.hpp"

namespace gaussent {

/// Squeezing r and noise epsilon of the sharing protocol, both dimensionless.
struct ProtocolParams {
    double r = 0.0;
    double epsilon = 0.0;

    ProtocolParams() = default;
    ProtocolParams(double r_, double epsilon_) : r(r_), epsilon(epsilon_) {
        if (!(std::isfinite(r) && r >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "squeezing r must be finite and >= 0, got " + std::to_string(r));
        }
        if (!(std::isfinite(epsilon) && epsilon >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument,
                        "noise epsilon must be finite and >= 0, got " + std::to_string(epsilon));
        }
    }
};

}  // namespace gaussent
