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

#include "gaussent/errors.hpp"
#include "gaussent/gaussian_ops.hpp"
#include "gaussent/params.hpp"
#include "gaussent/phase_space.hpp"
#include "gaussent/protocol.hpp"
#include "gaussent/sampling.hpp"
#include "gaussent/separability.hpp"
