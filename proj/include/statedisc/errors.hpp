// Copyright 2026 The statedisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace statedisc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerics / linear algebra
struct EmptyInput : Error { using Error::Error; };
struct AllDegenerate : Error { using Error::Error; };
struct NotOrthonormal : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroState : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };

// States / ensembles
struct SiteCountMismatch : Error { using Error::Error; };
struct InvalidPrior : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// Roll-up protocols
struct DegenerateInput : Error { using Error::Error; };
struct TooLargeForFullMode : Error { using Error::Error; };
struct CompactModeHasNoGlobalState : Error { using Error::Error; };
struct SchmidtRankOverflow : Error { using Error::Error; };
struct NormMismatch : Error { using Error::Error; };

// Discrimination
struct LabelMismatch : Error { using Error::Error; };
struct IdenticalStates : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };

// CLI / scenarios
struct SchemaError : Error { using Error::Error; };
struct GuardError : Error { using Error::Error; };

}  // namespace statedisc
