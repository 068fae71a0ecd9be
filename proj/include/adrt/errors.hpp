// Copyright 2026 The adrt Authors
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

namespace adrt {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimensions violate the 2^n x 2^n contract (non-square, not a power of two).
struct DimensionError : Error {
  using Error::Error;
};

/// Non-finite values encountered while ingesting data.
struct IngestError : Error {
  using Error::Error;
};

/// Slope, section, level, or quadrant index out of range.
struct IndexError : Error {
  using Error::Error;
};

/// Containers at incompatible levels, malformed stacks, missing quadrants.
struct StructureError : Error {
  using Error::Error;
};

/// Unreadable or malformed file contents; the message carries a byte offset
/// where one is meaningful.
struct ParseError : Error {
  using Error::Error;
};

/// Semantic validation failure (nonzero padding in strict mode, mismatches).
struct ValidationError : Error {
  using Error::Error;
};

/// Input insufficient for a requested analysis.
struct AnalysisError : Error {
  using Error::Error;
};

}  // namespace adrt
