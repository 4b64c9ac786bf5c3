// Copyright 2026 The aisrepair Authors. All rights reserved.
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

#ifndef AISREPAIR_ERROR_HPP
#define AISREPAIR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace aisrepair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data, configuration, or arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file the current stage depends on is missing or unreadable.
class MissingArtifactError : public Error {
 public:
  using Error::Error;
};

/// A training step produced a non-finite parameter.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace aisrepair

#endif  // AISREPAIR_ERROR_HPP
