/* Copyright 2026 The tspqaoa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace tspqaoa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad instance, non-permutation tour, infeasible index.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the requested exhaustive or dense method.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// File or configuration I/O failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tspqaoa
