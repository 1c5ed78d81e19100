// Copyright 2026 The tempcorr Authors
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

#include <stdexcept>
#include <string>

namespace tempcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class InvalidObservable : public Error {
   public:
    using Error::Error;
};

class InvalidState : public Error {
   public:
    using Error::Error;
};

class NonUnitaryError : public Error {
   public:
    using Error::Error;
};

class NotCompletelyPositive : public Error {
   public:
    using Error::Error;
};

/// Fidelity against a mixed (rank > 1) target process.
class UnsupportedFidelity : public Error {
   public:
    using Error::Error;
};

/// A probability estimate was requested from a setting with no counts.
class UndefinedEstimate : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace tempcorr
