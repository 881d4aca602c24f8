// Copyright 2026 The specaug Authors.
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

#ifndef SPECAUG_ERROR_H_
#define SPECAUG_ERROR_H_

#include <stdexcept>
#include <string>

namespace specaug {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed bytes in a WAV, SPFX, stats or sidecar file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that uses an encoding we do not handle.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters: DSP settings, policies, CLI/config values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition (e.g. out-of-bounds mask).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A stage produced nothing, e.g. a signal shorter than one frame.
class EmptyOutputError : public Error {
 public:
  using Error::Error;
};

// Underlying filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int epoch)
      : Error(what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

}  // namespace specaug

#endif  // SPECAUG_ERROR_H_
