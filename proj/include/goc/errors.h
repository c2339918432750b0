/*
 * Copyright 2026 The goc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GOC_ERRORS_H_
#define GOC_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace goc {

// Argument outside the mathematical domain of an operation (z outside the
// kernel interval, alpha outside (0, 1], p outside [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation produced a non-finite value or failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A conditional quantity was requested on an event of probability zero.
class UndefinedConditionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling refused: the conditioning event is too rare.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration. `pointer` is the JSON pointer of the offending
// key ("" for the document root).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message)
      : std::runtime_error(message), pointer_(std::move(pointer)) {}

  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace goc

#endif  // GOC_ERRORS_H_
