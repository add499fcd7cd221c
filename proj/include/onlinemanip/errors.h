// Copyright 2026 The onlinemanip Authors.
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

#ifndef ONLINEMANIP_ERRORS_H_
#define ONLINEMANIP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace onlinemanip {

// Malformed or inconsistent input (bad permutation, unknown candidate,
// rule not applicable, variant not supported by an algorithm, ...).
class InvalidInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text that could not be parsed (instance JSON, formulas, QBF files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or enumeration exceeded its configured budget. Never accompanied by
// a partial answer.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A strategy trace could not be replayed (undefined at a reached history).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace onlinemanip

#endif  // ONLINEMANIP_ERRORS_H_
