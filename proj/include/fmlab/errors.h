// Copyright 2026 The fmlab Authors
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

#ifndef FMLAB_ERRORS_H_
#define FMLAB_ERRORS_H_

#include <stdexcept>

namespace fmlab {

// Bad input: malformed model, mapping, dataset or sample file.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal re-check of a computed result failed.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fmlab

#endif  // FMLAB_ERRORS_H_
