// Copyright 2026 The Intertext Authors.
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

#ifndef INTERTEXT_ERROR_H_
#define INTERTEXT_ERROR_H_

#include <stdexcept>
#include <string>

namespace intertext {

// Base class for every failure caused by bad input data or files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A binary file (store, checkpoint, index) is malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace intertext

#endif  // INTERTEXT_ERROR_H_
