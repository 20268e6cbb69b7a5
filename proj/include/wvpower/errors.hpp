// Copyright 2026 The wvpower Authors
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

namespace wvpower {

// Root of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_arguments : public error {
 public:
  using error::error;
};

class invalid_dimension : public invalid_arguments {
 public:
  using invalid_arguments::invalid_arguments;
};

class invalid_rank : public invalid_arguments {
 public:
  using invalid_arguments::invalid_arguments;
};

class quota_out_of_range : public invalid_arguments {
 public:
  using invalid_arguments::invalid_arguments;
};

// W_1 for a single player is the constant 1 and has no density.
class degenerate_distribution : public error {
 public:
  using error::error;
};

// The requested evaluation lies outside the range where the numerics were
// validated; returning a value would mean returning noise.
class accuracy_unsupported : public error {
 public:
  using error::error;
};

class budget_exceeded : public error {
 public:
  using error::error;
};

class convergence_failure : public error {
 public:
  convergence_failure(const std::string& what, double previous, double last)
      : error(what), previous_(previous), last_(last) {}

  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace wvpower
