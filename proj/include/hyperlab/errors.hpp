/* Copyright 2026 The Hyperlab Authors. All Rights Reserved.

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

#ifndef HYPERLAB_ERRORS_HPP
#define HYPERLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlab {

/// Thrown when a computation would exceed a configured resource bound.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position()` is a 0-based byte offset.
class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hyperlab

#endif  // HYPERLAB_ERRORS_HPP
