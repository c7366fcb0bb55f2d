// Copyright 2026 The mwp Authors
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

#ifndef MWP_ERROR_HPP_
#define MWP_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mwp {

// Root of every error the library raises on bad input. Anything else escaping
// a public function is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an out-of-range parameter (levels, dimensions, band kind).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Byte stream does not follow the expected layout (PGM header, container
// magic/version/CRC, inconsistent geometry).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what,
                       std::optional<std::size_t> offset = std::nullopt)
      : Error(offset ? what + " (at byte " + std::to_string(*offset) + ")"
                     : what),
        offset_(offset) {}

  std::optional<std::size_t> offset() const { return offset_; }

 private:
  std::optional<std::size_t> offset_;
};

// Structurally valid container whose payload decodes to something impossible.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Band decoded before the bands it depends on.
class SequencingError : public Error {
 public:
  using Error::Error;
};

}  // namespace mwp

#endif  // MWP_ERROR_HPP_
