// Copyright 2026 The modconv Authors.
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

#ifndef MODCONV_ERRORS_HPP_
#define MODCONV_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modconv {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The caller broke a documented precondition (mismatched moduli, wrong
// vector length, invalid decomposition, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Mathematically undefined request, e.g. inverting zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The prime field cannot host a transform of the requested size.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, written or replaced.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace modconv

#endif  // MODCONV_ERRORS_HPP_
