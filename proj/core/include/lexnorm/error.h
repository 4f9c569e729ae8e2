// Copyright 2026 The lexnorm Authors
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

#ifndef LEXNORM_ERROR_H_
#define LEXNORM_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexnorm {

// Base class for every error raised by the library. Malformed or
// inconsistent input data is a DataError; the command-line tool maps it to
// exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Error tied to a 1-based line of an input file.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : DataError("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Two sequences that must be token-aligned are not.
class AlignmentError : public DataError {
 public:
  AlignmentError(std::size_t index, const std::string& message)
      : DataError("token " + std::to_string(index) + ": " + message),
        index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Schema violation in a JSON document; `path` names the offending field.
class SchemaError : public DataError {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : DataError(path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace lexnorm

#endif  // LEXNORM_ERROR_H_
