/* Copyright 2026 GenBench contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genbench {

enum class ErrorCode {
  MalformedFile,
  UnsupportedConstruct,
  InvalidInstance,
  EmptyGraph,
  NoEdges,
  EmptySample,
  InvalidBins,
  TooFewRows,
  InvalidK,
  SolverNotFound,
  SolverCrash,
  EmptySet,
  ZeroBaselineNodes,
  UnrecognizedLog,
  EmptyTuningSet,
  EmptyTestSet,
  UnknownStrategy,
  UnknownParameter,
  TooFewRecords,
  UnknownFormat,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised while reading an instance file; line and column are 1-based,
/// 0 when the position is not meaningful (e.g. a missing section).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace genbench
