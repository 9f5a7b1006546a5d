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

#include "genbench/error.hpp"

namespace genbench {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidBins: return "InvalidBins";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::SolverNotFound: return "SolverNotFound";
    case ErrorCode::SolverCrash: return "SolverCrash";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ZeroBaselineNodes: return "ZeroBaselineNodes";
    case ErrorCode::UnrecognizedLog: return "UnrecognizedLog";
    case ErrorCode::EmptyTuningSet: return "EmptyTuningSet";
    case ErrorCode::EmptyTestSet: return "EmptyTestSet";
    case ErrorCode::UnknownStrategy: return "UnknownStrategy";
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::TooFewRecords: return "TooFewRecords";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

namespace {
std::string with_position(const std::string& message, std::size_t line, std::size_t column)
{
  if (line == 0) return message;
  return message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}
}  // namespace

ParseError::ParseError(ErrorCode code,
                       const std::string& message,
                       std::size_t line,
                       std::size_t column)
    : Error(code, with_position(message, line, column)), line_(line), column_(column)
{
}

}  // namespace genbench
