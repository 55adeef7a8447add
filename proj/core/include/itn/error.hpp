// Copyright (c) 2026 The ITN Toolkit Authors.
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

#ifndef ITN_ERROR_HPP_
#define ITN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace itn {

enum class ErrorCode {
  kUnknownWord,
  kUnknownLabel,
  kGrammarCycle,
  kGrammarSyntax,
  kLexiconSyntax,
  kPatternSyntax,
  kMalformedEntity,
  kNoRuleMatch,
  kVocabTooSmall,
  kUnbalancedMarkers,
  kMalformedRegion,
  kMalformedNumberRun,
  kTraceIncomplete,
  kNoDerivation,
  kIdOutOfRange,
  kAlignmentMismatch,
  kEmptyCorpus,
  kEmptyDataset,
  kZeroWrittenEntities,
  kBadModelFile,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All toolkit failures surface as this exception; `code()` lets callers
// separate data errors from programming errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace itn

#endif  // ITN_ERROR_HPP_
