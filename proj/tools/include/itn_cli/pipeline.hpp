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

#ifndef ITN_CLI_PIPELINE_HPP_
#define ITN_CLI_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "itn/eval.hpp"
#include "itn_cli/commands.hpp"

namespace itn::cli {

// augment -> build-vocab -> train -> tag -> evaluate, with every artifact
// written under `workdir`.
struct PipelineSettings {
  std::string source;    // written out-of-domain text
  std::string general;   // written text for embedding pretraining, optional
  std::string finetune;  // in-domain pairs JSONL
  std::string test;      // in-domain pairs JSONL used for scoring
  std::string workdir = "pipeline_out";
  std::size_t n_variants = 4;
  std::size_t max_expansions = 64;
  std::size_t vocab_size = 600;
  std::size_t threads = 1;
  TrainOptions train;  // paths are filled in by the pipeline
};

struct PipelineResult {
  AugmentStats augment;
  TrainSummary train;
  std::size_t repaired = 0;
  AccuracyReport report;
};

PipelineResult RunPipeline(const PipelineSettings& settings, const Resources& res);

}  // namespace itn::cli

#endif  // ITN_CLI_PIPELINE_HPP_
