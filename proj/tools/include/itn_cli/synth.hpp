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

#ifndef ITN_CLI_SYNTH_HPP_
#define ITN_CLI_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itn::cli {

// Emulated dataset roles. Source and target draw from disjoint template pools
// and disjoint non-entity vocabularies; general has its own templates that
// mix words from both.
enum class Domain { kSource, kTarget, kGeneral };

std::optional<Domain> ParseDomain(std::string_view name);
std::string_view DomainName(Domain domain);

// Lowercase, punctuation-free sentences containing cardinal, currency and
// fraction entities. Deterministic in (domain, size, seed).
// Throws std::invalid_argument when size == 0.
std::vector<std::string> SynthCorpus(Domain domain, std::size_t size, std::uint64_t seed);

}  // namespace itn::cli

#endif  // ITN_CLI_SYNTH_HPP_
