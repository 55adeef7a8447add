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

#ifndef ITN_CLI_CONFIG_HPP_
#define ITN_CLI_CONFIG_HPP_

#include <map>
#include <string>
#include <string_view>

namespace itn::cli {

// Flat `key = value` text. Blank lines and lines starting with '#' are
// ignored; values may be wrapped in double quotes. Throws
// std::invalid_argument on a malformed line or a repeated key.
std::map<std::string, std::string> ParseFlatConfig(std::string_view text,
                                                   std::string_view origin = "<config>");
// Throws Error(kIo) when the file cannot be read.
std::map<std::string, std::string> LoadFlatConfig(const std::string& path);

}  // namespace itn::cli

#endif  // ITN_CLI_CONFIG_HPP_
