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

#ifndef ITN_EMBEDDED_HPP_
#define ITN_EMBEDDED_HPP_

#include <string_view>

// Shipped default data files, compiled into the library from core/data/.
namespace itn::embedded {

std::string_view grammar();
std::string_view lexicon();
std::string_view patterns();
std::string_view stopwords();

}  // namespace itn::embedded

#endif  // ITN_EMBEDDED_HPP_
