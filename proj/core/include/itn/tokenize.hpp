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

#ifndef ITN_TOKENIZE_HPP_
#define ITN_TOKENIZE_HPP_

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "itn/grammar.hpp"
#include "itn/lexicon.hpp"

namespace itn {

// Word-start marker, U+2581.
inline constexpr std::string_view kWordStart = "\xe2\x96\x81";

// Subword vocabulary whose protected words are always single pieces.
//
// Id layout: 0 <unk>, 1 <pad>, 2 the bare word-start marker, 3..258 the 256
// single bytes, then every protected word as "<marker>word" in byte order,
// then learned merges in the order they were learned.
class PieceVocab {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kPad = 1;
  static constexpr int kMarker = 2;
  static constexpr std::size_t kBaseSize = 3 + 256;

  // Greedy pair merging over the words of `corpus` (one sentence per
  // element) until the vocabulary holds `target_size` pieces or no pair
  // occurs twice. Throws Error(kVocabTooSmall).
  static PieceVocab Build(const std::vector<std::string>& corpus,
                          const std::set<std::string>& protected_words, std::size_t target_size);

  std::vector<int> Encode(std::string_view text) const;
  // Pieces of one word, the first carrying the word-start marker.
  std::vector<int> EncodeWord(std::string_view word) const;
  // Throws Error(kIdOutOfRange). <unk> renders as U+FFFD, <pad> as nothing.
  std::string Decode(const std::vector<int>& ids) const;

  std::size_t size() const { return pieces_.size(); }
  const std::string& Piece(int id) const;
  bool IsProtected(int id) const;
  bool StartsWord(int id) const;
  // -1 when absent.
  int Find(std::string_view piece) const;

  // TSV `piece<TAB>id<TAB>protected_flag`, pieces escaped.
  void Save(std::ostream& out) const;
  static PieceVocab Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  // Rebuilds a vocabulary from its pieces in id order. Throws Error(kIo)
  // when the fixed base layout is missing or pieces repeat.
  static PieceVocab FromPieces(std::vector<std::string> pieces, std::vector<bool> is_protected);
  static PieceVocab LoadFile(const std::string& path);

 private:
  int Add(std::string piece, bool is_protected);
  void Index();

  std::vector<std::string> pieces_;
  std::vector<bool> protected_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<std::string, int> regular_;  // non-protected pieces
  std::size_t max_piece_bytes_ = 1;
};

// Every spoken word the grammar templates and the lexicon can produce.
std::set<std::string> ProtectedWords(const Grammar& grammar, const RewriteLexicon& lexicon);

std::string EscapePiece(std::string_view piece);
std::string UnescapePiece(std::string_view text);

}  // namespace itn

#endif  // ITN_TOKENIZE_HPP_
