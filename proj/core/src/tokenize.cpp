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

#include "itn/tokenize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "itn/error.hpp"

namespace itn {
namespace {

constexpr std::string_view kReplacement = "\xef\xbf\xbd";

bool ValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3 : (c >> 3) == 0x1e ? 4 : 0;
    if (len == 0 || i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return false;
    }
    i += len;
  }
  return true;
}

using Symbols = std::vector<std::string>;

Symbols SplitChunk(std::string_view chunk) {
  Symbols out;
  std::size_t i = 0;
  if (chunk.substr(0, kWordStart.size()) == kWordStart) {
    out.emplace_back(kWordStart);
    i = kWordStart.size();
  }
  for (; i < chunk.size(); ++i) out.emplace_back(1, chunk[i]);
  return out;
}

}  // namespace

int PieceVocab::Add(std::string piece, bool is_protected) {
  if (auto it = ids_.find(piece); it != ids_.end()) return it->second;
  int id = static_cast<int>(pieces_.size());
  pieces_.push_back(std::move(piece));
  protected_.push_back(is_protected);
  ids_.emplace(pieces_.back(), id);
  if (!is_protected && id > kPad) {
    regular_.emplace(pieces_.back(), id);
    max_piece_bytes_ = std::max(max_piece_bytes_, pieces_.back().size());
  }
  return id;
}

void PieceVocab::Index() {
  ids_.clear();
  regular_.clear();
  max_piece_bytes_ = 1;
  auto pieces = std::move(pieces_);
  auto flags = std::move(protected_);
  pieces_.clear();
  protected_.clear();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (Add(pieces[i], flags[i]) != static_cast<int>(i)) {
      throw Error(ErrorCode::kIo, "duplicate vocabulary piece '" + EscapePiece(pieces[i]) + "'");
    }
  }
}

PieceVocab PieceVocab::Build(const std::vector<std::string>& corpus,
                             const std::set<std::string>& protected_words,
                             std::size_t target_size) {
  if (target_size < protected_words.size() + 256) {
    throw Error(ErrorCode::kVocabTooSmall,
                "target size " + std::to_string(target_size) + " < " +
                    std::to_string(protected_words.size()) + " protected words + 256 bytes");
  }
  PieceVocab v;
  v.Add("<unk>", false);
  v.Add("<pad>", false);
  v.Add(std::string(kWordStart), false);
  for (int b = 0; b < 256; ++b) v.Add(std::string(1, static_cast<char>(b)), false);
  for (const auto& w : protected_words) {
    if (!w.empty()) v.Add(std::string(kWordStart) + w, true);
  }

  // Distinct word chunks with their corpus frequency; protected words never
  // take part in merge learning.
  std::map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& w : SplitWhitespace(sentence)) {
      if (protected_words.count(w) == 0) ++counts[std::string(kWordStart) + w];
    }
  }
  std::vector<std::pair<Symbols, std::size_t>> words;
  words.reserve(counts.size());
  for (const auto& [chunk, n] : counts) words.emplace_back(SplitChunk(chunk), n);

  while (v.size() < target_size) {
    std::map<std::pair<std::string, std::string>, std::size_t> pairs;
    for (const auto& [syms, n] : words) {
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) pairs[{syms[i], syms[i + 1]}] += n;
    }
    const std::pair<std::string, std::string>* best = nullptr;
    std::size_t best_n = 0;
    for (const auto& [pair, n] : pairs) {
      if (n > best_n) {  // map order makes the first maximum the smallest pair
        best = &pair;
        best_n = n;
      }
    }
    if (best == nullptr || best_n < 2) break;
    std::string merged = best->first + best->second;
    for (auto& [syms, n] : words) {
      Symbols next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == best->first && syms[i + 1] == best->second) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(std::move(syms[i]));
        }
      }
      syms = std::move(next);
    }
    v.Add(std::move(merged), false);
  }
  return v;
}

std::vector<int> PieceVocab::EncodeWord(std::string_view word) const {
  std::string chunk(kWordStart);
  chunk += word;
  if (auto it = ids_.find(chunk); it != ids_.end() && protected_[static_cast<std::size_t>(it->second)]) {
    return {it->second};
  }
  std::vector<int> out;
  std::string_view rest = chunk;
  while (!rest.empty()) {
    int id = kUnk;
    std::size_t len = std::min(max_piece_bytes_, rest.size());
    for (; len > 0; --len) {
      if (auto it = regular_.find(std::string(rest.substr(0, len))); it != regular_.end()) {
        id = it->second;
        break;
      }
    }
    if (len == 0) len = 1;  // byte missing from a hand-edited vocabulary
    out.push_back(id);
    rest.remove_prefix(len);
  }
  return out;
}

std::vector<int> PieceVocab::Encode(std::string_view text) const {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    std::size_t space = text.find(' ', start);
    auto ids = EncodeWord(text.substr(start, space - start));
    out.insert(out.end(), ids.begin(), ids.end());
    if (space == std::string_view::npos) break;
    start = space + 1;
  }
  return out;
}

std::string PieceVocab::Decode(const std::vector<int>& ids) const {
  std::string joined;
  for (int id : ids) {
    if (id == kUnk) {
      joined += kReplacement;
    } else if (id != kPad) {
      joined += Piece(id);
    }
  }
  std::string out;
  out.reserve(joined.size());
  for (std::size_t i = 0; i < joined.size();) {
    if (joined.compare(i, kWordStart.size(), kWordStart) == 0) {
      out += ' ';
      i += kWordStart.size();
    } else {
      out += joined[i++];
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

const std::string& PieceVocab::Piece(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= pieces_.size()) {
    throw Error(ErrorCode::kIdOutOfRange,
                "piece id " + std::to_string(id) + " outside [0, " + std::to_string(size()) + ")");
  }
  return pieces_[static_cast<std::size_t>(id)];
}

bool PieceVocab::IsProtected(int id) const {
  Piece(id);
  return protected_[static_cast<std::size_t>(id)];
}

bool PieceVocab::StartsWord(int id) const {
  return Piece(id).compare(0, kWordStart.size(), kWordStart) == 0;
}

int PieceVocab::Find(std::string_view piece) const {
  auto it = ids_.find(std::string(piece));
  return it == ids_.end() ? -1 : it->second;
}

void PieceVocab::Save(std::ostream& out) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    out << EscapePiece(pieces_[i]) << '\t' << i << '\t' << (protected_[i] ? 1 : 0) << '\n';
  }
}

PieceVocab PieceVocab::Load(std::istream& in) {
  PieceVocab v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorCode::kIo, "vocab line " + std::to_string(lineno) + ": expected 3 columns");
    }
    std::size_t id = 0;
    try {
      id = std::stoul(line.substr(t1 + 1, t2 - t1 - 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIo, "vocab line " + std::to_string(lineno) + ": bad id");
    }
    if (id != v.pieces_.size()) {
      throw Error(ErrorCode::kIo, "vocab line " + std::to_string(lineno) + ": ids must be dense");
    }
    v.pieces_.push_back(UnescapePiece(line.substr(0, t1)));
    v.protected_.push_back(line.substr(t2 + 1) == "1");
  }
  return FromPieces(std::move(v.pieces_), std::move(v.protected_));
}

PieceVocab PieceVocab::FromPieces(std::vector<std::string> pieces,
                                  std::vector<bool> is_protected) {
  if (pieces.size() != is_protected.size() || pieces.size() < kBaseSize ||
      pieces[kMarker] != kWordStart) {
    throw Error(ErrorCode::kIo, "vocabulary lacks the fixed base pieces");
  }
  PieceVocab v;
  v.pieces_ = std::move(pieces);
  v.protected_ = std::move(is_protected);
  v.Index();
  return v;
}

void PieceVocab::SaveFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  Save(out);
}

PieceVocab PieceVocab::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return Load(in);
}

std::set<std::string> ProtectedWords(const Grammar& grammar, const RewriteLexicon& lexicon) {
  std::set<std::string> words = grammar.SpokenVocabulary();
  for (const auto& w : lexicon.Words()) words.insert(w);
  return words;
}

std::string EscapePiece(std::string_view piece) {
  bool utf8 = ValidUtf8(piece);
  std::string out;
  char buf[5];
  for (char ch : piece) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '\\': out += "\\\\"; continue;
      case '\t': out += "\\t"; continue;
      case '\n': out += "\\n"; continue;
      case '\r': out += "\\r"; continue;
      default: break;
    }
    if (c < 0x20 || c == 0x7f || (c >= 0x80 && !utf8)) {
      std::snprintf(buf, sizeof buf, "\\x%02x", c);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out;
}

std::string UnescapePiece(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\' || i + 1 == text.size()) {
      out += text[i];
      continue;
    }
    char e = text[++i];
    switch (e) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'x':
        if (i + 2 < text.size()) {
          out += static_cast<char>(std::stoi(std::string(text.substr(i + 1, 2)), nullptr, 16));
          i += 2;
        }
        break;
      default: out += e; break;
    }
  }
  return out;
}

}  // namespace itn
