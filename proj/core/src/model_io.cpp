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

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "itn/error.hpp"
#include "itn/tagger.hpp"

namespace itn {
namespace {

constexpr char kMagic[4] = {'I', 'T', 'N', 'F'};

void PutU16(std::ostream& out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void PutU32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void PutF32(std::ostream& out, float f) {
  std::uint32_t v;
  std::memcpy(&v, &f, 4);
  PutU32(out, v);
}

std::uint32_t Narrow(std::size_t v) {
  if (v > 0xffffffffULL) throw Error(ErrorCode::kIo, "value too large for the model file");
  return static_cast<std::uint32_t>(v);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void Bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) Fail("truncated model file");
  }
  std::uint16_t U16() {
    unsigned char b[2];
    Bytes(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t U32() {
    unsigned char b[4];
    Bytes(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  float F32() {
    std::uint32_t v = U32();
    float f;
    std::memcpy(&f, &v, 4);
    return f;
  }
  std::string String(std::size_t n) {
    std::string s(n, '\0');
    if (n > 0) Bytes(s.data(), n);
    return s;
  }
  [[noreturn]] static void Fail(const std::string& why) {
    throw Error(ErrorCode::kBadModelFile, why);
  }

 private:
  std::istream& in_;
};

std::string MarkerToSpace(const std::string& piece) {
  std::string out;
  for (std::size_t i = 0; i < piece.size();) {
    if (piece.compare(i, kWordStart.size(), kWordStart) == 0) {
      out += ' ';
      i += kWordStart.size();
    } else {
      out += piece[i++];
    }
  }
  return out;
}

std::string SpaceToMarker(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == ' ') {
      out += kWordStart;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

void SaveModel(std::ostream& out, const TaggerModel<float>& model, const PieceVocab& vocab) {
  const TaggerConfig& c = model.config();
  if (vocab.size() != c.vocab_size) {
    throw Error(ErrorCode::kAlignmentMismatch, "vocabulary size differs from the model's");
  }
  out.write(kMagic, 4);
  PutU32(out, kModelFormatVersion);
  for (std::size_t v : {c.vocab_size, c.embed_dim, c.hidden_dim, c.layers, c.head_hidden}) {
    PutU32(out, Narrow(v));
  }
  for (double w : c.task_weights) PutF32(out, static_cast<float>(w));

  // Protected pieces come first after the base block; the rest are merges.
  std::size_t protected_count = 0;
  std::string pieces;
  for (std::size_t id = PieceVocab::kBaseSize; id < vocab.size(); ++id) {
    if (vocab.IsProtected(static_cast<int>(id))) {
      if (id != PieceVocab::kBaseSize + protected_count) {
        throw Error(ErrorCode::kIo, "protected pieces must precede merges");
      }
      ++protected_count;
    }
    pieces += EscapePiece(MarkerToSpace(vocab.Piece(static_cast<int>(id))));
    pieces += '\n';
  }
  PutU32(out, Narrow(protected_count));
  PutU32(out, Narrow(pieces.size()));
  out.write(pieces.data(), static_cast<std::streamsize>(pieces.size()));

  PutU32(out, Narrow(model.params().size()));
  for (const auto& p : model.params()) {
    PutU16(out, static_cast<std::uint16_t>(p.name.size()));
    out.write(p.name.data(), static_cast<std::streamsize>(p.name.size()));
    PutU32(out, Narrow(static_cast<std::size_t>(p.value.rows())));
    PutU32(out, Narrow(static_cast<std::size_t>(p.value.cols())));
    const float* data = p.value.data();
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      PutU16(out, Eigen::numext::bit_cast<std::uint16_t>(Eigen::half(data[i])));
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing model");
}

void SaveModelFile(const std::string& path, const TaggerModel<float>& model,
                   const PieceVocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  SaveModel(out, model, vocab);
}

LoadedModel LoadModel(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.Bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) Reader::Fail("not a model file (bad magic)");
  std::uint32_t version = r.U32();
  if (version != kModelFormatVersion) {
    Reader::Fail("unsupported model format version " + std::to_string(version));
  }
  TaggerConfig c;
  c.vocab_size = r.U32();
  c.embed_dim = r.U32();
  c.hidden_dim = r.U32();
  c.layers = r.U32();
  c.head_hidden = r.U32();
  for (double& w : c.task_weights) w = r.F32();
  try {
    c.Validate();
  } catch (const std::invalid_argument& e) {
    Reader::Fail(std::string("bad model config: ") + e.what());
  }

  std::uint32_t protected_count = r.U32();
  std::string blob = r.String(r.U32());
  std::vector<std::string> pieces = {"<unk>", "<pad>", std::string(kWordStart)};
  for (int b = 0; b < 256; ++b) pieces.emplace_back(1, static_cast<char>(b));
  std::vector<bool> flags(pieces.size(), false);
  std::size_t start = 0;
  while (start < blob.size()) {
    std::size_t nl = blob.find('\n', start);
    if (nl == std::string::npos) Reader::Fail("unterminated vocabulary block");
    pieces.push_back(SpaceToMarker(UnescapePiece(blob.substr(start, nl - start))));
    flags.push_back(pieces.size() - PieceVocab::kBaseSize <= protected_count);
    start = nl + 1;
  }
  if (pieces.size() != c.vocab_size) Reader::Fail("vocabulary size differs from the config");
  PieceVocab vocab;
  try {
    vocab = PieceVocab::FromPieces(std::move(pieces), std::move(flags));
  } catch (const Error& e) {
    Reader::Fail(e.what());
  }

  TaggerModel<float> model(c);
  std::uint32_t n = r.U32();
  if (n != model.params().size()) Reader::Fail("unexpected parameter count");
  for (std::uint32_t k = 0; k < n; ++k) {
    std::string name = r.String(r.U16());
    auto& p = model.params()[k];
    if (name != p.name) Reader::Fail("expected parameter " + p.name + ", found " + name);
    std::uint32_t rows = r.U32();
    std::uint32_t cols = r.U32();
    if (rows != p.value.rows() || cols != p.value.cols()) Reader::Fail("shape mismatch in " + name);
    float* data = p.value.data();
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      data[i] = static_cast<float>(Eigen::numext::bit_cast<Eigen::half>(r.U16()));
    }
  }
  return {std::move(model), std::move(vocab)};
}

LoadedModel LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return LoadModel(in);
}

}  // namespace itn
