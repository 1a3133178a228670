// Copyright 2026 The cdeval Authors.
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

#include "cdeval/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cdeval/io_util.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

namespace {

constexpr std::uint64_t kHashSeed = 0x5eedc0de2024ULL;

std::uint64_t token_hash(std::string_view token) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ kHashSeed;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Rng::mix(h);
}

bool is_token_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(const char* p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::string token;
    if ((c == '#' || c == '@') && i + 1 < text.size() &&
        is_token_char(static_cast<unsigned char>(text[i + 1]))) {
      token.push_back(static_cast<char>(c));
      ++i;
    } else if (!is_token_char(c)) {
      ++i;
      continue;
    }
    while (i < text.size() && is_token_char(static_cast<unsigned char>(text[i]))) {
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
      ++i;
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<float> hash_embed(std::string_view text, std::size_t dim) {
  if (dim < 16) throw InvalidArgument("hash_embed: dim must be >= 16");
  std::vector<double> acc(dim, 0.0);
  for (const auto& token : tokenize(text)) {
    const auto h = token_hash(token);
    const auto bucket = h % dim;
    acc[bucket] += (h >> 63) ? -1.0 : 1.0;
  }
  double norm = 0.0;
  for (double v : acc) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<float> out(dim, 0.0f);
  if (norm > 0.0) {
    for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(acc[i] / norm);
  }
  return out;
}

EmbeddingStore::EmbeddingStore(std::size_t dim, std::vector<std::string> ids, std::vector<float> values)
    : dim_(dim), ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size() * dim_) {
    throw EmbeddingFormatError(EmbeddingFormatError::Kind::kIdMismatch,
                               "embedding rows do not match id count");
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw EmbeddingFormatError(EmbeddingFormatError::Kind::kDuplicateId,
                                 "duplicate message id '" + ids_[i] + "'");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw EmbeddingFormatError(EmbeddingFormatError::Kind::kNonFinite,
                                 "non-finite value in row " + std::to_string(i / dim_));
    }
  }
}

long long EmbeddingStore::find(const std::string& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

EmbeddingStore load_embeddings(const std::string& path) {
  using Kind = EmbeddingFormatError::Kind;
  const auto bytes = read_file(path);
  constexpr std::size_t kHeader = 4 + 4 + 8;
  if (bytes.size() < 4 || bytes.compare(0, 4, "EMB1") != 0) {
    throw EmbeddingFormatError(Kind::kBadMagic, path + ": bad magic (expected EMB1)");
  }
  if (bytes.size() < kHeader) throw EmbeddingFormatError(Kind::kTruncated, path + ": truncated header");
  const auto dim = get_le<std::uint32_t>(bytes.data() + 4);
  const auto count = get_le<std::uint64_t>(bytes.data() + 8);
  const auto payload = static_cast<unsigned __int128>(count) * dim * 4;
  if (bytes.size() - kHeader < payload) {
    throw EmbeddingFormatError(Kind::kTruncated, path + ": payload shorter than count*dim*4 bytes");
  }
  if (bytes.size() - kHeader > payload) {
    throw EmbeddingFormatError(Kind::kTruncated, path + ": trailing bytes after payload");
  }
  std::vector<float> values(static_cast<std::size_t>(count) * dim);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le<float>(bytes.data() + kHeader + 4 * i);

  std::ifstream ids_in(path + ".ids");
  if (!ids_in) throw DataError("cannot open id sidecar " + path + ".ids");
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(ids_in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ids.push_back(line);
  }
  if (ids.size() != count) {
    throw EmbeddingFormatError(Kind::kIdMismatch, path + ".ids: " + std::to_string(ids.size()) +
                                                      " ids for " + std::to_string(count) + " rows");
  }
  return EmbeddingStore(dim, std::move(ids), std::move(values));
}

void write_embeddings(const std::string& path, const EmbeddingStore& store) {
  std::string out = "EMB1";
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(store.dim()));
  put_le<std::uint64_t>(out, store.count());
  out.reserve(out.size() + store.values().size() * 4);
  for (float v : store.values()) put_le<float>(out, v);
  std::string ids;
  for (const auto& id : store.ids()) {
    ids += id;
    ids += '\n';
  }
  write_file_atomic(path, out);
  write_file_atomic(path + ".ids", ids);
}

}  // namespace cdeval
