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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cdeval/error.hpp"

namespace cdeval {

// Lowercased tokens split on non-alphanumerics; a leading '#' or '@' stays
// attached. Bytes >= 0x80 count as token characters so UTF-8 words survive.
std::vector<std::string> tokenize(std::string_view text);

// Signed feature hashing of the tokens into `dim` buckets, L2-normalized.
// Stable across runs and platforms (FNV-1a 64 with a fixed seed, then a
// splitmix finalizer). Throws InvalidArgument for dim < 16.
std::vector<float> hash_embed(std::string_view text, std::size_t dim);

// Dense message embeddings keyed by message id.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::size_t dim, std::vector<std::string> ids, std::vector<float> values);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<float>& values() const { return values_; }
  std::span<const float> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  // Row of a message id, or -1.
  long long find(const std::string& id) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

class EmbeddingFormatError : public DataError {
 public:
  enum class Kind { kBadMagic, kTruncated, kDuplicateId, kNonFinite, kIdMismatch };
  EmbeddingFormatError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// `EMB1`, u32 dim, u64 count, count*dim f32, all little-endian; ids in the
// sidecar `path + ".ids"`, one per line, row-aligned.
EmbeddingStore load_embeddings(const std::string& path);
void write_embeddings(const std::string& path, const EmbeddingStore& store);

}  // namespace cdeval
