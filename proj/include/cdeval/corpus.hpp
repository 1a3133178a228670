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

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdeval/embedding.hpp"

namespace cdeval {

struct Message {
  std::string id;
  std::string user;
  std::string text;
};

// Messages with unique ids, kept in input order.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Message> messages);  // throws DataError on duplicate ids

  const std::vector<Message>& messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  const Message& operator[](std::size_t i) const { return messages_[i]; }
  // Message positions per user, ascending.
  const std::map<std::string, std::vector<std::size_t>>& by_user() const { return by_user_; }

 private:
  std::vector<Message> messages_;
  std::map<std::string, std::vector<std::size_t>> by_user_;
};

// JSON lines {"user_id": ..., "tweet_id": ..., "text": ...}.
Corpus load_corpus(std::istream& in, const std::string& source = "<stream>");
Corpus load_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const Corpus& corpus);

// Maps a message to its feature vector.
class MessageEmbedder {
 public:
  virtual ~MessageEmbedder() = default;
  virtual std::size_t dim() const = 0;
  virtual std::vector<float> embed(const Message& m) const = 0;
};

class HashEmbedder : public MessageEmbedder {
 public:
  explicit HashEmbedder(std::size_t dim);
  std::size_t dim() const override { return dim_; }
  std::vector<float> embed(const Message& m) const override { return hash_embed(m.text, dim_); }

 private:
  std::size_t dim_;
};

// Looks vectors up by message id; a missing id is a DataError.
class StoreEmbedder : public MessageEmbedder {
 public:
  explicit StoreEmbedder(EmbeddingStore store) : store_(std::move(store)) {}
  std::size_t dim() const override { return store_.dim(); }
  std::vector<float> embed(const Message& m) const override;

 private:
  EmbeddingStore store_;
};

// "builtin-hash:<dim>" or a path to an EMB1 file.
std::unique_ptr<MessageEmbedder> make_embedder(const std::string& spec);

}  // namespace cdeval
