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

#include "cdeval/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "json.hpp"

namespace cdeval {

Corpus::Corpus(std::vector<Message> messages) : messages_(std::move(messages)) {
  std::unordered_set<std::string> seen;
  seen.reserve(messages_.size());
  for (std::size_t i = 0; i < messages_.size(); ++i) {
    if (!seen.insert(messages_[i].id).second) {
      throw DataError("duplicate message id '" + messages_[i].id + "'");
    }
    by_user_[messages_[i].user].push_back(i);
  }
}

Corpus load_corpus(std::istream& in, const std::string& source) {
  std::vector<Message> messages;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, "invalid JSON");
    }
    const auto field = [&](const char* key) {
      const auto it = j.find(key);
      if (it == j.end() || !it->is_string()) {
        throw ParseError(source, line_no, std::string("missing string field '") + key + "'");
      }
      return it->get<std::string>();
    };
    messages.push_back({field("tweet_id"), field("user_id"), field("text")});
  }
  return Corpus(std::move(messages));
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open message file " + path);
  return load_corpus(in, path);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& m : corpus.messages()) {
    nlohmann::ordered_json j;
    j["user_id"] = m.user;
    j["tweet_id"] = m.id;
    j["text"] = m.text;
    out << j.dump() << '\n';
  }
}

HashEmbedder::HashEmbedder(std::size_t dim) : dim_(dim) {
  if (dim < 16) throw InvalidArgument("hash embedder dim must be >= 16");
}

std::vector<float> StoreEmbedder::embed(const Message& m) const {
  const auto row = store_.find(m.id);
  if (row < 0) throw DataError("no embedding for message '" + m.id + "'");
  const auto r = store_.row(static_cast<std::size_t>(row));
  return {r.begin(), r.end()};
}

std::unique_ptr<MessageEmbedder> make_embedder(const std::string& spec) {
  constexpr std::string_view kHash = "builtin-hash:";
  if (spec.rfind(kHash, 0) == 0) {
    long long dim = 0;
    if (!parse_int(std::string_view(spec).substr(kHash.size()), dim) || dim < 16) {
      throw ConfigError("bad embedder spec '" + spec + "' (expected builtin-hash:<dim>=16..)");
    }
    return std::make_unique<HashEmbedder>(static_cast<std::size_t>(dim));
  }
  return std::make_unique<StoreEmbedder>(load_embeddings(spec));
}

}  // namespace cdeval
