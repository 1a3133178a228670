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

#include <string>
#include <string_view>
#include <vector>

namespace cdeval {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Shortest decimal text that round-trips the double.
std::string format_number(double x);

// Strict numeric parses: the whole (trimmed) field must be consumed.
bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

std::string read_file(const std::string& path);

// Writes to `path.tmp` then renames over `path`. Creates parent directories.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace cdeval
