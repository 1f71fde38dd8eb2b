// Copyright 2026 The FADTK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FADTK_CSV_H_
#define FADTK_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fadtk {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column, or throws kArgument.
  size_t Column(std::string_view name) const;
};

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF. Lines whose
// first character is '#' are comments.
CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);

std::string CsvEscape(std::string_view field);
std::string CsvLine(const std::vector<std::string>& fields);

// Nine significant digits, used by every numeric CSV column.
std::string FormatDouble(double value);

double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace fadtk

#endif  // FADTK_CSV_H_
