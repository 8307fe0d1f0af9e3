// Copyright 2026 The fmlab Authors
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

#include "fmlab/csv.h"

namespace fmlab {

bool CsvReader::ReadRow(std::vector<std::string>& row) {
  row.clear();
  while (true) {
    if (in_.peek() == std::char_traits<char>::eof()) return false;
    row_line_ = next_line_;
    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    bool any = false;
    while (true) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        if (in_quotes) throw CsvError(row_line_, "unterminated quoted field");
        break;
      }
      any = true;
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++next_line_;
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      if (c == '"') {
        if (!field.empty() || quoted_field) {
          throw CsvError(next_line_, "stray quote inside unquoted field");
        }
        in_quotes = true;
        quoted_field = true;
      } else if (c == ',') {
        row.push_back(std::move(field));
        field.clear();
        quoted_field = false;
      } else if (c == '\r') {
        if (in_.peek() == '\n') in_.get();
        ++next_line_;
        break;
      } else if (c == '\n') {
        ++next_line_;
        break;
      } else {
        if (quoted_field) {
          throw CsvError(next_line_, "characters after closing quote");
        }
        field.push_back(static_cast<char>(c));
      }
    }
    if (!any) return false;
    if (row.empty() && field.empty() && !quoted_field) continue;
    row.push_back(std::move(field));
    return true;
  }
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out << ',';
    out << CsvEscape(row[i]);
  }
  out << '\n';
}

std::optional<std::size_t> FindColumn(const std::vector<std::string>& header,
                                      std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

}  // namespace fmlab
