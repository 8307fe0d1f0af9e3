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

#ifndef FMLAB_CSV_H_
#define FMLAB_CSV_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fmlab/errors.h"

namespace fmlab {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Blank lines are skipped.
  bool ReadRow(std::vector<std::string>& row);

  // 1-based line number where the last returned row started.
  std::size_t line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t next_line_ = 1;
  std::size_t row_line_ = 0;
};

class CsvError : public ValidationError {
 public:
  CsvError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& row);

// Header lookup helper.
std::optional<std::size_t> FindColumn(const std::vector<std::string>& header,
                                      std::string_view name);

}  // namespace fmlab

#endif  // FMLAB_CSV_H_
