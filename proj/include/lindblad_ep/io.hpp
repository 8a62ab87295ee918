// Copyright 2026 The lindblad-ep Authors
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
#include <string>
#include <variant>
#include <vector>

namespace lindblad_ep::io {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

using Cell = std::variant<double, long long, std::string>;

/// A rectangular table that can be written as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& os, const Table& table);

/// {"columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& os, const Table& table);

}  // namespace lindblad_ep::io
