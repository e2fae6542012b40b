//------------------------------------------------------------------------------
//
//   Copyright 2026 The dtsig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "dtsig/errors.hpp"

// Line-oriented key=value text helpers shared by the file formats.
namespace dtsig::textio {

// All non-blank lines, trailing \r stripped, '#' comment lines skipped.
std::vector<std::string> read_lines(std::istream& in);

// Splits at the first '='; throws ParseError when there is none.
std::pair<std::string, std::string> split_key_value(const std::string& line);

std::vector<std::string> split(const std::string& s, char sep);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace dtsig::textio
