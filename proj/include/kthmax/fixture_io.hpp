// SPDX-License-Identifier: Apache-2.0
//
// kthmax: asymptotic k-th maximum order statistics of Rician links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef KTHMAX_FIXTURE_IO_HPP
#define KTHMAX_FIXTURE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "kthmax/oracle.hpp"

namespace kthmax {

/// Malformed, truncated or inconsistent fixture data.
class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary layout, little-endian:
//   "KMXECDF1" | u64 seed | u64 n | u32 digest length | digest bytes | n x f64
//
// CSV layout:
//   # kthmax.ecdf.v1
//   # seed=<u64>
//   # n=<count>
//   # config_digest=<text>
//   sample
//   <one shortest round-trip double per line, ascending>

void write_fixture_binary(std::ostream& os, const EmpiricalCdf& ecdf);
EmpiricalCdf read_fixture_binary(std::istream& is);

void write_fixture_csv(std::ostream& os, const EmpiricalCdf& ecdf);
EmpiricalCdf read_fixture_csv(std::istream& is);

/// Picks the format from the extension: ".csv" is text, anything else binary.
void save_fixture(const std::filesystem::path& path, const EmpiricalCdf& ecdf);
EmpiricalCdf load_fixture(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
/// Strict inverse of format_double; the whole string must be consumed.
double parse_double(const std::string& text);

}  // namespace kthmax

#endif  // KTHMAX_FIXTURE_IO_HPP
