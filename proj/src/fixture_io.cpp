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


#include "kthmax/fixture_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace kthmax {
namespace {

constexpr std::array<char, 8> kMagic{'K', 'M', 'X', 'E', 'C', 'D', 'F', '1'};
constexpr const char* kCsvSchema = "# kthmax.ecdf.v1";
constexpr std::uint32_t kMaxDigest = 1u << 20;

template <typename T>
void put_le(std::ostream& os, T v)
{
    std::array<char, sizeof(T)> buf{};
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    os.write(buf.data(), buf.size());
}

template <typename T>
T get_le(std::istream& is, const char* what)
{
    std::array<unsigned char, sizeof(T)> buf{};
    if (!is.read(reinterpret_cast<char*>(buf.data()), buf.size()))
        throw FixtureError(std::string("fixture truncated while reading ") + what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

EmpiricalCdf checked(Eigen::ArrayXd samples, std::uint64_t seed, std::string digest)
{
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        if (std::isnan(samples[i]))
            throw FixtureError("fixture sample " + std::to_string(i) + " is NaN");
        if (i > 0 && samples[i] < samples[i - 1])
            throw FixtureError("fixture samples are not sorted at index " + std::to_string(i));
    }
    if (samples.size() == 0)
        throw FixtureError("fixture holds no samples");
    return EmpiricalCdf(std::move(samples), seed, std::move(digest));
}

std::string header_value(std::istream& is, const std::string& key)
{
    std::string line;
    if (!std::getline(is, line))
        throw FixtureError("fixture truncated before '" + key + "'");
    const std::string prefix = "# " + key + "=";
    if (line.rfind(prefix, 0) != 0)
        throw FixtureError("expected '" + prefix + "...', got '" + line + "'");
    return line.substr(prefix.size());
}

std::uint64_t parse_u64(const std::string& text, const char* what)
{
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw FixtureError(std::string("bad ") + what + " '" + text + "'");
    return v;
}

}  // namespace

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw std::logic_error("format_double: buffer too small");
    return std::string(buf.data(), ptr);
}

double parse_double(const std::string& text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw FixtureError("not a number: '" + text + "'");
    return v;
}

void write_fixture_binary(std::ostream& os, const EmpiricalCdf& ecdf)
{
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint64_t>(os, ecdf.seed());
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(ecdf.n()));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(ecdf.config_digest().size()));
    os.write(ecdf.config_digest().data(), static_cast<std::streamsize>(ecdf.config_digest().size()));
    for (double v : ecdf.samples())
        put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
    if (!os)
        throw FixtureError("failed writing binary fixture");
}

EmpiricalCdf read_fixture_binary(std::istream& is)
{
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic)
        throw FixtureError("not a kthmax binary fixture (bad magic)");
    const auto seed = get_le<std::uint64_t>(is, "seed");
    const auto n = get_le<std::uint64_t>(is, "sample count");
    const auto len = get_le<std::uint32_t>(is, "digest length");
    if (len > kMaxDigest)
        throw FixtureError("digest length out of range");
    if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<Eigen::Index>::max() / 8))
        throw FixtureError("sample count out of range");
    std::string digest(len, '\0');
    if (!is.read(digest.data(), len))
        throw FixtureError("fixture truncated while reading digest");
    Eigen::ArrayXd samples(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < samples.size(); ++i)
        samples[i] = std::bit_cast<double>(get_le<std::uint64_t>(is, "samples"));
    if (is.peek() != std::char_traits<char>::eof())
        throw FixtureError("trailing bytes after fixture samples");
    return checked(std::move(samples), seed, std::move(digest));
}

void write_fixture_csv(std::ostream& os, const EmpiricalCdf& ecdf)
{
    if (ecdf.config_digest().find_first_of("\r\n") != std::string::npos)
        throw FixtureError("config digest contains a line break");
    os << kCsvSchema << '\n'
       << "# seed=" << ecdf.seed() << '\n'
       << "# n=" << ecdf.n() << '\n'
       << "# config_digest=" << ecdf.config_digest() << '\n'
       << "sample\n";
    for (double v : ecdf.samples())
        os << format_double(v) << '\n';
    if (!os)
        throw FixtureError("failed writing CSV fixture");
}

EmpiricalCdf read_fixture_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCsvSchema)
        throw FixtureError("not a kthmax CSV fixture (missing schema line)");
    const auto seed = parse_u64(header_value(is, "seed"), "seed");
    const auto n = parse_u64(header_value(is, "n"), "sample count");
    std::string digest = header_value(is, "config_digest");
    if (!std::getline(is, line) || line != "sample")
        throw FixtureError("missing 'sample' column header");
    if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<Eigen::Index>::max() / 8))
        throw FixtureError("sample count out of range");
    Eigen::ArrayXd samples(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        if (!std::getline(is, line))
            throw FixtureError("fixture truncated at sample " + std::to_string(i));
        samples[i] = parse_double(line);
    }
    while (std::getline(is, line)) {
        if (!line.empty())
            throw FixtureError("more samples than the header declares");
    }
    return checked(std::move(samples), seed, std::move(digest));
}

void save_fixture(const std::filesystem::path& path, const EmpiricalCdf& ecdf)
{
    const bool csv = path.extension() == ".csv";
    std::ofstream os(path, csv ? std::ios::out : std::ios::out | std::ios::binary);
    if (!os)
        throw FixtureError("cannot open '" + path.string() + "' for writing");
    if (csv)
        write_fixture_csv(os, ecdf);
    else
        write_fixture_binary(os, ecdf);
}

EmpiricalCdf load_fixture(const std::filesystem::path& path)
{
    const bool csv = path.extension() == ".csv";
    std::ifstream is(path, csv ? std::ios::in : std::ios::in | std::ios::binary);
    if (!is)
        throw FixtureError("cannot open '" + path.string() + "'");
    return csv ? read_fixture_csv(is) : read_fixture_binary(is);
}

}  // namespace kthmax
