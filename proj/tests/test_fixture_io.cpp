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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "kthmax/acceptance.hpp"
#include "kthmax/fixture_io.hpp"

namespace {

using namespace kthmax;
namespace fs = std::filesystem;

EmpiricalCdf awkward_samples()
{
    Eigen::ArrayXd x(6);
    x << -0.0, 5e-324, 1.0 / 3.0, 0.1 + 0.2, 1.7976931348623157e308, std::numeric_limits<double>::infinity();
    return EmpiricalCdf(x, 0xDEADBEEFCAFEF00Dull, "digest with spaces, commas; and = signs");
}

std::string to_binary(const EmpiricalCdf& e)
{
    std::ostringstream os(std::ios::binary);
    write_fixture_binary(os, e);
    return os.str();
}

EmpiricalCdf from_binary(const std::string& bytes)
{
    std::istringstream is(bytes, std::ios::binary);
    return read_fixture_binary(is);
}

TEST(FixtureIo, BinaryRoundTripIsBitExact)
{
    const EmpiricalCdf e = awkward_samples();
    const std::string bytes = to_binary(e);
    EXPECT_EQ(bytes.substr(0, 8), "KMXECDF1");
    EXPECT_EQ(bytes.size(), 8u + 8u + 8u + 4u + e.config_digest().size() + 8u * 6u);
    const EmpiricalCdf back = from_binary(bytes);
    EXPECT_TRUE(back == e);
    EXPECT_TRUE(std::signbit(back.samples()[0]));
    EXPECT_EQ(to_binary(back), bytes);
}

TEST(FixtureIo, CsvRoundTripIsBitExact)
{
    const EmpiricalCdf e = awkward_samples();
    std::ostringstream os;
    write_fixture_csv(os, e);
    const std::string text = os.str();
    EXPECT_EQ(text.rfind("# kthmax.ecdf.v1\n", 0), 0u);
    std::istringstream is(text);
    const EmpiricalCdf back = read_fixture_csv(is);
    EXPECT_TRUE(back == e);
    std::ostringstream again;
    write_fixture_csv(again, back);
    EXPECT_EQ(again.str(), text);
}

TEST(FixtureIo, BinaryRejectsDamage)
{
    const std::string good = to_binary(awkward_samples());
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(from_binary(bad_magic), FixtureError);
    EXPECT_THROW(from_binary(good.substr(0, good.size() - 3)), FixtureError);
    EXPECT_THROW(from_binary(good.substr(0, 20)), FixtureError);
    EXPECT_THROW(from_binary(good + "x"), FixtureError);
    EXPECT_THROW(from_binary(""), FixtureError);

    // Swap the first two samples so the payload is out of order.
    std::string unsorted = good;
    const std::size_t first = good.size() - 8 * 6;
    for (std::size_t i = 0; i < 8; ++i)
        std::swap(unsorted[first + i], unsorted[first + 16 + i]);
    EXPECT_THROW(from_binary(unsorted), FixtureError);
}

TEST(FixtureIo, CsvRejectsDamage)
{
    std::ostringstream os;
    write_fixture_csv(os, awkward_samples());
    const std::string good = os.str();
    const auto read = [](const std::string& text) {
        std::istringstream is(text);
        return read_fixture_csv(is);
    };
    EXPECT_THROW(read("# kthmax.ecdf.v2\n" + good.substr(good.find('\n') + 1)), FixtureError);
    std::string bad_number = good;
    bad_number.replace(bad_number.rfind("inf"), 3, "1.2.3");
    EXPECT_THROW(read(bad_number), FixtureError);
    EXPECT_THROW(read(good + "7\n"), FixtureError);
    EXPECT_THROW(read(good.substr(0, good.rfind('\n', good.size() - 2) + 1)), FixtureError);
}

TEST(FixtureIo, StrictNumberParsing)
{
    EXPECT_EQ(parse_double("0.1"), 0.1);
    EXPECT_EQ(parse_double(format_double(0.1 + 0.2)), 0.1 + 0.2);
    EXPECT_THROW(parse_double(""), FixtureError);
    EXPECT_THROW(parse_double("1x"), FixtureError);
    EXPECT_THROW(parse_double(" 1"), FixtureError);
}

TEST(FixtureIo, SaveLoadPicksFormatByExtension)
{
    const fs::path dir = fs::temp_directory_path() / "kthmax_fixture_io_test";
    fs::create_directories(dir);
    const EmpiricalCdf e = awkward_samples();
    for (const char* name : {"a.kecdf", "a.csv"}) {
        save_fixture(dir / name, e);
        EXPECT_TRUE(load_fixture(dir / name) == e);
    }
    std::ifstream text(dir / "a.csv");
    std::string line;
    std::getline(text, line);
    EXPECT_EQ(line, "# kthmax.ecdf.v1");
    EXPECT_THROW(load_fixture(dir / "missing.kecdf"), FixtureError);
    fs::remove_all(dir);
}

TEST(FixtureIo, PinnedFixtureRegenerates)
{
    const EmpiricalCdf pinned = load_fixture(fs::path(KTHMAX_FIXTURE_DIR) / kPinnedFixture);
    EXPECT_EQ(pinned.seed(), kAcceptanceSeed);
    const EmpiricalCdf fresh =
        sample_kth_max(LinkEnsemble::iid(1.0, 20, 2.0), OrderSelector(1), pinned.n(), kAcceptanceSeed);
    EXPECT_TRUE(fresh == pinned);
}

}  // namespace
