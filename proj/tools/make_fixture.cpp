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


// Writes the pinned sampler fixture used by the acceptance suite.
//   kthmax_make_fixture OUT [N]

#include <cstdlib>
#include <iostream>
#include <string>

#include "kthmax/acceptance.hpp"
#include "kthmax/fixture_io.hpp"
#include "kthmax/oracle.hpp"

int main(int argc, char** argv)
{
    if (argc < 2 || argc > 3) {
        std::cerr << "usage: kthmax_make_fixture OUT [N]\n";
        return 1;
    }
    try {
        const long n = argc == 3 ? std::stol(argv[2]) : 10'000;
        const auto ensemble = kthmax::LinkEnsemble::iid(1.0, 20, 2.0);
        const auto ecdf = kthmax::sample_kth_max(ensemble, kthmax::OrderSelector(1), n, kthmax::kAcceptanceSeed);
        kthmax::save_fixture(argv[1], ecdf);
        std::cout << "wrote " << ecdf.n() << " samples to " << argv[1] << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
