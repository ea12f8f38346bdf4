// SPDX-License-Identifier: Apache-2.0
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

// Wall-clock comparison of the serial reference kernels and their OpenMP
// counterparts. Usage: bench_kernels [workers] [mc_samples]

#include "noma/mc_oracle.hpp"
#include "noma/placement.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const int workers = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    const std::uint64_t samples = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2'000'000;
    std::printf("workers %d, mc samples %llu\n", workers, static_cast<unsigned long long>(samples));

    noma::LinkScenario scn;
    scn.direction = noma::Direction::uplink;
    scn.geometry = {600.0, 80.0, 420.0};
    scn.powers.near = scn.powers.far = 1e10;
    scn.target_rate = 1.0;
    const noma::LinkBudget link = noma::link_budget(scn);

    noma::mc::McConfig mc{samples, 7, workers};
    noma::mc::McEstimate a, b;
    const double ts = seconds([&] { a = noma::mc::simulate_outage_serial(link, noma::User::near, mc); });
    const double tp = seconds([&] { b = noma::mc::simulate_outage(link, noma::User::near, mc); });
    report("monte carlo, fixed link", ts, tp, a.outages == b.outages);

    noma::placement::PlacementModel pm;
    noma::placement::QuadControl q;
    q.nodes_2d = 32;
    q.max_error = 1.0;
    q.n_workers = workers;
    noma::placement::PlacementResult ra, rb;
    const double qs = seconds([&] { ra = noma::placement::expected_outage_serial(pm, scn, noma::User::near, q); });
    const double qp = seconds([&] { rb = noma::placement::expected_outage(pm, scn, noma::User::near, q); });
    report("placement average, 2-D", qs, qp, ra.probability == rb.probability);
    return 0;
}
