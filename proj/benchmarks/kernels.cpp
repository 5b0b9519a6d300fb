// SPDX-License-Identifier: Apache-2.0
//
// ddce - delay-Doppler channel estimation and link-level simulation
// Copyright (C) 2026 The ddce authors
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

// Hot kernels of the link simulation at the default numerology.

#include <benchmark/benchmark.h>

#include "ddce/ddce.hpp"

using namespace ddce;

namespace {

cvec random_vec(Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    cvec v(n);
    for (auto& x : v) x = rng.cgauss(1.0);
    return v;
}

struct Scenario {
    SimConfig cfg;
    Frame frame;
    explicit Scenario(double speed) : cfg(default_config()) {
        cfg.speed_kmh = speed;
        Rng rng(7);
        frame = simulate_frame(cfg, rng);
    }
};

const Scenario& scenario() {
    static const Scenario s(360.0);
    return s;
}

} // namespace

static void BM_Dft(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const cvec x = random_vec(n, 1);
    for (auto _ : st) benchmark::DoNotOptimize(dft(x, n));
}
BENCHMARK(BM_Dft)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_KronApply(benchmark::State& st) {
    const cvec x = random_vec(1024, 2);
    for (auto _ : st) benchmark::DoNotOptimize(kron_apply_fn_im(x, 256, 4));
}
BENCHMARK(BM_KronApply);

static void BM_TfToDdSc(benchmark::State& st) {
    const cvec y = random_vec(1024, 3);
    for (auto _ : st) benchmark::DoNotOptimize(tf_to_dd_sc(y, 256, 4));
}
BENCHMARK(BM_TfToDdSc);

static void BM_GammaSolverBuild(benchmark::State& st) {
    const SimConfig c = default_config();
    for (auto _ : st) benchmark::DoNotOptimize(srs_gamma_solver(c));
}
BENCHMARK(BM_GammaSolverBuild)->Unit(benchmark::kMillisecond);

static void BM_GammaSolve(benchmark::State& st) {
    const SimConfig c = default_config();
    const GammaSolver s = srs_gamma_solver(c);
    const cvec y = random_vec(c.M_o, 4);
    for (auto _ : st) benchmark::DoNotOptimize(s.solve(y));
}
BENCHMARK(BM_GammaSolve);

static void BM_DenseGammaPinv(benchmark::State& st) {
    const SimConfig c = default_config();
    const GammaMatrix g = build_gamma(pilot_to_dd(srs_symbol_freq(c), c), c.L);
    for (auto _ : st) benchmark::DoNotOptimize(pinv(g.G));
}
BENCHMARK(BM_DenseGammaPinv)->Unit(benchmark::kMillisecond);

static void BM_ApplyChannel(benchmark::State& st) {
    const Scenario& s = scenario();
    Rng rng(5);
    for (auto _ : st) benchmark::DoNotOptimize(apply_channel(s.frame.s, s.frame.truth, s.cfg.sigma2(), rng));
}
BENCHMARK(BM_ApplyChannel)->Unit(benchmark::kMillisecond);

static void BM_Equalizer(benchmark::State& st) {
    const Scenario& s = scenario();
    const int n = s.cfg.data_symbols().front();
    const cvec y = dft(strip_symbol(s.frame.r, n, s.cfg), s.cfg.M_o);
    const cmat slice = truth_slice(s.frame, n, s.cfg);
    const auto kind = st.range(0) ? EqualizerKind::banded : EqualizerKind::dense;
    for (auto _ : st) benchmark::DoNotOptimize(equalize(y, slice, s.cfg.sigma2(), s.cfg.qam_order, kind));
    st.SetLabel(to_string(kind));
}
BENCHMARK(BM_Equalizer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_BemFit(benchmark::State& st) {
    const SimConfig c = default_config();
    const Scenario& s = scenario();
    CirStack stack;
    for (int n : c.srs_symbols()) {
        std::vector<double> t = block_times(n, c);
        cmat cirs(c.L, c.N);
        for (int b = 0; b < c.N; ++b) cirs.col(b) = s.frame.truth.H.col(static_cast<long>(t[static_cast<size_t>(b)]));
        stack.append(cirs, t);
    }
    for (auto _ : st) benchmark::DoNotOptimize(fit_bem(stack, c));
}
BENCHMARK(BM_BemFit)->Unit(benchmark::kMillisecond);

static void BM_BemPredictSymbol(benchmark::State& st) {
    const SimConfig c = default_config();
    BemModel m;
    m.upsilon_max = c.upsilon_max();
    m.Q = c.Q;
    m.T_s = c.T_s();
    m.A_hat = cmat::Random(c.L, c.Q + 1);
    for (auto _ : st) benchmark::DoNotOptimize(predict(m, 15 * c.M_T(), c.M_o));
}
BENCHMARK(BM_BemPredictSymbol)->Unit(benchmark::kMicrosecond);

static void BM_CampaignTrial(benchmark::State& st) {
    SimConfig c = default_config();
    c.speed_kmh = 360.0;
    c.equalizer = EqualizerKind::banded;
    const GammaSolver solver = srs_gamma_solver(c);
    const CampaignOptions opt{default_ber_targets(c), false};
    int t = 0;
    for (auto _ : st) benchmark::DoNotOptimize(campaign_trial(c, t++, opt, &solver));
}
BENCHMARK(BM_CampaignTrial)->Unit(benchmark::kSecond)->Iterations(2);

BENCHMARK_MAIN();
