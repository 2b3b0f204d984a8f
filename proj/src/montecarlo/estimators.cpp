// SPDX-License-Identifier: Apache-2.0
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

#include "uwsec/montecarlo/estimators.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/montecarlo/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>

namespace uwsec::mc {

namespace {

int resolve_threads(int threads)
{
    if (threads > 0)
        return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(c) for every chunk index; chunks are claimed dynamically, and
// callers store per-chunk results so that the merge order is fixed.
template <class F>
void run_chunks(std::int64_t chunks, int threads, F&& fn)
{
    const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), chunks));
    if (workers <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c)
            fn(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::int64_t c = next++; c < chunks; c = next++) {
                try {
                    fn(c);
                } catch (...) {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::int64_t chunk_count(std::int64_t n)
{
    return (n + kChunkSize - 1) / kChunkSize;
}

std::size_t chunk_length(std::int64_t n, std::int64_t c)
{
    return static_cast<std::size_t>(std::min(kChunkSize, n - c * kChunkSize));
}

RngSeed link_seed(const RngSeed& base, LinkStream link)
{
    return {base.seed, 8u * base.stream_id + static_cast<std::uint32_t>(link)};
}

std::function<double(Rng&)> uowc_sampler(const UowcLinkParams& p, UowcSampling mode)
{
    if (mode == UowcSampling::gamma_approx) {
        const RisCascadeStats s = gamma_approx(p);
        return [s, gbar = p.gbar](Rng& g) { return sample_ris_gamma_approx_snr(s, gbar, g); };
    }
    return [p](Rng& g) { return sample_ris_cascade_snr(p, g); };
}

void fill(std::vector<double>& out, Rng& rng, const std::function<double(Rng&)>& draw)
{
    for (double& v : out)
        v = draw(rng);
}

} // namespace

McEstimate proportion_estimate(std::uint64_t hits, std::int64_t n)
{
    require_domain(n > 0, "proportion_estimate: n must be > 0");
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

McEstimate mean_estimate(const std::vector<double>& x)
{
    require_domain(x.size() >= 2, "mean_estimate: need at least two samples");
    double s = 0.0, s2 = 0.0;
    for (double v : x)
        s += v;
    const double n = static_cast<double>(x.size());
    const double mean = s / n;
    for (double v : x)
        s2 += (v - mean) * (v - mean);
    const double sd = std::sqrt(s2 / (n - 1.0));
    return {mean, 3.0 * sd / std::sqrt(n), static_cast<std::int64_t>(x.size())};
}

SopEstimate estimate_sop(const ScenarioConfig& cfg, std::int64_t n, const McOptions& opts)
{
    cfg.validate();
    require_domain(n >= 10000, "estimate_sop: n must be >= 10000");
    const double phi = cfg.phi();
    const Scenario sc = cfg.scenario;
    const bool rf_eve = sc != Scenario::II;
    const bool uowc_eve = sc != Scenario::I;
    if (uowc_eve && opts.shared_first_hop) {
        require_domain(cfg.uowc_main.N == cfg.uowc_eve.N, "estimate_sop: shared first hop needs equal N");
        require_domain(opts.uowc == UowcSampling::physical, "estimate_sop: shared first hop needs physical sampling");
    }
    const auto draw_d = uowc_sampler(cfg.uowc_main, opts.uowc);
    const auto draw_t = uowc_sampler(cfg.uowc_eve, opts.uowc);

    const std::int64_t chunks = chunk_count(n);
    std::vector<std::uint64_t> lower(static_cast<std::size_t>(chunks)), exact(static_cast<std::size_t>(chunks));
    run_chunks(chunks, opts.threads, [&](std::int64_t c) {
        const std::size_t m = chunk_length(n, c);
        const auto chunk = static_cast<std::uint32_t>(c);
        const Kernels& k = kernels();
        std::vector<double> R(m), Dm(m), E, Et;

        Rng rr(link_seed(opts.seed, kStreamRfMain), chunk);
        fill(R, rr, [&](Rng& g) { return sample_kappa_mu_snr(cfg.rf_main, g); });
        if (rf_eve) {
            E.resize(m);
            Rng re(link_seed(opts.seed, kStreamRfEve), chunk);
            fill(E, re, [&](Rng& g) { return sample_kappa_mu_snr(cfg.rf_eve, g); });
        }
        Rng rd(link_seed(opts.seed, kStreamUowcMain), chunk);
        if (uowc_eve) {
            Et.resize(m);
            Rng rt(link_seed(opts.seed, kStreamUowcEve), chunk);
            if (opts.shared_first_hop) {
                Rng rs(link_seed(opts.seed, kStreamUowcShared), chunk);
                for (std::size_t i = 0; i < m; ++i)
                    std::tie(Dm[i], Et[i]) = sample_ris_cascade_pair(cfg.uowc_main, cfg.uowc_eve, rs, rd, rt);
            } else {
                fill(Dm, rd, draw_d);
                fill(Et, rt, draw_t);
            }
        } else {
            fill(Dm, rd, draw_d);
        }

        const auto ci = static_cast<std::size_t>(c);
        switch (sc) {
        case Scenario::I: {
            std::vector<double> mn(m), harm(m);
            k.combine_eq(R.data(), Dm.data(), m, mn.data(), harm.data());
            lower[ci] = k.count_le(mn.data(), E.data(), m, phi, 0.0);
            exact[ci] = k.count_le(harm.data(), E.data(), m, phi, phi - 1.0);
            break;
        }
        case Scenario::II: {
            const std::vector<double> zero(m, 0.0);
            lower[ci] = k.count_union(R.data(), zero.data(), phi - 1.0, Dm.data(), Et.data(), 0.0, m, phi);
            exact[ci] = k.count_union(R.data(), zero.data(), phi - 1.0, Dm.data(), Et.data(), phi - 1.0, m, phi);
            break;
        }
        case Scenario::III:
            lower[ci] = k.count_union(R.data(), E.data(), 0.0, Dm.data(), Et.data(), 0.0, m, phi);
            exact[ci] = k.count_union(R.data(), E.data(), phi - 1.0, Dm.data(), Et.data(), phi - 1.0, m, phi);
            break;
        }
    });
    std::uint64_t lo = 0, ex = 0;
    for (std::size_t c = 0; c < lower.size(); ++c) {
        lo += lower[c];
        ex += exact[c];
    }
    return {proportion_estimate(lo, n), proportion_estimate(ex, n)};
}

McEstimate estimate_asc(const ScenarioConfig& cfg, std::int64_t n, const McOptions& opts)
{
    cfg.validate();
    require_domain(n >= 10000, "estimate_asc: n must be >= 10000");
    const auto draw_d = uowc_sampler(cfg.uowc_main, opts.uowc);
    const std::int64_t chunks = chunk_count(n);
    std::vector<double> sums(static_cast<std::size_t>(chunks)), squares(static_cast<std::size_t>(chunks));
    run_chunks(chunks, opts.threads, [&](std::int64_t c) {
        const std::size_t m = chunk_length(n, c);
        const auto chunk = static_cast<std::uint32_t>(c);
        std::vector<double> R(m), Dm(m), E(m), mn(m), harm(m);
        Rng rr(link_seed(opts.seed, kStreamRfMain), chunk);
        fill(R, rr, [&](Rng& g) { return sample_kappa_mu_snr(cfg.rf_main, g); });
        Rng re(link_seed(opts.seed, kStreamRfEve), chunk);
        fill(E, re, [&](Rng& g) { return sample_kappa_mu_snr(cfg.rf_eve, g); });
        Rng rd(link_seed(opts.seed, kStreamUowcMain), chunk);
        fill(Dm, rd, draw_d);
        kernels().combine_eq(R.data(), Dm.data(), m, mn.data(), harm.data());
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double v = std::max(std::log1p(mn[i]) - std::log1p(E[i]), 0.0);
            s += v;
            s2 += v * v;
        }
        sums[static_cast<std::size_t>(c)] = s;
        squares[static_cast<std::size_t>(c)] = s2;
    });
    double s = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c < sums.size(); ++c) {
        s += sums[c];
        s2 += squares[c];
    }
    const double nn = static_cast<double>(n);
    const double mean = s / nn;
    const double var = std::max(s2 / nn - mean * mean, 0.0) * nn / (nn - 1.0);
    return {mean, 3.0 * std::sqrt(var / nn), n};
}

std::vector<double> sample_batch(const std::function<double(Rng&)>& draw, std::int64_t n, RngSeed seed,
                                 int threads)
{
    require_domain(n > 0, "sample_batch: n must be > 0");
    std::vector<double> out(static_cast<std::size_t>(n));
    run_chunks(chunk_count(n), threads, [&](std::int64_t c) {
        Rng rng(seed, static_cast<std::uint32_t>(c));
        const std::size_t first = static_cast<std::size_t>(c * kChunkSize);
        const std::size_t m = chunk_length(n, c);
        for (std::size_t i = 0; i < m; ++i)
            out[first + i] = draw(rng);
    });
    return out;
}

std::vector<double> sample_rf_snr(const RfLinkParams& p, std::int64_t n, RngSeed seed, int threads)
{
    p.validate();
    return sample_batch([&](Rng& g) { return sample_kappa_mu_snr(p, g); }, n, seed, threads);
}

std::vector<double> sample_uowc_snr(const UowcLinkParams& p, std::int64_t n, RngSeed seed, int threads)
{
    p.validate();
    return sample_batch([&](Rng& g) { return sample_ris_cascade_snr(p, g); }, n, seed, threads);
}

std::vector<double> sample_rwp(const RfLinkParams& p, std::int64_t n, RngSeed seed, int threads)
{
    p.validate();
    return sample_batch([&](Rng& g) { return sample_rwp_distance(p, g); }, n, seed, threads);
}

std::vector<double> sample_megg_product(const MeggParams& hop1, const MeggParams& hop2, std::int64_t n,
                                        RngSeed seed, int threads)
{
    hop1.validate();
    hop2.validate();
    return sample_batch(
        [&](Rng& g) {
            const double a = sample_megg_coefficient(hop1, g);
            return a * sample_megg_coefficient(hop2, g);
        },
        n, seed, threads);
}

double sup_cdf_gap(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    require_domain(!samples.empty(), "sup_cdf_gap: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        gap = std::max({gap, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return gap;
}

double dkw_radius(std::int64_t n, double confidence)
{
    require_domain(n > 0 && confidence > 0.0 && confidence < 1.0, "dkw_radius: invalid arguments");
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

} // namespace uwsec::mc
