// SPDX-License-Identifier: Apache-2.0
//
// orthoris - channel orthogonalization with reconfigurable surfaces
// Copyright (C) 2026 The orthoris authors
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


#include "orthoris/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "orthoris/estimation.hpp"
#include "orthoris/matcore.hpp"
#include "orthoris/random.hpp"

namespace orthoris
{
    std::string to_string(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::gain:
            return "gain";
        case ExperimentKind::csi:
            return "csi";
        case ExperimentKind::rician:
            return "rician";
        }
        return "unknown";
    }

    std::vector<KindSpec> parse_kinds(const std::string &text)
    {
        std::vector<KindSpec> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                       item.end());
            if (item.empty())
                continue;
            KindSpec k;
            const auto colon = item.find(':');
            std::string name = item.substr(0, colon);
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return char(std::tolower(c)); });
            if (colon != std::string::npos)
            {
                const std::string n = item.substr(colon + 1);
                char *end = nullptr;
                const long v = std::strtol(n.c_str(), &end, 10);
                if (n.empty() || *end != '\0' || v < 1)
                    throw Error(Errc::invalid_argument, "kinds: bad element count in '" + item + "'");
                k.N = Index(v);
            }
            if (name == "mrc" || name == "zf")
            {
                if (k.N != 0)
                    throw Error(Errc::invalid_argument, "kinds: baseline '" + name + "' takes no element count");
                k.label = name;
            }
            else
            {
                k.kind = parse_rs_kind(name);
                k.label = to_string(*k.kind);
            }
            out.push_back(std::move(k));
        }
        if (out.empty())
            throw Error(Errc::invalid_argument, "kinds: empty list");
        return out;
    }

    std::vector<double> SweepSpec::sweep_values() const
    {
        if (!(sweep_step > 0.0) || !(sweep_hi >= sweep_lo) || !std::isfinite(sweep_lo) || !std::isfinite(sweep_hi))
            throw Error(Errc::invalid_argument, "sweep range must satisfy lo <= hi and step > 0");
        std::vector<double> v;
        const double n = std::floor((sweep_hi - sweep_lo) / sweep_step + 1e-9);
        if (n > 1e6)
            throw Error(Errc::invalid_argument, "sweep range has too many points");
        for (int i = 0; i <= int(n); ++i)
            v.push_back(sweep_lo + double(i) * sweep_step);
        return v;
    }

    void SweepSpec::validate() const
    {
        if (trials < 1)
            throw Error(Errc::invalid_argument, "trials must be >= 1");
        if (M < 1 || K < 1)
            throw Error(Errc::invalid_argument, "M and K must be >= 1");
        if (kinds.empty())
            throw Error(Errc::invalid_argument, "no kinds selected");
        (void)sweep_values();
        for (const KindSpec &k : kinds)
        {
            if (!k.kind && experiment != ExperimentKind::rician)
                throw Error(Errc::invalid_argument, "baseline '" + k.label + "' is only available in the rician sweep");
            if (k.kind == RsKind::ris && experiment == ExperimentKind::csi)
                throw Error(Errc::invalid_argument, "the csi sweep has no estimation-based ris design");
        }
    }
} // namespace orthoris

namespace orthoris::experiments
{
    int worker_count(int requested, int trials)
    {
        int n = requested > 0 ? requested : int(std::max(1u, std::thread::hardware_concurrency()));
        if (const char *env = std::getenv("ORTHORIS_THREADS"))
        {
            const int cap = std::atoi(env);
            if (cap >= 1)
                n = std::min(n, cap);
        }
        return std::max(1, std::min(n, trials));
    }

    std::string format_number(double x)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", x);
        return buf;
    }

    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

        struct Column
        {
            KindSpec spec;
            Index N = 0;
        };

        std::vector<Column> resolve_columns(const SweepSpec &spec, Index rician_N)
        {
            std::vector<Column> cols;
            for (const KindSpec &k : spec.kinds)
            {
                Column c{k, 0};
                if (!k.kind)
                    c.N = 0;
                else if (spec.experiment == ExperimentKind::rician)
                    c.N = rician_N;
                else if (k.N > 0)
                    c.N = k.N;
                else if (*k.kind == RsKind::ris)
                    c.N = spec.M * spec.K;
                else
                    c.N = solvers::min_elements(*k.kind, spec.M, spec.K);
                cols.push_back(c);
            }
            return cols;
        }

        // Runs body(t) for t in [0, trials) on `workers` threads; results land
        // in per-trial slots so the reduction order never depends on scheduling.
        template <class Body>
        std::vector<std::vector<TrialRecord>> for_each_trial(int trials, int workers, Body body)
        {
            std::vector<std::vector<TrialRecord>> slots(static_cast<std::size_t>(trials));
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
            std::atomic<int> next{0};
            auto work = [&] {
                for (int t = next++; t < trials; t = next++)
                {
                    try
                    {
                        slots[std::size_t(t)] = body(t);
                    }
                    catch (...)
                    {
                        errors[std::size_t(t)] = std::current_exception();
                    }
                }
            };
            if (workers <= 1)
                work();
            else
            {
                std::vector<std::thread> pool;
                for (int w = 0; w < workers; ++w)
                    pool.emplace_back(work);
                for (std::thread &th : pool)
                    th.join();
            }
            for (const std::exception_ptr &e : errors)
                if (e)
                    std::rethrow_exception(e);
            return slots;
        }

        void set_rates(TrialRecord &r, const RateReport &rates)
        {
            r.rate_mean = rates.mean;
            r.rate_min = rates.min;
            r.rate_max = rates.max;
        }

        void set_equal_rates(TrialRecord &r, double beta, double snr)
        {
            const double v = r.failed ? 0.0 : std::log2(1.0 + beta * snr);
            r.rate_mean = r.rate_min = r.rate_max = v;
        }

        double mean_squared_singular(const CMatrix &H)
        {
            return H.squaredNorm() / double(std::min(H.rows(), H.cols()));
        }

        SelectionOptions selection_options(const SweepSpec &spec, int trial, std::size_t column)
        {
            SelectionOptions o;
            o.mode = spec.mode;
            o.random_seed = rng::mix(rng::mix(spec.seed ^ 0x5e1ec7ULL) + std::uint64_t(trial) * 1315423911ULL + column);
            return o;
        }

        // Selection on a map for one H0; failures (including numerical
        // breakdown of the search) count as failed trials.
        struct Designed
        {
            bool ok = false;
            double beta = 0.0;
            CMatrix theta;
        };

        Designed design(const EffectiveMap &map, const CMatrix &H0, const SelectionOptions &opts)
        {
            Designed d;
            if (!map.rank_feasible())
                return d;
            try
            {
                const SelectionOutcome out = selection::select_channel(map, H0, opts);
                d.ok = out.orthogonalized();
                d.beta = out.gain();
                d.theta = out.theta;
            }
            catch (const Error &e)
            {
                if (e.code() == Errc::invalid_argument || e.code() == Errc::dimension_mismatch)
                    throw;
            }
            return d;
        }

        ExperimentResult reduce(const SweepSpec &spec, const std::vector<double> &points,
                                const std::vector<Column> &cols, const std::vector<std::vector<TrialRecord>> &slots)
        {
            ExperimentResult res;
            const std::size_t C = cols.size();
            for (std::size_t p = 0; p < points.size(); ++p)
                for (std::size_t c = 0; c < C; ++c)
                {
                    ExperimentRow row;
                    row.sweep_value = points[p];
                    row.kind = cols[c].spec.label;
                    row.N = cols[c].N;
                    row.trials = spec.trials;
                    row.seed = spec.seed;
                    double beta = 0.0, fails = 0.0, cond = 0.0, rm = 0.0, rmin = 0.0, rmax = 0.0;
                    int ncond = 0;
                    for (const std::vector<TrialRecord> &slot : slots)
                    {
                        const TrialRecord &r = slot[p * C + c];
                        beta += r.beta;
                        fails += r.failed ? 1.0 : 0.0;
                        if (!r.failed && std::isfinite(r.cond_db))
                        {
                            cond += r.cond_db;
                            ++ncond;
                        }
                        rm += r.rate_mean;
                        rmin += r.rate_min;
                        rmax += r.rate_max;
                        res.trials.push_back(r);
                    }
                    const double T = double(spec.trials);
                    row.mean_beta = beta / T;
                    row.p_fail = fails / T;
                    row.mean_cond_db = ncond > 0 ? cond / double(ncond) : nan;
                    row.rate_mean = rm / T;
                    row.rate_min = rmin / T;
                    row.rate_max = rmax / T;
                    res.rows.push_back(row);
                }
            return res;
        }

        TrialRecord blank(double value, const Column &col, int trial)
        {
            TrialRecord r;
            r.sweep_value = value;
            r.kind = col.spec.label;
            r.N = col.N;
            r.trial = trial;
            return r;
        }
    } // namespace

    ExperimentResult run_gain_sweep(const SweepSpec &spec_in)
    {
        SweepSpec spec = spec_in;
        spec.experiment = ExperimentKind::gain;
        spec.validate();
        const std::vector<double> points = spec.sweep_values();
        const std::vector<Column> cols = resolve_columns(spec, 0);
        const std::size_t P = points.size(), C = cols.size();
        const double snr = db_to_linear(spec.snr_db);

        auto body = [&](int t) {
            std::vector<TrialRecord> recs(P * C);
            for (std::size_t c = 0; c < C; ++c)
            {
                const Column &col = cols[c];
                std::mt19937_64 g = rng::stream(spec.seed, std::uint64_t(t), c + 1);
                ChannelTriple ch = scenarios::gen_rayleigh({spec.M, spec.K, col.N, 1.0}, g);
                const CMatrix G0 = ch.H0;
                const RsKind kind = *col.spec.kind;

                std::optional<EffectiveMap> map;
                if (kind != RsKind::ris)
                    map = solvers::build_effective_map(kind, ch.H1, ch.H2);

                for (std::size_t p = 0; p < P; ++p)
                {
                    TrialRecord r = blank(points[p], col, t);
                    ch.H0 = std::sqrt(db_to_linear(points[p])) * G0;
                    if (kind == RsKind::ris)
                    {
                        RisBaselineOptions bo;
                        bo.seed = rng::mix(spec.seed + 7919ULL * std::uint64_t(t) + c);
                        const RisBaselineResult b = scenarios::ris_phase_baseline(ch, bo);
                        const CMatrix H = ch.channel(b.theta);
                        r.beta = mean_squared_singular(H);
                        r.cond_db = matcore::condition_number_db(H);
                        set_rates(r, scenarios::mrc_rates(H, snr));
                    }
                    else
                    {
                        const Designed d = design(*map, ch.H0, selection_options(spec, t, c));
                        r.failed = !d.ok;
                        r.beta = d.beta;
                        r.cond_db = d.ok ? matcore::condition_number_db(ch.channel(d.theta)) : nan;
                        set_equal_rates(r, d.beta, snr);
                    }
                    recs[p * C + c] = std::move(r);
                }
            }
            return recs;
        };
        return reduce(spec, points, cols, for_each_trial(spec.trials, worker_count(spec.threads, spec.trials), body));
    }

    ExperimentResult run_csi_sweep(const SweepSpec &spec_in)
    {
        SweepSpec spec = spec_in;
        spec.experiment = ExperimentKind::csi;
        spec.validate();
        const std::vector<double> points = spec.sweep_values();
        const std::vector<Column> cols = resolve_columns(spec, 0);
        const std::size_t P = points.size(), C = cols.size();
        const PilotMatrix pilots = PilotMatrix::dft(spec.K, 1.0);

        auto body = [&](int t) {
            std::vector<TrialRecord> recs(P * C);
            for (std::size_t c = 0; c < C; ++c)
            {
                const Column &col = cols[c];
                std::mt19937_64 g = rng::stream(spec.seed, std::uint64_t(t), c + 1);
                const ChannelTriple ch = scenarios::gen_rayleigh({spec.M, spec.K, col.N, 0.0}, g);
                const CMatrix zero = CMatrix::Zero(spec.M, spec.K);

                for (std::size_t p = 0; p < P; ++p)
                {
                    TrialRecord r = blank(points[p], col, t);
                    const double snr = db_to_linear(points[p]);
                    // same noise stream at every SNR point, only its scale changes
                    std::mt19937_64 noise = rng::stream(spec.seed, std::uint64_t(t), 1000 + c);
                    const EstimationResult est =
                        estimation::estimate_effective_map(*col.spec.kind, ch, zero, pilots, 1.0 / snr, noise);
                    const Designed d = design(est.to_map(), zero, selection_options(spec, t, c));
                    r.failed = !d.ok;
                    r.beta = d.beta;
                    if (d.ok)
                    {
                        const CMatrix H = ch.channel(d.theta);
                        r.cond_db = matcore::condition_number_db(H);
                        set_rates(r, scenarios::mrc_rates(H, snr));
                    }
                    else
                        r.cond_db = nan;
                    recs[p * C + c] = std::move(r);
                }
            }
            return recs;
        };
        return reduce(spec, points, cols, for_each_trial(spec.trials, worker_count(spec.threads, spec.trials), body));
    }

    ExperimentResult run_rician_sweep(const SweepSpec &spec_in)
    {
        SweepSpec spec = spec_in;
        spec.experiment = ExperimentKind::rician;
        spec.rician.K = spec.K;
        spec.rician.blockage_db = spec.blockage_db;
        spec.validate();
        const RicianGeometry geometry(spec.rician);
        spec.M = spec.rician.M();
        const std::vector<double> points = spec.sweep_values();
        const std::vector<Column> cols = resolve_columns(spec, spec.rician.N());
        const std::size_t P = points.size(), C = cols.size();

        auto body = [&](int t) {
            std::vector<TrialRecord> recs(P * C);
            std::mt19937_64 g = rng::stream(spec.seed, std::uint64_t(t), 1);
            const ChannelTriple ch = scenarios::gen_rician(geometry, g);
            for (std::size_t c = 0; c < C; ++c)
            {
                const Column &col = cols[c];
                if (!col.spec.kind)
                {
                    const bool zf = col.spec.label == "zf";
                    const double beta = mean_squared_singular(ch.H0);
                    const double cond = matcore::condition_number_db(ch.H0);
                    for (std::size_t p = 0; p < P; ++p)
                    {
                        TrialRecord r = blank(points[p], col, t);
                        const double snr = db_to_linear(points[p]);
                        r.beta = beta;
                        r.cond_db = cond;
                        set_rates(r, zf ? scenarios::zf_rates(ch.H0, snr) : scenarios::mrc_rates(ch.H0, snr));
                        recs[p * C + c] = std::move(r);
                    }
                    continue;
                }

                const RsKind kind = *col.spec.kind;
                if (kind == RsKind::ris)
                {
                    RisBaselineOptions bo;
                    bo.seed = rng::mix(spec.seed + 7919ULL * std::uint64_t(t) + c);
                    const CMatrix H = ch.channel(scenarios::ris_phase_baseline(ch, bo).theta);
                    for (std::size_t p = 0; p < P; ++p)
                    {
                        TrialRecord r = blank(points[p], col, t);
                        r.beta = mean_squared_singular(H);
                        r.cond_db = matcore::condition_number_db(H);
                        set_rates(r, scenarios::mrc_rates(H, db_to_linear(points[p])));
                        recs[p * C + c] = std::move(r);
                    }
                    continue;
                }

                const EffectiveMap map = solvers::build_effective_map(kind, ch.H1, ch.H2);
                const Designed d = design(map, ch.H0, selection_options(spec, t, c));
                const double cond = d.ok ? matcore::condition_number_db(ch.channel(d.theta)) : nan;
                for (std::size_t p = 0; p < P; ++p)
                {
                    TrialRecord r = blank(points[p], col, t);
                    r.failed = !d.ok;
                    r.beta = d.beta;
                    r.cond_db = cond;
                    set_equal_rates(r, d.beta, db_to_linear(points[p]));
                    recs[p * C + c] = std::move(r);
                }
            }
            return recs;
        };
        return reduce(spec, points, cols, for_each_trial(spec.trials, worker_count(spec.threads, spec.trials), body));
    }

    ExperimentResult run(const SweepSpec &spec)
    {
        switch (spec.experiment)
        {
        case ExperimentKind::gain:
            return run_gain_sweep(spec);
        case ExperimentKind::csi:
            return run_csi_sweep(spec);
        case ExperimentKind::rician:
            return run_rician_sweep(spec);
        }
        throw Error(Errc::invalid_argument, "unknown experiment");
    }

    void write_csv(std::ostream &os, const std::vector<ExperimentRow> &rows)
    {
        os << "sweep_value,kind,N,mean_beta,p_fail,mean_cond_db,rate_mean,rate_min,rate_max,trials,seed\n";
        for (const ExperimentRow &r : rows)
            os << format_number(r.sweep_value) << ',' << r.kind << ',' << r.N << ',' << format_number(r.mean_beta) << ','
               << format_number(r.p_fail) << ',' << format_number(r.mean_cond_db) << ',' << format_number(r.rate_mean)
               << ',' << format_number(r.rate_min) << ',' << format_number(r.rate_max) << ',' << r.trials << ','
               << r.seed << '\n';
    }

    void write_trial_log(std::ostream &os, const std::vector<TrialRecord> &trials)
    {
        os << "sweep_value,kind,N,trial,beta,failed,cond_db,rate_mean,rate_min,rate_max\n";
        for (const TrialRecord &r : trials)
            os << format_number(r.sweep_value) << ',' << r.kind << ',' << r.N << ',' << r.trial << ','
               << format_number(r.beta) << ',' << (r.failed ? 1 : 0) << ',' << format_number(r.cond_db) << ','
               << format_number(r.rate_mean) << ',' << format_number(r.rate_min) << ',' << format_number(r.rate_max)
               << '\n';
    }

} // namespace orthoris::experiments
