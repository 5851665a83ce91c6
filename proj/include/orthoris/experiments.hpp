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


#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "orthoris/scenarios.hpp"
#include "orthoris/selection.hpp"
#include "orthoris/types.hpp"

namespace orthoris
{
    enum class ExperimentKind
    {
        gain,   // beta / failure rate vs direct power eta (dB), Rayleigh
        csi,    // condition number vs estimation SNR (dB), H0 = 0
        rician  // per-UE spectral efficiency vs SNR (dB), indoor room
    };

    std::string to_string(ExperimentKind kind);

    // One column of the sweep: an RS kind with N elements, or a no-RS
    // baseline receiver ("mrc", "zf") for the Rician sweep.
    struct KindSpec
    {
        std::string label;
        std::optional<RsKind> kind; // empty for baselines
        Index N = 0;                // 0: minimum for the kind
    };

    // "aris,bdris:8,fris,mrc" -> kind specs; throws Errc::invalid_argument.
    std::vector<KindSpec> parse_kinds(const std::string &text);

    struct SweepSpec
    {
        ExperimentKind experiment = ExperimentKind::gain;
        Index M = 4, K = 2;
        std::vector<KindSpec> kinds;
        double sweep_lo = -20.0, sweep_step = 5.0, sweep_hi = 10.0; // dB
        int trials = 200;
        std::uint64_t seed = 1;
        SelectionMode mode = SelectionMode::algorithm1;
        double snr_db = 10.0;      // gain sweep: SNR for the rate columns
        double blockage_db = 0.0;  // rician sweep
        RicianConfig rician;       // rician sweep geometry (K, blockage taken from here after resolve)
        int threads = 0;           // 0: hardware concurrency; capped by ORTHORIS_THREADS

        // Throws Errc::invalid_argument on an empty range, trials < 1, etc.
        std::vector<double> sweep_values() const;
        void validate() const;
    };

    struct ExperimentRow
    {
        double sweep_value = 0.0;
        std::string kind;
        Index N = 0;
        double mean_beta = 0.0;
        double p_fail = 0.0;
        double mean_cond_db = 0.0; // over successful trials, nan if none
        double rate_mean = 0.0, rate_min = 0.0, rate_max = 0.0;
        int trials = 0;
        std::uint64_t seed = 0;
    };

    struct TrialRecord
    {
        double sweep_value = 0.0;
        std::string kind;
        Index N = 0;
        int trial = 0;
        double beta = 0.0; // 0 on failure
        bool failed = false;
        double cond_db = 0.0;
        double rate_mean = 0.0, rate_min = 0.0, rate_max = 0.0;
    };

    struct ExperimentResult
    {
        std::vector<ExperimentRow> rows;
        std::vector<TrialRecord> trials; // sweep point, kind, trial order
    };

} // namespace orthoris

namespace orthoris::experiments
{
    // Worker count: requested (0 = hardware), capped by ORTHORIS_THREADS and trials.
    int worker_count(int requested, int trials);

    ExperimentResult run_gain_sweep(const SweepSpec &spec);
    ExperimentResult run_csi_sweep(const SweepSpec &spec);
    ExperimentResult run_rician_sweep(const SweepSpec &spec);
    ExperimentResult run(const SweepSpec &spec);

    void write_csv(std::ostream &os, const std::vector<ExperimentRow> &rows);
    void write_trial_log(std::ostream &os, const std::vector<TrialRecord> &trials);

    // printf("%.9g")
    std::string format_number(double x);

} // namespace orthoris::experiments
