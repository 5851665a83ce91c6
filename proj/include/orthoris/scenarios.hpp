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

#include <array>
#include <limits>
#include <random>
#include <vector>

#include "orthoris/solvers.hpp"
#include "orthoris/types.hpp"

namespace orthoris
{
    // IID Rayleigh: H1, H2 ~ CN(0, 1), H0 ~ CN(0, eta) element-wise.
    struct RayleighConfig
    {
        Index M = 4, K = 2, N = 8;
        double eta = 0.0; // linear direct-channel element power
    };

    // Indoor room, all lengths in wavelengths. Panels are planar arrays whose
    // elements are spaced `spacing` apart; rows run along z.
    struct RicianConfig
    {
        double frequency_hz = 3e9;
        double rician_factor_db = 5.0; // +inf: pure LoS
        double room_x = 30.0, room_y = 30.0;
        double spacing = 0.5;

        // BS on the x = 0 wall, facing +x
        std::array<double, 3> bs_center{0.0, 28.5, 10.0};
        Index bs_rows = 2, bs_cols = 2;
        // RS on the y = room_y wall, facing -y
        std::array<double, 3> rs_center{1.5, 30.0, 10.0};
        Index rs_rows = 2, rs_cols = 6;

        Index K = 3;
        // UE area: x in [ue_x0, ue_x1], y in [ue_y0, ue_y1], height ue_z
        double ue_x0 = 8.0, ue_x1 = 26.0, ue_y0 = 4.0, ue_y1 = 26.0, ue_z = 5.0;

        double blockage_db = 0.0; // +inf: H0 = 0

        int calibration_draws = 1000;
        std::uint64_t calibration_seed = 0x0c0ffee;

        Index M() const { return bs_rows * bs_cols; }
        Index N() const { return rs_rows * rs_cols; }
    };

    using Point = std::array<double, 3>;

    // Element positions and the normalization constant for one RicianConfig.
    class RicianGeometry
    {
    public:
        explicit RicianGeometry(const RicianConfig &cfg);

        const RicianConfig &config() const { return cfg_; }
        const std::vector<Point> &bs_elements() const { return bs_; }
        const std::vector<Point> &rs_elements() const { return rs_; }

        // mean ||H0||_F^2 / (MK) of the unnormalized, unblocked direct link
        double calibration() const { return calibration_; }

        std::vector<Point> draw_ue_positions(std::mt19937_64 &rng) const;

        // Channels for given UE positions; H0 and H1 carry 1/sqrt(calibration)
        // so the configured SNR is the mean direct-link SNR per BS element.
        ChannelTriple channels(const std::vector<Point> &ues, std::mt19937_64 &rng) const;

        // Unnormalized amplitude between two elements (throws Errc::geometry at zero distance).
        double link_amplitude(const Point &tx, const Point &rx, const Point *tx_normal, const Point *rx_normal) const;

    private:
        ChannelTriple raw_channels(const std::vector<Point> &ues, std::mt19937_64 &rng) const;

        RicianConfig cfg_;
        std::vector<Point> bs_, rs_;
        double calibration_ = 1.0;
    };

    struct RateReport
    {
        std::vector<double> per_ue;
        double mean = 0.0, min = 0.0, max = 0.0;

        static RateReport from(std::vector<double> rates);
    };

    struct RisBaselineOptions
    {
        int iterations = 200;
        int restarts = 5; // the first restart starts from Theta = I
        double initial_step = 0.5;
        std::uint64_t seed = 1;
    };

    struct RisBaselineResult
    {
        CMatrix theta;                 // N x N diagonal, unit modulus
        double condition_number = 0.0; // of H0 + H1 Theta H2
        std::vector<double> trace;     // accepted objective values of the winning restart
    };

} // namespace orthoris

namespace orthoris::scenarios
{
    // Draw order H1, H2, G0 with H0 = sqrt(eta) G0, so the same stream gives the
    // same fading for every eta.
    ChannelTriple gen_rayleigh(const RayleighConfig &cfg, std::mt19937_64 &rng);

    ChannelTriple gen_rician(const RicianGeometry &geometry, std::mt19937_64 &rng);
    ChannelTriple gen_rician(const RicianConfig &cfg, std::mt19937_64 &rng);

    RateReport mrc_rates(const CMatrix &H, double snr);
    // rank-deficient H: all rates 0
    RateReport zf_rates(const CMatrix &H, double snr);

    // Phase-only RIS minimizing cond(H0 + H1 diag(e^{j phi}) H2).
    RisBaselineResult ris_phase_baseline(const ChannelTriple &channels, const RisBaselineOptions &opts = {});

} // namespace orthoris::scenarios
