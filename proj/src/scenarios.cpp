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


#include "orthoris/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "orthoris/matcore.hpp"
#include "orthoris/random.hpp"

namespace orthoris
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        const Point bs_normal{1.0, 0.0, 0.0};
        const Point rs_normal{0.0, -1.0, 0.0};

        double distance(const Point &a, const Point &b)
        {
            const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
            return std::sqrt(dx * dx + dy * dy + dz * dz);
        }

        // element gain of a lambda/2 aperture: pi cos(theta), 0 behind the panel
        double aperture_gain(const Point &self, const Point &normal, const Point &other, double d)
        {
            const double c = (normal[0] * (other[0] - self[0]) + normal[1] * (other[1] - self[1]) +
                              normal[2] * (other[2] - self[2])) /
                             d;
            return pi * std::max(0.0, c);
        }
    } // namespace

    RicianGeometry::RicianGeometry(const RicianConfig &cfg) : cfg_(cfg)
    {
        if (cfg.bs_rows < 1 || cfg.bs_cols < 1 || cfg.rs_rows < 1 || cfg.rs_cols < 1 || cfg.K < 1)
            throw Error(Errc::invalid_argument, "rician: panel dimensions and K must be >= 1");
        if (!(cfg.spacing > 0.0) || cfg.calibration_draws < 1)
            throw Error(Errc::invalid_argument, "rician: spacing > 0 and calibration_draws >= 1 required");
        if (cfg.ue_x1 < cfg.ue_x0 || cfg.ue_y1 < cfg.ue_y0)
            throw Error(Errc::geometry, "rician: empty UE area");

        for (Index r = 0; r < cfg.bs_rows; ++r)
            for (Index c = 0; c < cfg.bs_cols; ++c)
                bs_.push_back({cfg.bs_center[0], cfg.bs_center[1] + (double(c) - 0.5 * double(cfg.bs_cols - 1)) * cfg.spacing,
                               cfg.bs_center[2] + (double(r) - 0.5 * double(cfg.bs_rows - 1)) * cfg.spacing});
        for (Index r = 0; r < cfg.rs_rows; ++r)
            for (Index c = 0; c < cfg.rs_cols; ++c)
                rs_.push_back({cfg.rs_center[0] + (double(c) - 0.5 * double(cfg.rs_cols - 1)) * cfg.spacing,
                               cfg.rs_center[1],
                               cfg.rs_center[2] + (double(r) - 0.5 * double(cfg.rs_rows - 1)) * cfg.spacing});

        std::mt19937_64 rng = rng::stream(cfg.calibration_seed, 0, 0xca1);
        double acc = 0.0;
        for (int t = 0; t < cfg.calibration_draws; ++t)
        {
            const ChannelTriple raw = raw_channels(draw_ue_positions(rng), rng);
            acc += raw.H0.squaredNorm() / double(raw.H0.size());
        }
        calibration_ = acc / double(cfg.calibration_draws);
        if (!(calibration_ > 0.0))
            throw Error(Errc::geometry, "rician: the UE area has no direct path to the BS panel");
    }

    std::vector<Point> RicianGeometry::draw_ue_positions(std::mt19937_64 &rng) const
    {
        std::uniform_real_distribution<double> ux(cfg_.ue_x0, cfg_.ue_x1), uy(cfg_.ue_y0, cfg_.ue_y1);
        std::vector<Point> ues;
        for (Index k = 0; k < cfg_.K; ++k)
        {
            const double x = ux(rng);
            const double y = uy(rng);
            ues.push_back({x, y, cfg_.ue_z});
        }
        return ues;
    }

    double RicianGeometry::link_amplitude(const Point &tx, const Point &rx, const Point *tx_normal,
                                          const Point *rx_normal) const
    {
        const double d = distance(tx, rx);
        if (!(d > 1e-9))
            throw Error(Errc::geometry, "rician: zero distance between a UE and a panel element");
        double gain = 1.0;
        if (tx_normal)
            gain *= aperture_gain(tx, *tx_normal, rx, d);
        if (rx_normal)
            gain *= aperture_gain(rx, *rx_normal, tx, d);
        return std::sqrt(gain) / (4.0 * pi * d);
    }

    ChannelTriple RicianGeometry::raw_channels(const std::vector<Point> &ues, std::mt19937_64 &rng) const
    {
        if (Index(ues.size()) != cfg_.K)
            throw Error(Errc::dimension_mismatch, "rician: need K UE positions");
        const double kappa = std::pow(10.0, cfg_.rician_factor_db / 10.0);
        const bool pure_los = std::isinf(kappa);
        const double w_los = pure_los ? 1.0 : std::sqrt(kappa / (1.0 + kappa));
        const double w_nlos = pure_los ? 0.0 : std::sqrt(1.0 / (1.0 + kappa));

        // the fading draw is consumed even for pure LoS so streams stay aligned
        auto entry = [&](const Point &tx, const Point &rx, const Point *ntx, const Point *nrx) {
            const cplx z = rng::complex_gaussian(rng);
            const double a = link_amplitude(tx, rx, ntx, nrx);
            const cplx los = std::polar(1.0, -2.0 * pi * distance(tx, rx));
            return a * (w_los * los + w_nlos * z);
        };

        const Index M = cfg_.M(), N = cfg_.N(), K = cfg_.K;
        ChannelTriple ch;
        ch.H0.resize(M, K);
        ch.H1.resize(M, N);
        ch.H2.resize(N, K);
        for (Index k = 0; k < K; ++k)
            for (Index m = 0; m < M; ++m)
                ch.H0(m, k) = entry(ues[std::size_t(k)], bs_[std::size_t(m)], nullptr, &bs_normal);
        for (Index n = 0; n < N; ++n)
            for (Index m = 0; m < M; ++m)
                ch.H1(m, n) = entry(rs_[std::size_t(n)], bs_[std::size_t(m)], &rs_normal, &bs_normal);
        for (Index k = 0; k < K; ++k)
            for (Index n = 0; n < N; ++n)
                ch.H2(n, k) = entry(ues[std::size_t(k)], rs_[std::size_t(n)], nullptr, &rs_normal);
        return ch;
    }

    ChannelTriple RicianGeometry::channels(const std::vector<Point> &ues, std::mt19937_64 &rng) const
    {
        ChannelTriple ch = raw_channels(ues, rng);
        const double s = 1.0 / std::sqrt(calibration_);
        const double blockage = std::isinf(cfg_.blockage_db) ? 0.0 : std::pow(10.0, -cfg_.blockage_db / 20.0);
        ch.H0 *= s * blockage;
        ch.H1 *= s;
        return ch;
    }

    RateReport RateReport::from(std::vector<double> rates)
    {
        RateReport r;
        r.per_ue = std::move(rates);
        if (r.per_ue.empty())
            return r;
        r.mean = std::accumulate(r.per_ue.begin(), r.per_ue.end(), 0.0) / double(r.per_ue.size());
        const auto [lo, hi] = std::minmax_element(r.per_ue.begin(), r.per_ue.end());
        r.min = *lo;
        r.max = *hi;
        return r;
    }

} // namespace orthoris

namespace orthoris::scenarios
{
    ChannelTriple gen_rayleigh(const RayleighConfig &cfg, std::mt19937_64 &rng)
    {
        if (cfg.M < 1 || cfg.K < 1 || cfg.N < 1)
            throw Error(Errc::invalid_argument, "gen_rayleigh: M, K, N must be >= 1");
        if (!(cfg.eta >= 0.0))
            throw Error(Errc::invalid_argument, "gen_rayleigh: eta must be >= 0");
        ChannelTriple ch;
        ch.H1 = rng::complex_gaussian(rng, cfg.M, cfg.N);
        ch.H2 = rng::complex_gaussian(rng, cfg.N, cfg.K);
        ch.H0 = std::sqrt(cfg.eta) * rng::complex_gaussian(rng, cfg.M, cfg.K);
        return ch;
    }

    ChannelTriple gen_rician(const RicianGeometry &geometry, std::mt19937_64 &rng)
    {
        const std::vector<Point> ues = geometry.draw_ue_positions(rng);
        return geometry.channels(ues, rng);
    }

    ChannelTriple gen_rician(const RicianConfig &cfg, std::mt19937_64 &rng)
    {
        return gen_rician(RicianGeometry(cfg), rng);
    }

    RateReport mrc_rates(const CMatrix &H, double snr)
    {
        const Index K = H.cols();
        const CMatrix gram = H.adjoint() * H;
        std::vector<double> rates(std::size_t(K), 0.0);
        for (Index k = 0; k < K; ++k)
        {
            const double p = gram(k, k).real();
            if (!(p > 0.0))
                continue;
            double interference = 0.0;
            for (Index j = 0; j < K; ++j)
                if (j != k)
                    interference += std::norm(gram(k, j));
            const double sinr = snr * p * p / (snr * interference + p);
            rates[std::size_t(k)] = std::log2(1.0 + sinr);
        }
        return RateReport::from(std::move(rates));
    }

    RateReport zf_rates(const CMatrix &H, double snr)
    {
        const Index K = H.cols();
        std::vector<double> rates(std::size_t(K), 0.0);
        if (H.rows() >= K && matcore::numeric_rank(H, solvers::rank_cutoff) == K)
        {
            const CMatrix inv = (H.adjoint() * H).inverse();
            for (Index k = 0; k < K; ++k)
                rates[std::size_t(k)] = std::log2(1.0 + snr / inv(k, k).real());
        }
        return RateReport::from(std::move(rates));
    }

    namespace
    {
        struct CondEval
        {
            double cond = std::numeric_limits<double>::infinity();
            RVector grad;
        };

        CondEval condition_and_gradient(const ChannelTriple &ch, const RVector &phi, bool want_grad)
        {
            const Index N = ch.N();
            CVector d(N);
            for (Index n = 0; n < N; ++n)
                d(n) = std::polar(1.0, phi(n));
            const CMatrix H = ch.H0 + ch.H1 * d.asDiagonal() * ch.H2;

            CondEval e;
            Eigen::JacobiSVD<CMatrix> svd(H, want_grad ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0);
            const RVector &s = svd.singularValues();
            const Index r = s.size() - 1;
            if (!(s(r) > 0.0))
                return e;
            e.cond = s(0) / s(r);
            if (!want_grad)
                return e;

            // d sigma_i / d phi_n = Re(j e^{j phi_n} (u_i^H h1_n) (h2_n^T v_i))
            const CVector a1 = ch.H1.adjoint() * svd.matrixU().col(0);
            const CVector ar = ch.H1.adjoint() * svd.matrixU().col(r);
            const CVector b1 = ch.H2 * svd.matrixV().col(0);
            const CVector br = ch.H2 * svd.matrixV().col(r);
            e.grad.resize(N);
            for (Index n = 0; n < N; ++n)
            {
                const cplx jd = cplx(0.0, 1.0) * d(n);
                const double ds1 = (jd * std::conj(a1(n)) * b1(n)).real();
                const double dsr = (jd * std::conj(ar(n)) * br(n)).real();
                e.grad(n) = (ds1 * s(r) - s(0) * dsr) / (s(r) * s(r));
            }
            return e;
        }
    } // namespace

    RisBaselineResult ris_phase_baseline(const ChannelTriple &channels, const RisBaselineOptions &opts)
    {
        channels.validate();
        const Index N = channels.N();
        std::mt19937_64 rng = rng::stream(opts.seed, 0, 0x215);
        std::uniform_real_distribution<double> uphase(-pi, pi);

        RisBaselineResult best;
        RVector best_phi = RVector::Zero(N);
        best.condition_number = std::numeric_limits<double>::infinity();

        for (int restart = 0; restart < std::max(1, opts.restarts); ++restart)
        {
            RVector phi(N);
            for (Index n = 0; n < N; ++n)
                phi(n) = restart == 0 ? 0.0 : uphase(rng);

            CondEval cur = condition_and_gradient(channels, phi, true);
            std::vector<double> trace{cur.cond};
            double step = opts.initial_step;
            for (int it = 0; it < opts.iterations && std::isfinite(cur.cond); ++it)
            {
                const double gn = cur.grad.norm();
                if (!(gn > 1e-14))
                    break;
                const RVector trial_phi = phi - step * cur.grad;
                CondEval trial = condition_and_gradient(channels, trial_phi, true);
                if (trial.cond < cur.cond)
                {
                    phi = trial_phi;
                    cur = std::move(trial);
                    trace.push_back(cur.cond);
                    step *= 1.25;
                }
                else
                    step *= 0.5;
                if (step < 1e-14)
                    break;
            }
            if (cur.cond < best.condition_number || restart == 0)
            {
                best.condition_number = cur.cond;
                best.trace = std::move(trace);
                best_phi = phi;
            }
        }

        best.theta = CMatrix::Zero(N, N);
        for (Index n = 0; n < N; ++n)
            best.theta(n, n) = std::polar(1.0, best_phi(n));
        return best;
    }

} // namespace orthoris::scenarios
