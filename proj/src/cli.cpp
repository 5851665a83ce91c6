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


#include "orthoris/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthoris/estimation.hpp"
#include "orthoris/experiments.hpp"
#include "orthoris/kernels.hpp"
#include "orthoris/matcore.hpp"
#include "orthoris/random.hpp"
#include "orthoris/scenarios.hpp"
#include "orthoris/selection.hpp"

namespace orthoris
{
    namespace
    {
        using nlohmann::json;

        double parse_db(const std::string &s)
        {
            if (s == "inf" || s == "+inf" || s == "infinity")
                return std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used != s.size() || s.empty())
                throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
            return v;
        }

        // "lo:step:hi" or a single value
        void parse_range(const std::string &text, SweepSpec &spec)
        {
            std::vector<std::string> parts;
            std::stringstream ss(text);
            std::string p;
            while (std::getline(ss, p, ':'))
                parts.push_back(p);
            if (parts.size() == 1)
            {
                spec.sweep_lo = spec.sweep_hi = parse_db(parts[0]);
                spec.sweep_step = 1.0;
            }
            else if (parts.size() == 3)
            {
                spec.sweep_lo = parse_db(parts[0]);
                spec.sweep_step = parse_db(parts[1]);
                spec.sweep_hi = parse_db(parts[2]);
            }
            else
                throw Error(Errc::invalid_argument, "range must be lo:step:hi, got '" + text + "'");
            (void)spec.sweep_values();
        }

        CMatrix matrix_from_json(const json &j, const char *name)
        {
            if (!j.contains(name))
                throw Error(Errc::invalid_argument, std::string("input: missing matrix ") + name);
            const json &m = j.at(name);
            const json &re = m.at("re");
            const json im = m.contains("im") ? m.at("im") : json();
            const Index rows = Index(re.size());
            const Index cols = rows > 0 ? Index(re.at(0).size()) : 0;
            CMatrix A(rows, cols);
            for (Index r = 0; r < rows; ++r)
            {
                if (Index(re.at(r).size()) != cols)
                    throw Error(Errc::dimension_mismatch, std::string("input: ragged rows in ") + name);
                for (Index c = 0; c < cols; ++c)
                {
                    const double x = re.at(r).at(c).get<double>();
                    const double y = im.is_null() ? 0.0 : im.at(r).at(c).get<double>();
                    A(r, c) = cplx(x, y);
                }
            }
            return A;
        }

        json matrix_to_json(const CMatrix &A)
        {
            json re = json::array(), im = json::array();
            for (Index r = 0; r < A.rows(); ++r)
            {
                json rr = json::array(), ii = json::array();
                for (Index c = 0; c < A.cols(); ++c)
                {
                    rr.push_back(A(r, c).real());
                    ii.push_back(A(r, c).imag());
                }
                re.push_back(rr);
                im.push_back(ii);
            }
            return {{"re", re}, {"im", im}};
        }

        struct SweepArgs
        {
            SweepSpec spec;
            std::string kinds = "aris,bdris,fris";
            std::string range;
            std::string mode = "algorithm1";
            std::string blockage = "0";
            std::string out_path, trial_log;
        };

        void add_sweep_options(CLI::App *sub, SweepArgs &a, const char *range_flag, const char *range_help)
        {
            sub->add_option("--M", a.spec.M, "BS antennas")->check(CLI::PositiveNumber);
            sub->add_option("--K", a.spec.K, "UEs")->check(CLI::PositiveNumber);
            sub->add_option("--kinds", a.kinds, "comma list, kind[:N]; kinds ris, aris, bdris, fris (rician also mrc, zf)");
            sub->add_option(range_flag, a.range, range_help);
            sub->add_option("--trials", a.spec.trials, "trials per point")->check(CLI::PositiveNumber);
            sub->add_option("--seed", a.spec.seed, "master seed");
            sub->add_option("--mode", a.mode, "selection mode: algorithm1, simplified, random");
            sub->add_option("--threads", a.spec.threads, "worker threads (0 = all cores; capped by ORTHORIS_THREADS)");
            sub->add_option("--out", a.out_path, "CSV output path (default stdout)");
            sub->add_option("--trial-log", a.trial_log, "per-trial CSV log path");
        }

        int emit(const SweepArgs &a, const ExperimentResult &res, std::ostream &out)
        {
            if (a.out_path.empty())
                experiments::write_csv(out, res.rows);
            else
            {
                std::ofstream f(a.out_path, std::ios::binary);
                if (!f)
                    throw Error(Errc::invalid_argument, "cannot open " + a.out_path);
                experiments::write_csv(f, res.rows);
            }
            if (!a.trial_log.empty())
            {
                std::ofstream f(a.trial_log, std::ios::binary);
                if (!f)
                    throw Error(Errc::invalid_argument, "cannot open " + a.trial_log);
                experiments::write_trial_log(f, res.trials);
            }
            return 0;
        }

        void finish_spec(SweepArgs &a)
        {
            a.spec.kinds = parse_kinds(a.kinds);
            a.spec.mode = parse_selection_mode(a.mode);
            if (!a.range.empty())
                parse_range(a.range, a.spec);
        }

        ChannelTriple random_channels(Index M, Index K, Index N, double eta, std::uint64_t seed)
        {
            std::mt19937_64 g = rng::stream(seed, 0, 1);
            return scenarios::gen_rayleigh({M, K, N, eta}, g);
        }
    } // namespace

    int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"orthoris: channel orthogonalization with passive reconfigurable surfaces"};
        app.name("orthoris");
        app.set_config("--config", "", "INI/TOML config file (sections named after subcommands)");
        app.require_subcommand(1);

        // gain-sweep
        SweepArgs gain;
        gain.range = "-20:5:10";
        gain.spec.experiment = ExperimentKind::gain;
        auto *g = app.add_subcommand("gain-sweep", "beta and failure rate vs direct-channel power (Rayleigh)");
        add_sweep_options(g, gain, "--eta-db", "direct power range lo:step:hi in dB");
        g->add_option("--snr-db", gain.spec.snr_db, "SNR for the rate columns");

        // csi-sweep
        SweepArgs csi;
        csi.range = "0:5:40";
        csi.spec.experiment = ExperimentKind::csi;
        auto *c = app.add_subcommand("csi-sweep", "condition number vs estimation SNR (H0 = 0)");
        add_sweep_options(c, csi, "--est-snr-db", "estimation SNR range lo:step:hi in dB");

        // rician-sweep
        SweepArgs ric;
        ric.range = "-10:5:30";
        ric.kinds = "aris,bdris,fris,mrc,zf";
        ric.spec.K = 3;
        ric.spec.trials = 100;
        ric.spec.experiment = ExperimentKind::rician;
        auto *r = app.add_subcommand("rician-sweep", "per-UE spectral efficiency vs SNR (indoor Rician room)");
        add_sweep_options(r, ric, "--snr-db", "SNR range lo:step:hi in dB");
        r->add_option("--blockage-db", ric.blockage, "direct-link blockage in dB, or inf");
        r->add_option("--rician-factor-db", ric.spec.rician.rician_factor_db, "Rician factor (inf: pure LoS)");

        // solve
        std::string solve_input, theta_out, solve_kind = "bdris", solve_mode = "algorithm1";
        Index sM = 4, sK = 2, sN = 0;
        double s_eta_db = -10.0;
        std::uint64_t s_seed = 1;
        auto *s = app.add_subcommand("solve", "select an orthogonal channel (or force --input target) for one instance");
        s->add_option("--input", solve_input, "JSON with H0, H1, H2 (and optional target) as {re, im} row lists");
        s->add_option("--kind", solve_kind, "aris, bdris or fris");
        s->add_option("--mode", solve_mode, "selection mode");
        s->add_option("--M", sM)->check(CLI::PositiveNumber);
        s->add_option("--K", sK)->check(CLI::PositiveNumber);
        s->add_option("--N", sN, "elements (0 = minimum)");
        s->add_option("--eta-db", s_eta_db, "direct power for a random instance");
        s->add_option("--seed", s_seed);
        s->add_option("--theta-out", theta_out, "write the reflection matrix as JSON");

        // estimate
        std::string e_kind = "bdris", e_basis = "full";
        Index eM = 4, eK = 2, eN = 0;
        double e_snr_db = 20.0, e_eta_db = -10.0;
        std::uint64_t e_seed = 1;
        auto *e = app.add_subcommand("estimate", "pilot-based estimation of the direct channel and effective map");
        e->add_option("--kind", e_kind);
        e->add_option("--basis", e_basis, "full or reduced");
        e->add_option("--M", eM)->check(CLI::PositiveNumber);
        e->add_option("--K", eK)->check(CLI::PositiveNumber);
        e->add_option("--N", eN, "elements (0 = minimum)");
        e->add_option("--snr-db", e_snr_db, "estimation SNR (Es / N0) in dB");
        e->add_option("--eta-db", e_eta_db, "direct channel power in dB");
        e->add_option("--seed", e_seed);

        app.add_subcommand("selftest", "run the invariant suite");

        std::vector<std::string> storage{"orthoris"};
        storage.insert(storage.end(), args.begin(), args.end());
        std::vector<char *> argv;
        for (std::string &a : storage)
            argv.push_back(a.data());

        try
        {
            app.parse(int(argv.size()), argv.data());
        }
        catch (const CLI::ParseError &pe)
        {
            if (pe.get_exit_code() == 0)
            {
                out << app.help();
                return 0;
            }
            err << "error: " << pe.what() << "\n\n" << app.help();
            return 2;
        }

        try
        {
            if (g->parsed())
            {
                finish_spec(gain);
                return emit(gain, experiments::run_gain_sweep(gain.spec), out);
            }
            if (c->parsed())
            {
                finish_spec(csi);
                return emit(csi, experiments::run_csi_sweep(csi.spec), out);
            }
            if (r->parsed())
            {
                finish_spec(ric);
                ric.spec.blockage_db = parse_db(ric.blockage);
                return emit(ric, experiments::run_rician_sweep(ric.spec), out);
            }
            if (s->parsed())
            {
                const RsKind kind = parse_rs_kind(solve_kind);
                ChannelTriple ch;
                std::optional<CMatrix> target;
                if (!solve_input.empty())
                {
                    std::ifstream f(solve_input);
                    if (!f)
                        throw Error(Errc::invalid_argument, "cannot open " + solve_input);
                    json j;
                    try
                    {
                        j = json::parse(f);
                        ch.H1 = matrix_from_json(j, "H1");
                        ch.H2 = matrix_from_json(j, "H2");
                        ch.H0 = j.contains("H0") ? matrix_from_json(j, "H0")
                                                 : CMatrix(CMatrix::Zero(ch.H1.rows(), ch.H2.cols()));
                        if (j.contains("target"))
                            target = matrix_from_json(j, "target");
                    }
                    catch (const json::exception &je)
                    {
                        throw Error(Errc::invalid_argument, std::string("input: ") + je.what());
                    }
                }
                else
                {
                    const Index N = sN > 0 ? sN : solvers::min_elements(kind, sM, sK);
                    ch = random_channels(sM, sK, N, std::pow(10.0, s_eta_db / 10.0), s_seed);
                }
                ch.validate();

                json rep;
                rep["kind"] = to_string(kind);
                rep["M"] = ch.M();
                rep["K"] = ch.K();
                rep["N"] = ch.N();
                CMatrix theta;
                if (target)
                {
                    const SolveReport sr = solvers::solve(kind, ch, *target);
                    theta = sr.theta;
                    rep["rank_feasible"] = sr.rank_feasible;
                    rep["residual"] = sr.residual;
                    rep["passive"] = sr.passive;
                    rep["passivity_margin"] = sr.constraint.passivity_margin;
                }
                else
                {
                    SelectionOptions opts;
                    opts.mode = parse_selection_mode(solve_mode);
                    opts.random_seed = s_seed;
                    const EffectiveMap map = solvers::build_effective_map(kind, ch.H1, ch.H2);
                    rep["rank_feasible"] = map.rank_feasible();
                    if (!map.rank_feasible())
                        throw Error(Errc::infeasible, "effective map is rank deficient (rank " + std::to_string(map.rank) +
                                                          ", need " + std::to_string(ch.M() * ch.K()) + ")");
                    const SelectionOutcome so = selection::select_channel(map, ch.H0, opts);
                    theta = so.theta;
                    const CMatrix H = ch.channel(theta);
                    rep["status"] = to_string(so.status);
                    rep["beta"] = so.target.beta;
                    rep["spectral_power"] = so.spectral_power;
                    rep["condition_number"] = matcore::condition_number(H);
                    rep["outer_iterations"] = so.trace.beta.size();
                }
                out << rep.dump(2) << "\n";
                if (!theta_out.empty())
                {
                    std::ofstream f(theta_out);
                    if (!f)
                        throw Error(Errc::invalid_argument, "cannot open " + theta_out);
                    f << json{{"theta", matrix_to_json(theta)}}.dump(2) << "\n";
                }
                return 0;
            }
            if (e->parsed())
            {
                const RsKind kind = parse_rs_kind(e_kind);
                BasisMode mode;
                if (e_basis == "full")
                    mode = BasisMode::full;
                else if (e_basis == "reduced")
                    mode = BasisMode::reduced;
                else
                    throw Error(Errc::invalid_argument, "basis must be full or reduced");
                const Index N = eN > 0 ? eN : solvers::min_elements(kind, eM, eK);
                const ChannelTriple ch = random_channels(eM, eK, N, std::pow(10.0, e_eta_db / 10.0), e_seed);
                const double N0 = std::pow(10.0, -e_snr_db / 10.0);
                const PilotMatrix P = PilotMatrix::dft(eK, 1.0);
                std::mt19937_64 noise = rng::stream(e_seed, 0, 2);
                const CMatrix H0_hat = estimation::estimate_direct(ch, P, N0, noise);
                const EstimationResult est = estimation::estimate_effective_map(kind, ch, H0_hat, P, N0, noise, mode);
                const EffectiveMap exact = solvers::build_effective_map(est.layout, ch.H1, ch.H2);

                json rep;
                rep["kind"] = to_string(kind);
                rep["basis"] = e_basis;
                rep["M"] = eM;
                rep["K"] = eK;
                rep["N"] = N;
                rep["steps_used"] = est.steps_used;
                rep["pilot_budget"] = estimation::pilot_budget(kind, eM, eK, N, mode);
                rep["direct_nmse"] = ch.H0.squaredNorm() > 0.0 ? (H0_hat - ch.H0).squaredNorm() / ch.H0.squaredNorm() : 0.0;
                rep["map_nmse"] = (est.effective_hat - exact.matrix).squaredNorm() / exact.matrix.squaredNorm();
                rep["estimated_rank"] = matcore::numeric_rank(est.effective_hat, solvers::rank_cutoff);
                out << rep.dump(2) << "\n";
                return 0;
            }
            return run_selftest(out) ? 0 : 1;
        }
        catch (const Error &ex)
        {
            err << "error: " << ex.what() << "\n";
            return 1;
        }
    }

    int cli_main(int argc, char **argv)
    {
        std::vector<std::string> args(argv + 1, argv + argc);
        return cli_main(args, std::cout, std::cerr);
    }

} // namespace orthoris
