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


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "orthoris/cli.hpp"

using namespace orthoris;
using nlohmann::json;

namespace
{
    struct CliRun
    {
        int code = 0;
        std::string out, err;
    };

    CliRun run(const std::vector<std::string> &args)
    {
        std::ostringstream o, e;
        CliRun r;
        r.code = cli_main(args, o, e);
        r.out = o.str();
        r.err = e.str();
        return r;
    }

    std::filesystem::path temp(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("orthoris_cli_" + name);
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream f(p);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }
} // namespace

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    const CliRun r = run({"gain-sweep", "--trials", "0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("gain-sweep"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrors)
{
    const CliRun r = run({"gain-sweep", "--kinds", "qris", "--trials", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
    EXPECT_EQ(run({"solve", "--kind", "aris", "--N", "3"}).code, 1);
    EXPECT_EQ(run({"gain-sweep", "--eta-db=1:0:2", "--trials", "1"}).code, 1);
}

TEST(Cli, Selftest)
{
    const CliRun r = run({"selftest"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, GainSweepCsv)
{
    const CliRun r = run({"gain-sweep", "--eta-db=-10:10:0", "--trials", "3", "--kinds", "fris"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("sweep_value,kind,N,", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);

    const auto out = temp("gain.csv"), log = temp("gain_log.csv");
    const CliRun f = run({"gain-sweep", "--eta-db=-10:10:0", "--trials", "3", "--kinds", "fris", "--out", out.string(),
                       "--trial-log", log.string()});
    ASSERT_EQ(f.code, 0);
    EXPECT_TRUE(f.out.empty());
    EXPECT_EQ(slurp(out), r.out);
    const std::string trials = slurp(log);
    EXPECT_EQ(std::count(trials.begin(), trials.end(), '\n'), 7);
}

TEST(Cli, ConfigFile)
{
    const auto cfg = temp("cfg.ini");
    {
        std::ofstream f(cfg);
        f << "[gain-sweep]\ntrials=3\nkinds=\"aris\"\neta-db=\"0\"\n";
    }
    const CliRun a = run({"--config", cfg.string(), "gain-sweep"});
    const CliRun b = run({"gain-sweep", "--trials", "3", "--kinds", "aris", "--eta-db", "0"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SolveRandomInstance)
{
    const CliRun r = run({"solve", "--kind", "bdris", "--M", "3", "--K", "2", "--eta-db=-10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["N"], 4);
    EXPECT_EQ(j["status"], "orthogonalized");
    EXPECT_GT(j["beta"].get<double>(), 0.0);
    EXPECT_LE(j["spectral_power"].get<double>(), 1.0 + 1e-8);
    EXPECT_NEAR(j["condition_number"].get<double>(), 1.0, 1e-8);
}

TEST(Cli, SolveInputTarget)
{
    const auto in = temp("in.json"), th = temp("theta.json");
    {
        // H = H0 + H1 Theta H2 with scalar channels: Theta = (t - h0) / (h1 h2) = (1 - 0.5) / 2
        std::ofstream f(in);
        f << R"({"H0": {"re": [[0.5]], "im": [[0]]}, "H1": {"re": [[2]]}, "H2": {"re": [[1]]},
                 "target": {"re": [[1]], "im": [[0]]}})";
    }
    const CliRun r = run({"solve", "--kind", "fris", "--input", in.string(), "--theta-out", th.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["rank_feasible"].get<bool>());
    EXPECT_LT(j["residual"].get<double>(), 1e-14);
    EXPECT_TRUE(j["passive"].get<bool>());
    const json t = json::parse(slurp(th));
    EXPECT_NEAR(t["theta"]["re"][0][0].get<double>(), 0.25, 1e-15);
    EXPECT_NEAR(t["theta"]["im"][0][0].get<double>(), 0.0, 1e-15);

    {
        std::ofstream f(in);
        f << "{not json";
    }
    EXPECT_EQ(run({"solve", "--kind", "fris", "--input", in.string()}).code, 1);
}

TEST(Cli, EstimateReport)
{
    const CliRun r = run({"estimate", "--kind", "bdris", "--basis", "reduced", "--M", "4", "--K", "2", "--snr-db", "200"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["N"], 5);
    EXPECT_EQ(j["steps_used"], 8);
    EXPECT_EQ(j["pilot_budget"], 8);
    EXPECT_EQ(j["estimated_rank"], 8);
    EXPECT_LT(j["map_nmse"].get<double>(), 1e-15);
    EXPECT_LT(j["direct_nmse"].get<double>(), 1e-15);

    const CliRun full = run({"estimate", "--kind", "fris", "--M", "2", "--K", "2", "--snr-db", "10"});
    const json jf = json::parse(full.out);
    EXPECT_EQ(jf["steps_used"], 4);
    EXPECT_GT(jf["map_nmse"].get<double>(), 1e-4);
    EXPECT_EQ(run({"estimate", "--kind", "fris", "--basis", "half"}).code, 1);
}
