/* Copyright 2026 The fpool Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "fpool/netpbm.hpp"
#include "fpool/signals.hpp"

namespace fpool::cli {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(testing::TempDir()) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(FPOOL_CLI) + " " + args + " > " + out_path + " 2> " +
                          out_path + ".err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(format_value(0.0), "0");
  EXPECT_EQ(format_value(0.5), "0.5");
  EXPECT_EQ(format_value(1e-16), "1e-16");
  EXPECT_EQ(std::stod(format_value(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(CommandsTest, Demo1dReportsExactFPoolGap) {
  ExperimentConfig cfg;
  cfg.command = "demo1d";
  cfg.signal = "rand:4";
  cfg.n = 64;
  std::ostringstream out;
  EXPECT_EQ(cmd_demo1d(cfg, out), kOk);
  const std::string csv = out.str();
  EXPECT_EQ(csv.rfind("# command=demo1d\n", 0), 0u);
  EXPECT_NE(csv.find("shift,series,value\n"), std::string::npos);
  const auto pos = csv.find("2,fpool/max_gap,");
  ASSERT_NE(pos, std::string::npos);
  const double gap = std::stod(csv.substr(pos + 16, csv.find('\n', pos) - pos - 16));
  EXPECT_LE(gap, 1e-9);
  const auto mpos = csv.find("2,max/max_gap,");
  EXPECT_GT(std::stod(csv.substr(mpos + 14, csv.find('\n', mpos) - mpos - 14)), 1e-3);
}

TEST(CommandsTest, Demo1dConstantSignalHasNoGapExceptMax) {
  ExperimentConfig cfg;
  cfg.command = "demo1d";
  cfg.signal = "const:3";
  cfg.n = 32;
  std::ostringstream out;
  EXPECT_EQ(cmd_demo1d(cfg, out), kOk);
  for (const std::string name : {"fpool", "avg", "stride", "blur", "max"}) {
    const std::string key = "2," + name + "/max_gap,";
    const auto pos = out.str().find(key);
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LE(std::stod(out.str().substr(pos + key.size())), 1e-12) << name;
  }
}

TEST(CommandsTest, Demo1dRejectsIndivisibleLength) {
  ExperimentConfig cfg;
  cfg.command = "demo1d";
  cfg.signal = "impulse";
  cfg.n = 30;
  std::ostringstream err;
  EXPECT_EQ(run(cfg, err), kConfigError);
  EXPECT_NE(err.str().find("divisible"), std::string::npos);
}

TEST(CliTest, ExitCodes) {
  const std::string out = temp_path("cli_exit.txt");
  EXPECT_EQ(run_cli("demo1d --n 32 --signal impulse", out), 0);
  EXPECT_EQ(run_cli("demo1d --bogus", out), 2);
  EXPECT_EQ(run_cli("consistency --padding reflect", out), 2);
  EXPECT_EQ(run_cli("demo1d --input /nonexistent/x.csv", out), 3);
  EXPECT_NE(slurp(out + ".err").find("/nonexistent/x.csv"), std::string::npos);
  EXPECT_EQ(run_cli("pool --input /nonexistent/x.pgm --output " + temp_path("o.pgm"), out), 3);
  EXPECT_EQ(run_cli("", out), 2);
}

TEST(CliTest, OutputsAreDeterministic) {
  const std::vector<std::string> commands = {
      "demo1d --signal row:17",
      "oddpad --n 64 --stride 4 --signal rand:2",
      "transitivity --seed 3",
      "consistency --seeds 2 --size 16",
      "retention --n 64 --corpus 4",
  };
  for (const auto& args : commands) {
    const std::string a = temp_path("det_a.csv"), b = temp_path("det_b.csv");
    ASSERT_EQ(run_cli(args, a), 0) << args;
    ASSERT_EQ(run_cli(args, b), 0) << args;
    EXPECT_FALSE(slurp(a).empty()) << args;
    EXPECT_EQ(slurp(a), slurp(b)) << args;
  }
}

TEST(CliTest, OutputFlagWritesFile) {
  const std::string csv = temp_path("oddpad.csv");
  ASSERT_EQ(run_cli("oddpad --n 32 --signal rand:1 --output " + csv, temp_path("stdout.txt")), 0);
  const std::string text = slurp(csv);
  EXPECT_NE(text.find("all,odd_padding/max,"), std::string::npos);
  EXPECT_NE(text.find("all,no_odd_padding_nyquist_zeroed/max,"), std::string::npos);
}

TEST(CliTest, PoolImageKeepsFormatAndRoundTrips) {
  const std::string in = temp_path("in.pgm"), out = temp_path("out.pgm");
  write_netpbm(in, NetpbmImage{NetpbmFormat::kP5, 255, synthetic_image(32, 24)});
  ASSERT_EQ(run_cli("pool --input " + in + " --output " + out + " --stride 1", temp_path("log")), 0);
  EXPECT_EQ(slurp(in), slurp(out));

  ASSERT_EQ(run_cli("pool --input " + in + " --output " + out + " --stride 2", temp_path("log")), 0);
  const NetpbmImage pooled = read_netpbm(out);
  EXPECT_EQ(pooled.format, NetpbmFormat::kP5);
  EXPECT_EQ(pooled.pixels.height(), 16u);
  EXPECT_EQ(pooled.pixels.width(), 12u);

  const std::string rgb = temp_path("in.ppm"), rgb_out = temp_path("out.ppm");
  RealImage color(3, 8, 8, 100.0);
  write_netpbm(rgb, NetpbmImage{NetpbmFormat::kP6, 255, color});
  ASSERT_EQ(run_cli("pool --pooling max --input " + rgb + " --output " + rgb_out + " --stride 4",
                    temp_path("log")),
            0);
  const NetpbmImage c = read_netpbm(rgb_out);
  EXPECT_EQ(c.format, NetpbmFormat::kP6);
  EXPECT_EQ(c.pixels, RealImage(3, 2, 2, 100.0));
}

}  // namespace
}  // namespace fpool::cli
