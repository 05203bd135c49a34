#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "proxydata/io.hpp"
#include "proxydata/rng.hpp"

namespace proxydata::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "proxydata");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("proxydata_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  // n rows with ids 10, 11, ... and distinct entropies.
  std::string stats_file(std::size_t n, std::size_t classes = 2) const {
    std::ostringstream s;
    s << "id,label,entropy\n";
    Rng rng(n);
    for (std::size_t i = 0; i < n; ++i) {
      s << 10 + i << ',' << i % classes << ',' << format_real(std::pow(10.0, -4.0 * rng.open01()))
        << '\n';
    }
    return write("stats.csv", s.str());
  }

  fs::path dir_;
};

TEST_F(CliTest, EntropyWritesStatsAndSummary) {
  const auto logits = write("logits.csv",
                            "id,label,logit_0,logit_1\n"
                            "3,0,0,0\n0,1,0.69314718055994529,0\n9,1,5,-5\n1,0,-1,2\n");
  const auto r = run_cli({"entropy", "--logits", logits, "--out", path("stats.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("rows=4"), std::string::npos);
  EXPECT_NE(r.out.find("entropy_max=0.69314718055994529"), std::string::npos);
  const std::string stats = slurp(path("stats.csv"));
  std::istringstream in(stats);
  const auto table = read_stats(in);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[0].id, 0u);
  EXPECT_EQ(table[3].id, 9u);

  ASSERT_EQ(run_cli({"entropy", "--logits", logits, "--out", path("again.csv")}).code, kExitOk);
  EXPECT_EQ(slurp(path("again.csv")), stats);
}

TEST_F(CliTest, EntropyEmptyInput) {
  const auto empty = write("empty.csv", "");
  const auto r = run_cli({"entropy", "--logits", empty, "--out", path("s.csv")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.err.rfind(kErrorPrefix, 0), 0u);
  EXPECT_NE(r.err.find("no rows"), std::string::npos);
}

TEST_F(CliTest, EntropyMalformedRowReportsLine) {
  const auto bad = write("bad.csv", "id,label,logit_0,logit_1\n0,0,1,2\n1,0,1,x\n");
  const auto r = run_cli({"entropy", "--logits", bad, "--out", path("s.csv")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST_F(CliTest, SelectTail) {
  const auto stats = stats_file(20);
  const auto r = run_cli({"select", "--stats", stats, "--method", "tail", "--beta", "0.9", "--k",
                          "10", "--out", path("sel.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(slurp(path("sel.txt")));
  const auto sel = read_selection(in);
  EXPECT_EQ(sel.k(), 10u);
  EXPECT_EQ(sel.method().name, "tail");

  std::istringstream sin(slurp(stats));
  const auto table = read_stats(sin);
  std::vector<double> e;
  for (const auto& row : table.rows()) e.push_back(row.entropy);
  std::sort(e.begin(), e.end());
  std::size_t low = 0, high = 0;
  for (ExampleId id : sel.ids()) {
    const double v = table.find(id)->entropy;
    low += v <= e[8] ? 1 : 0;
    high += v == e[19] ? 1 : 0;
  }
  EXPECT_EQ(low, 9u);
  EXPECT_EQ(high, 1u);
}

TEST_F(CliTest, SelectProbAtPaperBudget) {
  const auto stats = stats_file(50000, 10);
  const auto r = run_cli({"select", "--stats", stats, "--method", "prob", "--weight", "w1", "--k",
                          "5000", "--seed", "3", "--out", path("sel.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(slurp(path("sel.txt")));
  const auto sel = read_selection(in);
  EXPECT_EQ(sel.ids().size(), 5000u);
  EXPECT_EQ(sel.seed(), Seed{3});
}

TEST_F(CliTest, SelectUsageErrors) {
  const auto stats = stats_file(10);
  auto r = run_cli({"select", "--stats", stats, "--method", "coreset", "--k", "2", "--out",
                    path("s.txt")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("random, entropy-top, entropy-bottom, forgetting, kcenter, tail, prob"),
            std::string::npos);

  r = run_cli({"select", "--stats", stats, "--method", "kcenter", "--k", "2", "--out", path("s.txt")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--features"), std::string::npos);

  r = run_cli({"select", "--stats", stats, "--method", "forgetting", "--k", "2", "--out",
               path("s.txt")});
  EXPECT_EQ(r.code, kExitUsage);

  r = run_cli({"select", "--stats", stats, "--method", "random", "--out", path("s.txt")});
  EXPECT_NE(r.code, kExitOk);

  r = run_cli({"select", "--stats", stats, "--method", "random", "--k", "11", "--out",
               path("s.txt")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("capacity: "), std::string::npos);
}

TEST_F(CliTest, SelectKCenterAndForgetting) {
  const auto stats = write("stats.csv", "id,label,entropy\n0,0,0.1\n1,0,0.2\n2,1,0.3\n");
  const auto feats = write("f.csv", "id,f_0\n0,0\n1,1\n2,10\n");
  auto r = run_cli({"select", "--stats", stats, "--method", "kcenter", "--features", feats,
                    "--pool", "0", "--k", "2", "--out", path("kc.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(slurp(path("kc.txt")), "# method=kcenter\n# k=2\n# pool=0\n2\n1\n");

  const auto log = write("c.csv", "id,c_0,c_1,c_2,c_3\n0,1,0,1,0\n1,0,0,1,1\n2,1,0,0,0\n");
  r = run_cli({"select", "--stats", stats, "--method", "forgetting", "--correctness", log, "--k",
               "2", "--out", path("fg.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(slurp(path("fg.txt")), "# method=forgetting\n# k=2\n0\n2\n");
}

TEST_F(CliTest, SelectClassBalanced) {
  const auto stats = stats_file(100, 4);
  const auto r = run_cli({"select", "--stats", stats, "--method", "entropy-bottom",
                          "--class-balanced", "--k", "20", "--out", path("cb.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(slurp(path("cb.txt")));
  const auto sel = read_selection(in);
  EXPECT_EQ(sel.method().name, "class-balanced");
  std::istringstream sin(slurp(stats));
  const auto table = read_stats(sin);
  std::vector<int> per_class(4, 0);
  for (ExampleId id : sel.ids()) ++per_class[table.find(id)->label];
  EXPECT_EQ(per_class, (std::vector<int>{5, 5, 5, 5}));
}

TEST_F(CliTest, HistogramQuarterWidth) {
  const auto stats = stats_file(300);
  const auto r = run_cli({"histogram", "--stats", stats, "--bin-width", "0.25", "--out",
                          path("h.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(slurp(path("h.csv")));
  const auto h = read_histogram(in);
  EXPECT_EQ(h.total(), 300u);
  for (std::size_t b = 0; b < h.bin_count(); ++b) {
    EXPECT_NEAR(h.right_edge(b) - h.left_edge(b), 0.25, 1e-12);
  }
  ASSERT_EQ(run_cli({"histogram", "--stats", stats, "--out", path("h2.csv")}).code, kExitOk);
  EXPECT_EQ(slurp(path("h2.csv")), slurp(path("h.csv")));
}

TEST_F(CliTest, SplitModes) {
  const auto stats = stats_file(40);
  ASSERT_EQ(run_cli({"select", "--stats", stats, "--method", "random", "--k", "10", "--out",
                     path("sel.txt")})
                .code,
            kExitOk);
  auto r = run_cli({"split", "--selection", path("sel.txt"), "--mode", "allshuffle", "--ratio",
                    "0.5", "--seed", "4", "--out-prefix", path("all")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream tr(slurp(path("all_train.txt")));
  std::istringstream va(slurp(path("all_val.txt")));
  EXPECT_EQ(read_id_list(tr).ids.size(), 5u);
  EXPECT_EQ(read_id_list(va).ids.size(), 5u);

  for (const char* seed : {"1", "2"}) {
    r = run_cli({"split", "--selection", path("sel.txt"), "--stats", stats, "--mode", "disjoint",
                 "--low-to-train", "--seed", seed, "--out-prefix", path(std::string("dj") + seed)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(slurp(path("dj1_train.txt")), slurp(path("dj2_train.txt")));
  EXPECT_EQ(slurp(path("dj1_val.txt")), slurp(path("dj2_val.txt")));

  r = run_cli({"split", "--selection", path("sel.txt"), "--mode", "disjoint", "--out-prefix",
               path("nostats")});
  EXPECT_NE(r.code, kExitOk);
  EXPECT_NE(r.err.find("--stats"), std::string::npos);

  r = run_cli({"split", "--selection", path("sel.txt"), "--ratio", "1.5", "--out-prefix",
               path("badratio")});
  EXPECT_EQ(r.code, kExitError);
}

TEST_F(CliTest, Report) {
  const auto stats = stats_file(200);
  ASSERT_EQ(run_cli({"select", "--stats", stats, "--method", "entropy-bottom", "--k", "50",
                     "--out", path("sel.txt")})
                .code,
            kExitOk);
  auto r = run_cli({"report", "--selection", path("sel.txt"), "--stats", stats});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# subset_size=50\n"), std::string::npos);
  EXPECT_NE(r.out.find("# below_median_fraction=1\n"), std::string::npos);

  const auto foreign = write("foreign.txt", "# method=x\n# k=1\n99999\n");
  r = run_cli({"report", "--selection", foreign, "--stats", stats});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("consistency"), std::string::npos);
}

TEST_F(CliTest, SeedFromEnvironment) {
  const auto stats = stats_file(100);
  ::setenv(kSeedEnvVar, "17", 1);
  auto r = run_cli({"select", "--stats", stats, "--method", "random", "--k", "5", "--out",
                    path("env.txt")});
  ::unsetenv(kSeedEnvVar);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run_cli({"select", "--stats", stats, "--method", "random", "--k", "5", "--seed", "17",
               "--out", path("flag.txt")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(slurp(path("env.txt")), slurp(path("flag.txt")));
}

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_NE(run_cli({}).code, kExitOk);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace proxydata::cli
