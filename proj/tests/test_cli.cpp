#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ppa/data.hpp"

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ppa_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(PPA_CLI_PATH) + " " + args + " 2>" + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream is(path(name));
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, FitThenReconstructRoundTrip) {
  ASSERT_EQ(run("gen --kind helix3d --a 2 --b 0.8 --sigma 0.1 --n 500 --seed 7 --output " + path("x.csv")), 0);
  ASSERT_EQ(run("fit --input " + path("x.csv") + " --strategy pca --max-degree 5 --output " + path("m.ppa")), 0);
  ASSERT_EQ(run("reconstruct --model " + path("m.ppa") + " --input " + path("x.csv") + " --keep 3 --output " +
                path("r.csv")),
            0);
  const ppa::CsvTable a = ppa::read_csv_file(path("x.csv"));
  const ppa::CsvTable b = ppa::read_csv_file(path("r.csv"));
  ASSERT_EQ(a.rows.rows(), 500);
  EXPECT_LT((a.rows - b.rows).cwiseAbs().maxCoeff(), 1e-9);
}

TEST_F(Cli, TransformAndCurveOutputs) {
  ASSERT_EQ(run("gen --kind parabola2d --sigma 0.05 --n 300 --seed 1 -o " + path("p.csv")), 0);
  ASSERT_EQ(run("fit -i " + path("p.csv") + " --degree 2 -o " + path("p.ppa")), 0);
  ASSERT_EQ(run("transform -m " + path("p.ppa") + " -i " + path("p.csv") + " -o " + path("t.csv")), 0);
  EXPECT_EQ(ppa::read_csv_file(path("t.csv")).rows.rows(), 300);
  ASSERT_EQ(run("reconstruct -m " + path("p.ppa") + " -i " + path("t.csv") + " --transformed -o " + path("b.csv")),
            0);
  EXPECT_LT((ppa::read_csv_file(path("b.csv")).rows - ppa::read_csv_file(path("p.csv")).rows).cwiseAbs().maxCoeff(),
            1e-9);
  ASSERT_EQ(run("curve -m " + path("p.ppa") + " --dims 1 --grid 11 -o " + path("c.csv")), 0);
  const ppa::CsvTable c = ppa::read_csv_file(path("c.csv"));
  EXPECT_EQ(c.rows.rows(), 11);
  EXPECT_EQ((*c.header)[0], "c1");
  ASSERT_EQ(run("curvature -m " + path("p.ppa") + " --alpha-min -1 --alpha-max 1 --steps 5 -o " + path("f.csv")), 0);
  const ppa::CsvTable f = ppa::read_csv_file(path("f.csv"));
  EXPECT_EQ(f.rows.rows(), 5);
  EXPECT_EQ(f.header->size(), 1u + 2u + 4u + 1u + 1u);
  ASSERT_EQ(run("mi -m " + path("p.ppa") + " -i " + path("p.csv") + " --baseline pca -o " + path("mi.csv")), 0);
  EXPECT_NE(read("mi.csv").find("\npca,"), std::string::npos);
}

TEST_F(Cli, BenchmarkAndKnnReports) {
  ASSERT_EQ(run("gen --kind helix3d --n 300 --sigma 0.1 --seed 2 -o " + path("h.csv")), 0);
  ASSERT_EQ(run("benchmark -i " + path("h.csv") + " --repeats 2 --seed 1 --dataset h -o " + path("b1.csv")), 0);
  ASSERT_EQ(run("benchmark -i " + path("h.csv") + " --repeats 2 --seed 1 --dataset h -o " + path("b2.csv")), 0);
  EXPECT_EQ(read("b1.csv"), read("b2.csv"));
  EXPECT_NE(read("b1.csv").find("h,pca,1,train,100,0,2"), std::string::npos) << read("b1.csv");

  ASSERT_EQ(run("gen --kind parabola-classes --curvature 1 --offset 1 --sigma 0.2 --n 80 --seed 3 -o " +
                path("k.csv")),
            0);
  ASSERT_EQ(run("knn -i " + path("k.csv") + " --k 1,3 --repeats 2 --train-per-class 20 -o " + path("knn.csv")), 0);
  const std::string knn = read("knn.csv");
  EXPECT_EQ(knn.substr(0, knn.find('\n')), "metric,k,n_train,accuracy_mean,accuracy_std");
  EXPECT_NE(knn.find("ppa-whitened,3,40,"), std::string::npos) << knn;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("fit --input x.csv --no-such-flag"), 1);
  EXPECT_EQ(run("fit"), 1);
  EXPECT_EQ(run("fit --input " + path("missing.csv")), 2);
  {
    std::ofstream os(path("bad.csv"));
    os << "1,2\n3,x\n";
  }
  EXPECT_EQ(run("fit --input " + path("bad.csv")), 2);
  EXPECT_NE(read("stderr.txt").find("line 2"), std::string::npos);
  EXPECT_EQ(run("gen --kind torus"), 2);
  EXPECT_EQ(run("--help > /dev/null"), 0);
}

}  // namespace
