#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path&
workdir()
{
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "dvpcirc_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string
at(const std::string& name)
{
  return (workdir() / name).string();
}

int
run(const std::string& args)
{
  std::string cmd = std::string(DVP_CLI_PATH) + " " + args + " >" + at("stdout.txt") + " 2>" +
                    at("stderr.txt");
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string>
lines(const std::string& path)
{
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

void
write(const std::string& path, const std::string& text)
{
  std::ofstream(path) << text;
}

} // namespace

TEST_CASE("sample and estimate")
{
  REQUIRE(run("sample --family skewed-vm --alpha 1 --count 50 --seed 3 --out " + at("d.csv")) == 0);
  auto d = lines(at("d.csv"));
  REQUIRE(d.size() == 51);
  CHECK(d[0] == "angle");

  // same seed, same file
  REQUIRE(run("sample --family skewed-vm --alpha 1 --count 50 --seed 3 --out " + at("d2.csv")) ==
          0);
  CHECK(lines(at("d2.csv")) == d);

  write(at("quick.json"),
        R"({"seed": 4, "dpm": {"iters": 300, "burn_in": 100, "thin_to": 100},
            "fdbayes": {"iters": 3000, "burn_in": 300, "thin_to": 300}})");
  for (std::string m : { "pd", "pc", "naic", "nbic", "fdbayes" }) {
    std::string out = at("est_" + m + ".csv");
    REQUIRE(run("estimate --method " + m + " --data " + at("d.csv") + " --config " +
                at("quick.json") + " --grid 256 --out " + out) == 0);
    auto e = lines(out);
    REQUIRE(e.size() == 257);
    CHECK(e[0] == "angle,density");
    std::ifstream side(at("est_" + m + ".diag.json"));
    REQUIRE(side.good());
    auto j = nlohmann::json::parse(side);
    CHECK(j["method"] == m);
    CHECK(j["config"]["seed"] == 4);
    CHECK(std::abs(j["integral"].get<double>() - 1.0) < 1e-6);
  }
}

TEST_CASE("basis table")
{
  REQUIRE(run("basis --n 3 --grid 100 --out " + at("basis.csv")) == 0);
  auto b = lines(at("basis.csv"));
  REQUIRE(b.size() == 101);
  CHECK(b[0] == "angle,j0,j1,j2,j3,j4,j5,j6");
}

TEST_CASE("simulate and summarize")
{
  write(at("sim.json"), R"({
    "families": [{"family": "w", "alphas": [0.0]}],
    "sample_sizes": [30], "reps": 2, "methods": ["nbic", "naic"],
    "losses": ["kl", "l1"], "master_seed": 5, "grid": 256, "workers": 1
  })");
  REQUIRE(run("simulate --config " + at("sim.json") + " --out " + at("rec.csv")) == 0);
  auto r = lines(at("rec.csv"));
  REQUIRE(r.size() == 1 + 2 * 2 * 2);
  CHECK(r[0] == "family,alpha,sample_size,method,rep,loss,value,infinite,runtime_ms,seed");

  REQUIRE(run("summarize --in " + at("rec.csv") + " --out " + at("sum.csv")) == 0);
  auto s = lines(at("sum.csv"));
  REQUIRE(s.size() == 1 + 2 * 2);
  CHECK(s[0] == "family,alpha,sample_size,method,loss,mean,ci_lo,ci_hi,n_finite,n_infinite");
}

TEST_CASE("exit codes")
{
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("sample --family vm --alpha 0 --count 5 --out " + at("x.csv")) == 2);
  CHECK(run("sample --family skewed-vm --alpha 3 --count 5 --out " + at("x.csv")) == 2);
  CHECK(run("estimate --method kde --data " + at("d.csv") + " --out " + at("x.csv")) == 2);

  write(at("bad.json"), R"({"sede": 1})");
  CHECK(run("estimate --method pd --data " + at("d.csv") + " --config " + at("bad.json") +
            " --out " + at("x.csv")) == 2);
  write(at("badsim.json"), R"({"reps": 1, "extra": true})");
  CHECK(run("simulate --config " + at("badsim.json") + " --out " + at("x.csv")) == 2);

  CHECK(run("estimate --method pd --data " + at("missing.csv") + " --out " + at("x.csv")) == 3);
  CHECK(run("basis --n 2 --out /nonexistent-dir/b.csv") == 3);
  CHECK(run("summarize --in " + at("missing.csv") + " --out " + at("x.csv")) == 3);

  write(at("garbage.csv"), "angle\n1.0\nabc\n");
  CHECK(run("estimate --method nbic --data " + at("garbage.csv") + " --out " + at("x.csv")) == 2);
}
