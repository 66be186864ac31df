#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "occam/cli.hpp"
#include "occam/rng.hpp"
#include "occam/verify.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = occam::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("occamlab-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("vcdim writes d and a witness") {
  const auto dir = fresh_dir("vcdim");
  const auto path = (dir / "r.json").string();
  const auto r = run({"vcdim", "--n", "2", "--s-max", "4", "--width-max", "1", "--out", path});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  // Constants and the four literals over two variables: {00,01} is shattered, no triple is.
  CHECK(j["d"] == 2);
  CHECK(j["class_size"] == 6);
  CHECK(j["witness"].size() == 2);
  CHECK(j["certificate_no_larger"] == true);
}

TEST_CASE("usage errors exit 2, caps exit 1") {
  CHECK(run({"vcdim"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "sauer", "--k", "0"}).code == 2);
  CHECK(run({"occamize", "--learner", "nope"}).code == 2);
  const auto big = run({"vcdim", "--n", "30"});
  CHECK(big.code == 1);
  CHECK_FALSE(big.err.empty());
  const auto dir = fresh_dir("cap");
  CHECK(run({"verify", "eq4", "--mode", "exhaustive", "--out-dir", dir.string()}).code == 1);
  CHECK(run({"verify", "sauer", "--log-base", "x", "--out-dir", dir.string()}).code == 0);
  CHECK(run({"verify", "lemma1", "--log-base", "x", "--out-dir", dir.string()}).code == 2);
}

TEST_CASE("a stopped vcdim search exits 1") {
  const auto dir = fresh_dir("vcdim-cap");
  CHECK(run({"vcdim", "--n", "2", "--work-cap", "2", "--out-dir", dir.string()}).code == 1);
}

TEST_CASE("verify sauer passes with zero violations") {
  const auto dir = fresh_dir("sauer");
  const auto r = run({"verify", "sauer", "--n", "2", "--s-max", "4", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto files = files_in(dir);
  REQUIRE(files.size() == 2);
  CHECK(files[0].extension() == ".csv");
  CHECK(files[1].extension() == ".json");
  CHECK(files[0].stem() == files[1].stem());
  const auto j = nlohmann::json::parse(slurp(files[1]));
  CHECK(j.is_array());
  CHECK(j.size() == 12);
}

TEST_CASE("verify lemma4 reports d, d_l and the bound") {
  const auto dir = fresh_dir("lemma4");
  const auto path = (dir / "l4.json").string();
  const auto r = run({"verify", "lemma4", "--n", "3", "--l", "2", "--out", path});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  REQUIRE(j.size() == 3);
  for (const auto& rep : j) {
    CHECK(rep["lemma"] == "exception_dim");
    CHECK(rep["params"].contains("d"));
    CHECK(rep["params"].contains("d_l"));
    CHECK(rep.contains("bound"));
  }
  CHECK(fs::exists(dir / "l4.csv"));
}

TEST_CASE("verify lemma3 is byte-identical across runs and job counts") {
  const auto a = fresh_dir("lemma3-a");
  const auto b = fresh_dir("lemma3-b");
  CHECK(run({"verify", "lemma3", "--trials", "10000", "--seed", "7", "--out-dir", a.string()}).code == 0);
  CHECK(run({"verify", "lemma3", "--trials", "10000", "--seed", "7", "--jobs", "4", "--out-dir",
             b.string()})
            .code == 0);
  const auto fa = files_in(a), fb = files_in(b);
  REQUIRE(fa.size() == 2);
  REQUIRE(fb.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(fa[i].filename() == fb[i].filename());
    CHECK(slurp(fa[i]) == slurp(fb[i]));
  }
}

TEST_CASE("occamize writes consistent trial rows") {
  const auto dir = fresh_dir("occamize");
  const auto path = dir / "t.csv";
  const auto r = run({"occamize", "--learner", "greedy-dl", "--n", "3", "--m", "32", "--trials", "100",
                      "--out", path.string()});
  CHECK(r.code == 0);
  const auto rows = csv_rows(slurp(path));
  REQUIRE(rows.size() == 101);
  CHECK(rows[0][8] == "consistent");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 11);
    CHECK(rows[i][8] == "true");
  }
}

TEST_CASE("occamize with the stub records one exception per distinct positive point") {
  const auto dir = fresh_dir("stub");
  const auto path = dir / "s.csv";
  CHECK(run({"occamize", "--learner", "stub0", "--m", "16", "--trials", "50", "--seed", "3", "--out",
             path.string()})
            .code == 0);
  const auto rows = csv_rows(slurp(path));
  REQUIRE(rows.size() == 51);
  CHECK(rows[0][5] == "exceptions");
  // Re-draw each sample from its row seed and count distinct positives.
  const auto targets = occam::verify::distinct_targets({3, 4, 2});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    occam::SplitMix64 gen(std::stoull(rows[i][1], nullptr, 16));
    const auto target = targets[occam::uniform_below(gen, targets.size())];
    const auto sample = occam::draw_sample(occam::Distribution::uniform(3), target, 16, gen());
    std::set<std::uint32_t> positives;
    for (const auto& p : sample.pairs) {
      if (p.label) positives.insert(p.x.index);
    }
    CHECK(rows[i][5] == std::to_string(positives.size()));
  }
}

TEST_CASE("occamize trend emits a sublinearity bundle") {
  const auto dir = fresh_dir("trend");
  const auto path = (dir / "trend.json").string();
  const auto r = run({"occamize", "--trend", "--m", "8,16,32,64", "--trials", "50", "--out", path});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  REQUIRE(j.size() == 4);
  for (const auto& rep : j) {
    CHECK(rep["lemma"] == "sublinearity");
    CHECK(rep["params"].contains("d_over_m"));
  }
  CHECK(run({"occamize", "--m", "8,16", "--out-dir", dir.string()}).code == 2);
}

TEST_CASE("config files supply values and flags win") {
  const auto dir = fresh_dir("config");
  const auto cfg = dir / "run.ini";
  {
    std::ofstream f(cfg);
    f << "[vcdim]\nn=2\ns-max=4\nwidth-max=1\n";
  }
  const auto from_cfg = (dir / "a.json").string();
  CHECK(run({"--config", cfg.string(), "vcdim", "--out", from_cfg}).code == 0);
  CHECK(nlohmann::json::parse(slurp(from_cfg))["class_size"] == 6);

  const auto flagged = (dir / "b.json").string();
  CHECK(run({"--config", cfg.string(), "vcdim", "--n", "1", "--out", flagged}).code == 0);
  CHECK(nlohmann::json::parse(slurp(flagged))["n"] == 1);

  const auto bad = dir / "bad.ini";
  {
    std::ofstream f(bad);
    f << "[vcdim]\nn=2\nbogus=1\n";
  }
  CHECK(run({"--config", bad.string(), "vcdim", "--out-dir", dir.string()}).code == 2);
}

TEST_CASE("other verify targets run") {
  const auto dir = fresh_dir("targets");
  for (const std::string t : {"lemma1", "eq1", "eq4", "exlist", "approx"}) {
    CAPTURE(t);
    const auto r = run({"verify", t, "--trials", "50", "--out-dir", dir.string()});
    CHECK(r.code == 0);
  }
  // A configured k too small for the learner is reported, not fatal.
  const auto small = run({"verify", "eq1", "--learner", "stub0", "--k", "1", "--n", "1", "--x", "1",
                          "--epsilon", "0.99", "--out-dir", dir.string()});
  CHECK(small.code == 1);
  CHECK(small.out.find("FAIL eq1") != std::string::npos);
}

TEST_CASE("the enumeration cap can be lowered through the environment") {
  const auto dir = fresh_dir("env");
  ::setenv("OCCAMLAB_ENUMERATION_CAP", "3", 1);
  const auto r = run({"vcdim", "--n", "2", "--out-dir", dir.string()});
  ::unsetenv("OCCAMLAB_ENUMERATION_CAP");
  CHECK(r.code == 1);
  CHECK(r.err.find("cap") != std::string::npos);
}
