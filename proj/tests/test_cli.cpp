#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "attninv/invariant_set.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = testutil::bin_dir() + "/attninv " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "attninv_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generate writes text and json") {
  auto dir = temp_dir();
  auto base = (dir / "lowrank").string();

  auto res = run("generate --d 3 --t 2 --a 1 --family low-rank-minors --out " + base);
  CHECK(res.exit_code == 0);
  auto set = attninv::InvariantSet::from_text(slurp(base + ".txt"));
  CHECK(set.polys.size() == 45);
  for (const auto& p : set.polys) CHECK(p.degree() == 2);
  auto jset = attninv::InvariantSet::from_json(nlohmann::json::parse(slurp(base + ".json")));
  CHECK(jset.to_text() == set.to_text());
}

TEST_CASE("generate catalecticant quartic") {
  auto res = run("generate --d 2 --t 2 --family catalecticant --r 2 --K 1,2 --L 2,1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("count: 1") != std::string::npos);
  CHECK(res.output.find("-y[(1,2),(1,2),(1,1)]^2*y[(2,2),(2,2),(2,1)]^2") != std::string::npos);
}

TEST_CASE("generate lie minors") {
  auto dir = temp_dir();
  auto base = (dir / "lie").string();
  auto res = run("generate --d 3 --t 1 --family lie-minors --out " + base);
  CHECK(res.exit_code == 0);
  auto set = attninv::InvariantSet::from_text(slurp(base + ".txt"));
  CHECK(set.polys.size() == 45);
  for (const auto& p : set.polys) CHECK(p.degree() == 8);
}

TEST_CASE("serialize-parse-serialize is byte identical through the tool") {
  auto dir = temp_dir();
  auto base = (dir / "sym").string();
  REQUIRE(run("generate --d 2 --t 2 --family symmetrization --out " + base).exit_code == 0);
  std::string text = slurp(base + ".txt");
  CHECK(attninv::InvariantSet::from_text(text).to_text() == text);
  std::string json = slurp(base + ".json");
  CHECK(attninv::InvariantSet::from_json(nlohmann::json::parse(json)).to_json().dump(2) + "\n" ==
        json);
}

TEST_CASE("sample then evaluate expects zero on the variety") {
  auto dir = temp_dir();
  auto wfile = (dir / "weights.json").string();
  auto base = (dir / "pencil").string();
  REQUIRE(run("sample --d 3 --t 2 --a 1 --seed 5 --out " + wfile).exit_code == 0);
  REQUIRE(run("generate --d 3 --t 2 --a 1 --family pencil-mixed-minors --out " + base)
              .exit_code == 0);
  auto res = run("evaluate --invariants " + base + ".txt --weights " + wfile + " --expect-zero");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("10/10 vanish") != std::string::npos);

  SECTION("json invariants load identically") {
    auto res2 =
        run("evaluate --invariants " + base + ".json --weights " + wfile + " --expect-zero");
    CHECK(res2.exit_code == 0);
  }
}

TEST_CASE("evaluate reports nonzero values off the variety") {
  auto dir = temp_dir();
  auto wfile = (dir / "weights_fullrank.json").string();
  auto base = (dir / "lowrank_eval").string();
  REQUIRE(run("sample --d 3 --t 2 --a 3 --full-rank --seed 9 --out " + wfile).exit_code == 0);
  REQUIRE(run("generate --d 3 --t 2 --a 1 --family low-rank-minors --out " + base).exit_code ==
          0);
  auto res = run("evaluate --invariants " + base + ".txt --weights " + wfile + " --expect-zero");
  CHECK(res.exit_code == 1);  // mathematical vanishing failure
}

TEST_CASE("shape mismatch is a usage error") {
  auto dir = temp_dir();
  auto wfile = (dir / "weights_small.json").string();
  auto base = (dir / "pencil2").string();
  REQUIRE(run("sample --d 2 --t 2 --seed 5 --out " + wfile).exit_code == 0);
  REQUIRE(run("generate --d 3 --t 2 --a 1 --family pencil-mixed-minors --out " + base)
              .exit_code == 0);
  auto res = run("evaluate --invariants " + base + ".txt --weights " + wfile);
  CHECK(res.exit_code == 2);
}

TEST_CASE("verify subcommand passes on a small shape") {
  auto res = run("verify --d 2 --t 2 --a 2 --samples 5 --seed 7");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("verify: PASS") != std::string::npos);

  SECTION("deterministic json output") {
    auto a = run("verify --d 2 --t 2 --a 1 --samples 3 --seed 11 --json");
    auto b = run("verify --d 2 --t 2 --a 1 --samples 3 --seed 11 --json");
    REQUIRE(a.exit_code == 0);
    auto ja = nlohmann::json::parse(a.output);
    auto jb = nlohmann::json::parse(b.output);
    for (auto& r : ja) r.erase("wall_ms");
    for (auto& r : jb) r.erase("wall_ms");
    CHECK(ja.dump() == jb.dump());
  }
}

TEST_CASE("reproduce subcommand") {
  auto res = run("reproduce ex-syzygy-d3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("[PASS]") != std::string::npos);
  CHECK(res.output.find("kernel dimension 10") != std::string::npos);

  SECTION("unknown example id is a usage error") {
    CHECK(run("reproduce ex-bogus").exit_code == 2);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("generate --family nope --d 2").exit_code == 2);
  CHECK(run("generate --d 2 --family low-rank-minors --a 2").exit_code == 2);  // a >= d
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("generate").exit_code == 2);  // missing required flags
}
