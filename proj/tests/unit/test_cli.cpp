#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "stabcat/fixtures.hpp"

using stabcat::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("computation commands") {
  auto r = run({"stable-hom", "S", "S"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dim stable Hom(S, S) = 1") != std::string::npos);

  r = run({"hom", "R", "R"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dim Hom(R, R) = 2") != std::string::npos);

  CHECK(run({"approx", "S"}).code == 0);
  CHECK(run({"omega", "S"}).code == 0);
  CHECK(run({"sigma", "p"}).code == 0);
  CHECK(run({"triangle", "left", "p"}).code == 0);
  CHECK(run({"triangle", "right", "i"}).code == 0);
  CHECK(run({"octahedron", "p", "zS"}).code == 0);
  CHECK(run({"adjunction", "S", "S"}).code == 0);
  CHECK(run({"--fixture", "F2", "stable-hom", "S", "M2"}).code == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"hom", "S", "Q"}).code == 2);
  CHECK(run({"hom", "S", "Q"}).err.find("Q") != std::string::npos);
  CHECK(run({"--fixture", "F9", "hom", "S", "S"}).code == 2);
  CHECK(run({"--file", "/nonexistent/x.rep", "hom", "S", "S"}).code == 2);
  CHECK(run({"verify", "nothing"}).code == 2);
  CHECK(run({"verify", "hovey", "--trivial", "nope"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("verification commands") {
  CHECK(run({"verify", "lt", "--seed", "7", "--samples", "50", "--pairs", "10"}).code == 0);
  CHECK(run({"verify", "hovey"}).code == 0);
  auto bad = run({"verify", "hovey", "--trivial", "bad_triv"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(run({"verify", "fibration", "--samples", "20", "--pairs", "5", "--max-dim", "3"}).code == 0);
}

TEST_CASE("reports are identical across runs and formats agree") {
  std::vector<std::string> args{"verify", "rt", "--fixture", "F2", "--seed", "3", "--samples", "20", "--pairs", "5"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("verdict: pass") != std::string::npos);

  args.insert(args.end(), {"--format", "jsonl"});
  auto j = run(args);
  CHECK(j.code == 0);
  std::istringstream in(j.out);
  std::string line, last;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto v = nlohmann::json::parse(line);
    CHECK(v.contains("type"));
    last = line;
    ++n;
  }
  CHECK(n > 3);
  auto s = nlohmann::json::parse(last);
  CHECK(s["type"] == "summary");
  CHECK(s["verdict"] == "pass");
}

TEST_CASE("fixture directory override") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "stabcat_fixture_dir_test";
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "F1.rep");
    f << "field 2\ngenerators 1\nmodule S dim 1\ngen 0: [[0]]\nmodule T dim 2\ngen 0: [[0,0],[1,0]]\n"
         "class all = S, T\ncontext main W=T universe=all\n";
  }
  ::setenv("STABCAT_FIXTURE_DIR", dir.c_str(), 1);
  auto r = run({"hom", "T", "T"});
  auto missing = run({"--fixture", "F2", "hom", "R3", "R3"});
  ::unsetenv("STABCAT_FIXTURE_DIR");
  fs::remove_all(dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("dim Hom(T, T) = 2") != std::string::npos);
  CHECK(missing.code == 0);
}
