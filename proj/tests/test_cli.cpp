#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path root;
  Workdir() : root(fs::temp_directory_path() / ("bnslab_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workdir() { fs::remove_all(root); }
};

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "scenario.ini";
  std::ofstream(p) << body;
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(BNSLAB_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string kSmall =
    "[grid]\nn = 16\nperiod = pi\n[field]\nk_lo = 1\nk_hi = 3\namplitude = 0.1\n"
    "[solver]\nn_steps = 8\npicard_tol = 1e-10\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("unknown keys and missing files are configuration errors") {
    Workdir w;
    const fs::path bad = write_config(w.root, "[grid]\nsize = 16\n");
    CHECK(run("norms --config " + bad.string() + " --out " + (w.root / "a").string()) == 2);
    CHECK(slurp(w.root / "a" / "error.txt").find("grid.size") != std::string::npos);
    CHECK(run("norms --config " + (w.root / "missing.ini").string() + " --out " +
              (w.root / "b").string()) == 2);
    const fs::path good = write_config(w.root, kSmall);
    CHECK(run("solve --config " + good.string() + " --set solver.dt=abc --out " +
              (w.root / "c").string()) == 2);
    CHECK(run("frobnicate --config " + good.string()) == 2);
  }

  TEST_CASE("generate is deterministic for a fixed seed") {
    Workdir w;
    const fs::path cfg = write_config(w.root, kSmall);
    REQUIRE(run("generate --config " + cfg.string() + " --seed 5 --out " + (w.root / "a").string()) == 0);
    REQUIRE(run("generate --config " + cfg.string() + " --seed 5 --out " + (w.root / "b").string()) == 0);
    REQUIRE(run("generate --config " + cfg.string() + " --seed 6 --out " + (w.root / "c").string()) == 0);
    const std::string a = slurp(w.root / "a" / "field.bnsf");
    CHECK(!a.empty());
    CHECK(a == slurp(w.root / "b" / "field.bnsf"));
    CHECK(a != slurp(w.root / "c" / "field.bnsf"));
  }

  TEST_CASE("norms and solve write their reports and a manifest") {
    Workdir w;
    const fs::path cfg = write_config(w.root, kSmall);
    REQUIRE(run("norms --config " + cfg.string() + " --out " + (w.root / "n").string()) == 0);
    CHECK(fs::file_size(w.root / "n" / "norms.csv") > 0);
    CHECK(slurp(w.root / "n" / "manifest.txt").find("norms.csv") != std::string::npos);
    REQUIRE(run("solve --config " + cfg.string() + " --out " + (w.root / "s").string()) == 0);
    const std::string manifest = slurp(w.root / "s" / "manifest.txt");
    CHECK(manifest.find("blowup.csv") != std::string::npos);
    CHECK(manifest.find("decaying") != std::string::npos);
    CHECK(fs::exists(w.root / "s" / "picard.csv"));
  }
}
