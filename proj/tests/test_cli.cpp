#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nikhp/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("NIKHP_BIN");
    REQUIRE_MESSAGE(b != nullptr, "NIKHP_BIN must point at the nikhp binary");
    return b;
}

int run_cmd(const std::string& args) {
    const std::string cmd = bin() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    REQUIRE(out.good());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing file: " + p.string()));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Fixture {
    fs::path root;
    Fixture() {
        root = fs::temp_directory_path() /
               ("nikhp_cli_" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
        write(root / "sys.json", R"({
  "schema": "nikhp-system/1",
  "kind": "nikishin",
  "generators": [
    {"type": "chebyshev", "interval": ["-1", "1"]},
    {"type": "legendre", "interval": ["2", "3"]}
  ]
})");
        write(root / "conn.json", R"({
  "schema": "nikhp-config/1",
  "system": "sys.json",
  "schedule": {"kind": "diagonal", "from": 2, "to": 5},
  "points": [["5", "2"], "4"]
})");
        write(root / "zeros.json", R"({
  "schema": "nikhp-config/1",
  "system": "sys.json",
  "schedule": {"kind": "diagonal", "from": 2, "to": 4}
})");
    }
    ~Fixture() { fs::remove_all(root); }
    std::string cfg(const char* name) const { return (root / name).string(); }
    std::string out(const char* name) const { return (root / name).string(); }
};

}  // namespace

TEST_CASE("connection command passes on the reference system") {
    Fixture fx;
    int rc = run_cmd("connection --config " + fx.cfg("conn.json") + " --out " + fx.out("o1"));
    CHECK(rc == 0);
    const std::string summary = slurp(fx.root / "o1" / "connection_summary.json");
    CHECK(summary.find("\"pass\": true") != std::string::npos);
    CHECK(summary.find("nikhp-summary/1") != std::string::npos);
    CHECK(fs::exists(fx.root / "o1" / "connection_rows.csv"));
    // default cache location under the artifact directory
    CHECK(fs::exists(fx.root / "o1" / ".nikhp-cache"));
}

TEST_CASE("reruns with a shared cache are byte-identical") {
    Fixture fx;
    const std::string cache = (fx.root / "cache").string();
    ::setenv("NIKHP_CACHE_DIR", cache.c_str(), 1);
    int rc1 = run_cmd("connection --config " + fx.cfg("conn.json") + " --out " + fx.out("a"));
    const bool cache_populated = !fs::is_empty(cache);
    int rc2 = run_cmd("connection --config " + fx.cfg("conn.json") + " --out " + fx.out("b"));
    ::unsetenv("NIKHP_CACHE_DIR");
    REQUIRE(rc1 == 0);
    REQUIRE(rc2 == 0);
    CHECK(cache_populated);
    CHECK(slurp(fx.root / "a" / "connection_summary.json") ==
          slurp(fx.root / "b" / "connection_summary.json"));
    CHECK(slurp(fx.root / "a" / "connection_rows.csv") ==
          slurp(fx.root / "b" / "connection_rows.csv"));
}

TEST_CASE("zeros command checks the structure counts") {
    Fixture fx;
    int rc = run_cmd("zeros --config " + fx.cfg("zeros.json") + " --out " + fx.out("z"));
    CHECK(rc == 0);
    const std::string csv = slurp(fx.root / "z" / "zeros_rows.csv");
    CHECK(csv.find("Q_k zeros k=1") != std::string::npos);
    CHECK(csv.find("A_k zeros k=2") != std::string::npos);
}

TEST_CASE("parse problems exit with status 2") {
    Fixture fx;
    write(fx.root / "bad.json", "{ this is not json");
    CHECK(run_cmd("connection --config " + fx.cfg("bad.json")) == 2);

    write(fx.root / "noschema.json", R"({"system": "sys.json"})");
    CHECK(run_cmd("connection --config " + fx.cfg("noschema.json")) == 2);

    write(fx.root / "badgen.json", R"({
  "schema": "nikhp-config/1",
  "system": {"schema": "nikhp-system/1",
             "generators": [{"type": "mystery", "interval": ["0", "1"]}]}
})");
    CHECK(run_cmd("connection --config " + fx.cfg("badgen.json")) == 2);

    // numeric literals must be strings, not JSON numbers
    write(fx.root / "badnum.json", R"({
  "schema": "nikhp-config/1",
  "system": {"schema": "nikhp-system/1",
             "generators": [{"type": "chebyshev", "interval": [-1, 1]}]}
})");
    CHECK(run_cmd("connection --config " + fx.cfg("badnum.json")) == 2);

    CHECK(run_cmd("connection --config " + fx.cfg("missing.json")) == 2);
    CHECK(run_cmd("frobnicate --config " + fx.cfg("conn.json")) == 2);
    CHECK(run_cmd("connection") == 2);  // --config is required
}

TEST_CASE("config loader round trip") {
    Fixture fx;
    nikhp::ExperimentConfig cfg = nikhp::load_config(fx.cfg("conn.json"));
    CHECK(cfg.schedule.kind == "diagonal");
    CHECK(cfg.schedule.from == 2);
    CHECK(cfg.schedule.to == 5);
    CHECK(cfg.precision == 256);
    REQUIRE(cfg.points.size() == 2);
    CHECK(cfg.points[0].re == 5);
    CHECK(cfg.points[0].im == 2);
    CHECK(cfg.points[1].im == 0);
    CHECK(cfg.system.kind == "nikishin");
    CHECK(cfg.system.generators.size() == 2);
    CHECK(!cfg.system.hash.empty());
    // hash is sensitive to any field change
    nikhp::SystemSpec other = nikhp::parse_system(R"({
  "schema": "nikhp-system/1",
  "generators": [
    {"type": "chebyshev", "interval": ["-1", "1"]},
    {"type": "legendre", "interval": ["2", "4"]}
  ]})");
    CHECK(other.hash != cfg.system.hash);
}
