#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nikhp/asymptotics.hpp"
#include "nikhp/hermite_pade.hpp"
#include "nikhp/system.hpp"

namespace nikhp {

// A malformed system or config file; maps to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed "nikhp-system/1" file: generators in chain order plus a content
// hash that keys the family cache (changes whenever any field changes).
struct SystemSpec {
    std::string kind;  // "nikishin" or "angelesco"
    std::vector<Measure> generators;
    std::string hash;  // FNV-1a over the canonical serialization
};
SystemSpec load_system(const std::string& path);
SystemSpec parse_system(const std::string& json_text);

struct ScheduleSpec {
    std::string kind = "diagonal";  // or "staircase"
    int from = 1;
    int to = 8;
};

// Parsed "nikhp-config/1" file. All Real-valued literals travel as decimal
// strings and are parsed at the working precision, never through doubles.
struct ExperimentConfig {
    std::string command;
    std::string system_path;
    SystemSpec system;
    ScheduleSpec schedule;
    unsigned precision = 256;
    std::size_t nq = 0;          // 0: solver default 4|n|+16
    std::size_t grid = 600;
    double eq_tau = 1e-6;
    unsigned budget = 6;         // certify
    std::size_t component = 1;   // j for rate, ell for ratio
    unsigned trials = 100;       // AT probe
    std::vector<Complex> points;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int workers = 1;
    std::optional<double> residual_tol;  // connection/orthogonality override
};
ExperimentConfig load_config(const std::string& path);

// Family coefficient cache: one JSON file per (system hash, precision,
// type, index). Cached coefficients round-trip as decimal strings, so a hit
// is byte-identical to a fresh solve at the same precision.
class FamilyCache {
public:
    // Resolution order: explicit dir, NIKHP_CACHE_DIR, out_dir/.nikhp-cache.
    FamilyCache(std::string dir, std::string system_hash);

    TypeIIFamily get_or_solve_ii(const NikishinSystem& sys, const MultiIndex& n,
                                 std::size_t nq);
    TypeIFamily get_or_solve_i(const NikishinSystem& sys, const MultiIndex& n,
                               std::size_t nq);
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::string hash_;
};

// Executes the command, writes CSV/JSON artifacts under config.out_dir, and
// returns the process exit status (0 pass, 1 criterion failure, 3 solver
// failure; parse problems throw ConfigError before run() is reached).
int run(const ExperimentConfig& config);

}  // namespace nikhp
