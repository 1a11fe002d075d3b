#pragma once

#include <string>

#include "cli_io.hpp"

namespace cli {

struct Common {
    std::string out;
    std::string config;
    int jobs = 1;
};

struct RobinArgs {
    int n = 64;
};

struct OrbitArgs {
    double lambda = 0;
    int samples = 256;
};

struct RangeArgs {
    double lo = 0, hi = 0;
    int n = 32;
    double threshold = 1e-4;
    bool no_refine = false;
};

struct ContourArgs {
    double lambda = 0;
    double eps = 0;
    int M = 64;
    int N = 128;
    std::string state = "zero";
    bool correction = false;
};

struct PatchArgs {
    double lambda = 0;
    double eps = 0;
    int nodes = 128;
    int steps_per_period = 2000;
    int periods = 1;
    int record_every = 100;
};

struct RigidArgs {
    double q = 0;
    double eps = 0;
    int modes = 32;
};

struct DuplicateArgs {
    std::string cell = "half-disc";
    int samples = 100;
    unsigned seed = 1;
    bool evolve = false;
    double eps = 0.05;
    int nodes = 128;
    double level_offset = 0.3;
    double fraction = 0.1;
    int steps = 400;
};

int cmd_robin(const DomainArgs& d, const RobinArgs& a, const Common& c, const std::string& hash);
int cmd_orbit(const DomainArgs& d, const OrbitArgs& a, const Common& c, const std::string& hash);
int cmd_period_scan(const DomainArgs& d, const RangeArgs& a, const Common& c, const std::string& hash);
int cmd_monodromy(const DomainArgs& d, const RangeArgs& a, const Common& c, const std::string& hash);
int cmd_admissibility(const DomainArgs& d, double tol, const Common& c, const std::string& hash);
int cmd_residual(const DomainArgs& d, const ContourArgs& a, const Common& c, const std::string& hash);
int cmd_approx(const DomainArgs& d, const ContourArgs& a, const Common& c, const std::string& hash);
int cmd_patch(const DomainArgs& d, const PatchArgs& a, const Common& c, const std::string& hash);
int cmd_rigid(const RigidArgs& a, const Common& c, const std::string& hash);
int cmd_duplicate(const DuplicateArgs& a, const Common& c, const std::string& hash);
int cmd_selftest(const Common& c, const std::string& hash);

}  // namespace cli
