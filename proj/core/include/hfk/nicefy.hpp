#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hfk/moves.hpp"

namespace hfk {

enum class SwMode { modified, original };

std::string to_string(SwMode m);
SwMode sw_mode_from_string(const std::string& s);

struct StepStats {
    int genus = 0;
    int vertices = 0;
    int distance = 0;
    long long badness = 0;
    long long time_units = 0;  // 0-simplices added by the step, withdrawn ones included
};

struct SwAttempt {
    int pushed_edge = -1;   // alpha edge the chain started from
    int chain_length = 0;   // crossings the finger made or would have made
    std::string outcome;    // "terminal" | "handleslide" | "hard-keep" | "withdrawn"
};

struct SwLogEntry {
    int level = 0;   // distance the step worked at
    int region = -1; // chosen bad region D
    int dstar = -1;  // adjacent region one step closer to Z
    int phi_edge = -1;
    std::vector<SwAttempt> attempts;
    std::string case_taken;
    std::vector<long long> c_before, c_after;
    long long b_before = 0, b_after = 0;
};

struct BoundCheck {
    std::string name;
    double lhs = 0, rhs = 0;
    bool pass = false;
};

struct NicefyReport {
    SwMode mode = SwMode::modified;
    bool skipped_distance_one = false;
    std::vector<StepStats> steps;  // snapshots after step 0 (input) .. 4
    std::vector<SwLogEntry> sw_log;
    std::vector<BoundCheck> bound_checks;
    long long sw_step_count = 0;
    long long additions = 0;  // total 0-simplices added, withdrawn attempts included

    bool all_bounds_pass() const;
    std::string to_json() const;
};

struct NicefyOptions {
    SwMode mode = SwMode::modified;
    bool skip_distance_one = false;
};

std::pair<Diagram, StepStats> step1_kill_bigons(const Diagram& d);
std::pair<Diagram, StepStats> step2_kill_nondisks(const Diagram& d);
std::pair<Diagram, StepStats> step3_distance_one(const Diagram& d);

struct SwStepResult {
    Diagram diagram;
    SwLogEntry log;
    long long additions = 0;
};
SwStepResult sw_step(const Diagram& d, SwMode mode);

std::pair<Diagram, StepStats> step4_sw_loop(const Diagram& d, SwMode mode, NicefyReport* report);

std::pair<Diagram, NicefyReport> nicefy(const Diagram& d, const NicefyOptions& opt = {});

}  // namespace hfk
