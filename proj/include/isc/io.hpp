#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isc/costs.hpp"
#include "isc/gridworld.hpp"
#include "isc/model.hpp"
#include "isc/solver.hpp"

namespace isc::io {

// All writers emit doubles via %.16e so files are byte-stable and parse back to
// the identical double.
std::string format_double(double v);

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

void save_model(const TabularModel& m, const std::string& path);
TabularModel load_model(const std::string& path);

void save_state_cost(const StateControlCost& k, const std::string& path);
StateControlCost load_state_cost(const std::string& path);
void save_initial_cost(const InitialStateCost& c, const std::string& path);
InitialStateCost load_initial_cost(const std::string& path);

void save_policy(const AlphaPolicy& p, const SolveParams& params, const std::string& path);
struct LoadedPolicy {
    AlphaPolicy policy;
    SolveParams params;
};
LoadedPolicy load_policy(const std::string& path);

GridSpec load_grid_spec(const std::string& path);
void save_grid_spec(const GridSpec& spec, const std::string& path);

}  // namespace isc::io
