#pragma once

#include <set>
#include <string>
#include <utility>

#include "isc/costs.hpp"
#include "isc/errors.hpp"
#include "isc/model.hpp"

namespace isc {

// Directions double as observation bit positions: N,E,S,W -> bits 0..3.
enum class Dir : int { N = 0, E = 1, S = 2, W = 3 };

Dir dir_from_string(const std::string& s);  // "N"/"E"/"S"/"W"; ParseError otherwise
const char* dir_to_string(Dir d);
Dir opposite(Dir d);

// Grid cells are numbered 1..rows*cols, top-to-bottom within a column, columns
// left-to-right: cell = row + rows*(col-1). Walls are (cell, direction) segments
// stored from both sides; the outer boundary is always walled.
struct GridSpec {
    int rows = 4;
    int cols = 4;
    std::set<std::pair<int, Dir>> walls;
    double slip_prob = 0.2;
    double detect_given_wall = 0.8;
    double detect_given_no_wall = 0.2;
    std::string layout_name;

    int n_cells() const { return rows * cols; }
    int cell(int row, int col) const { return row + rows * (col - 1); }
    int row_of(int cell) const { return (cell - 1) % rows + 1; }
    int col_of(int cell) const { return (cell - 1) / rows + 1; }
    // 0 when the step leaves the grid.
    int neighbor(int cell, Dir d) const;
    bool has_wall(int cell, Dir d) const { return walls.count({cell, d}) > 0; }
};

// Adds boundary walls and the mirror of every interior segment.
GridSpec normalize_spec(GridSpec spec);

// 16-cell quadrant partition onto the four corners; 1-based states.
int quadrant_goal(int x0);

// 5 controls {N,E,S,W,stay}; moves slip (stay) with slip_prob, walls block;
// 16 wall-pattern observations, control-independent; uniform initial belief.
TabularModel build_grid_model(const GridSpec& spec);

// c(x0,x,u) = 1 unless x is the quadrant goal of x0.
InitialStateCost build_isc_cost(const GridSpec& spec);

// kappa(x,u) = 1 unless x is one of the four corners.
StateControlCost build_baseline_cost(const GridSpec& spec);

struct GridExperiment {
    TabularModel model;
    InitialStateCost isc_cost;
    StateControlCost baseline_cost;
    std::vector<int> goal_map;  // 1-based goal per 1-based x0
};

GridExperiment build_experiment(const GridSpec& spec);

}  // namespace isc
