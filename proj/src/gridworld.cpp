#include "isc/gridworld.hpp"

#include <string>

namespace isc {

Dir dir_from_string(const std::string& s) {
    if (s == "N") return Dir::N;
    if (s == "E") return Dir::E;
    if (s == "S") return Dir::S;
    if (s == "W") return Dir::W;
    throw ParseError("unknown direction '" + s + "' (expected N, E, S, or W)");
}

const char* dir_to_string(Dir d) {
    switch (d) {
        case Dir::N: return "N";
        case Dir::E: return "E";
        case Dir::S: return "S";
        case Dir::W: return "W";
    }
    return "?";
}

Dir opposite(Dir d) {
    switch (d) {
        case Dir::N: return Dir::S;
        case Dir::E: return Dir::W;
        case Dir::S: return Dir::N;
        case Dir::W: return Dir::E;
    }
    return d;
}

int GridSpec::neighbor(int c, Dir d) const {
    const int r = row_of(c);
    const int co = col_of(c);
    switch (d) {
        case Dir::N: return r > 1 ? cell(r - 1, co) : 0;
        case Dir::S: return r < rows ? cell(r + 1, co) : 0;
        case Dir::W: return co > 1 ? cell(r, co - 1) : 0;
        case Dir::E: return co < cols ? cell(r, co + 1) : 0;
    }
    return 0;
}

GridSpec normalize_spec(GridSpec spec) {
    for (int c = 1; c <= spec.n_cells(); ++c) {
        for (Dir d : {Dir::N, Dir::E, Dir::S, Dir::W}) {
            if (spec.neighbor(c, d) == 0) spec.walls.insert({c, d});
        }
    }
    std::set<std::pair<int, Dir>> mirrored = spec.walls;
    for (const auto& [c, d] : spec.walls) {
        const int nb = spec.neighbor(c, d);
        if (nb != 0) mirrored.insert({nb, opposite(d)});
    }
    spec.walls = std::move(mirrored);
    return spec;
}

namespace {

void check_spec(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) throw InvalidSpec("grid must have positive dimensions");
    if (!(spec.slip_prob >= 0.0 && spec.slip_prob < 1.0)) {
        throw InvalidSpec("slip_prob must lie in [0,1)");
    }
    for (double p : {spec.detect_given_wall, spec.detect_given_no_wall}) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec("detection probability outside [0,1]");
    }
    for (const auto& [c, d] : spec.walls) {
        if (c < 1 || c > spec.n_cells()) {
            throw InvalidSpec("wall segment at cell " + std::to_string(c) + " is off the grid");
        }
        const int nb = spec.neighbor(c, d);
        if (nb != 0 && !spec.has_wall(nb, opposite(d))) {
            throw InvalidSpec("wall set is not symmetric: (" + std::to_string(c) + "," +
                              dir_to_string(d) + ") lacks its mirror");
        }
    }
    for (int c = 1; c <= spec.n_cells(); ++c) {
        for (Dir d : {Dir::N, Dir::E, Dir::S, Dir::W}) {
            if (spec.neighbor(c, d) == 0 && !spec.has_wall(c, d)) {
                throw InvalidSpec("boundary wall missing at cell " + std::to_string(c) +
                                  " direction " + dir_to_string(d));
            }
        }
    }
}

void require_4x4(const GridSpec& spec, const char* what) {
    if (spec.rows != 4 || spec.cols != 4) {
        throw UnsupportedGrid(std::string(what) + " is defined for the 4x4 grid only");
    }
}

}  // namespace

int quadrant_goal(int x0) {
    if (x0 < 1 || x0 > 16) throw OutOfRange("quadrant_goal: state outside 1..16");
    const int row = (x0 - 1) % 4 + 1;
    const int col = (x0 - 1) / 4 + 1;
    return (row <= 2 ? 1 : 4) + (col <= 2 ? 0 : 12);
}

TabularModel build_grid_model(const GridSpec& spec) {
    check_spec(spec);
    const int n = spec.n_cells();
    TabularModel m;
    m.n_states = n;
    m.n_controls = 5;
    m.n_obs = 16;
    m.discount = 0.95;
    m.resize_tables();
    m.initial_belief.assign(n, 1.0 / n);

    for (int c = 1; c <= n; ++c) {
        const int x = c - 1;
        for (int u = 0; u < 4; ++u) {
            const Dir d = static_cast<Dir>(u);
            if (spec.has_wall(c, d)) {
                m.trans(u, x, x) = 1.0;
            } else {
                const int target = spec.neighbor(c, d) - 1;
                m.trans(u, x, target) += 1.0 - spec.slip_prob;
                m.trans(u, x, x) += spec.slip_prob;
            }
        }
        m.trans(4, x, x) = 1.0;

        for (int y = 0; y < 16; ++y) {
            double p = 1.0;
            for (int b = 0; b < 4; ++b) {
                const bool wall = spec.has_wall(c, static_cast<Dir>(b));
                const double detect = wall ? spec.detect_given_wall : spec.detect_given_no_wall;
                p *= (y >> b) & 1 ? detect : 1.0 - detect;
            }
            for (int u = 0; u < 5; ++u) m.obs(u, x, y) = p;
        }
    }
    return m;
}

InitialStateCost build_isc_cost(const GridSpec& spec) {
    require_4x4(spec, "the quadrant cost");
    InitialStateCost c;
    c.resize(16, 5);
    for (int x0 = 1; x0 <= 16; ++x0) {
        const int goal = quadrant_goal(x0);
        for (int x = 1; x <= 16; ++x) {
            const double v = x == goal ? 0.0 : 1.0;
            for (int u = 0; u < 5; ++u) c.at(x0 - 1, x - 1, u) = v;
        }
    }
    return c;
}

StateControlCost build_baseline_cost(const GridSpec& spec) {
    require_4x4(spec, "the corner cost");
    StateControlCost k;
    k.resize(16, 5);
    for (int x = 1; x <= 16; ++x) {
        const bool corner = x == 1 || x == 4 || x == 13 || x == 16;
        for (int u = 0; u < 5; ++u) k.at(x - 1, u) = corner ? 0.0 : 1.0;
    }
    return k;
}

GridExperiment build_experiment(const GridSpec& spec) {
    GridExperiment e;
    e.model = build_grid_model(spec);
    e.isc_cost = build_isc_cost(spec);
    e.baseline_cost = build_baseline_cost(spec);
    e.goal_map.assign(17, 0);
    for (int x0 = 1; x0 <= 16; ++x0) e.goal_map[x0] = quadrant_goal(x0);
    return e;
}

}  // namespace isc
