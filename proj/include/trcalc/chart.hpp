#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trcalc/arith.hpp"

namespace trcalc {

using Multidegree = std::vector<int>;

// (multidegree, topological dimension) -> group, plus free-form labels per cell.
struct Chart {
    int p = 2;
    int r = 1;
    int ell = 1;
    std::map<std::pair<Multidegree, int>, PGroup> cells;
    std::map<std::pair<Multidegree, int>, std::vector<std::string>> labels;

    PGroup at(const Multidegree& d, int n) const;
    void put(const Multidegree& d, int n, PGroup g, std::vector<std::string> lab = {});
    bool operator==(const Chart& o) const;
};

}  // namespace trcalc
