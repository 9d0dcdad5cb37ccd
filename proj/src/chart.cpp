#include "trcalc/chart.hpp"

namespace trcalc {

PGroup Chart::at(const Multidegree& d, int n) const
{
    auto it = cells.find({d, n});
    return it == cells.end() ? PGroup(p) : it->second;
}

void Chart::put(const Multidegree& d, int n, PGroup g, std::vector<std::string> lab)
{
    cells[{d, n}] = std::move(g);
    if (!lab.empty()) labels[{d, n}] = std::move(lab);
}

bool Chart::operator==(const Chart& o) const
{
    if (p != o.p || r != o.r || ell != o.ell) return false;
    auto nontrivial = [](const Chart& c) {
        std::map<std::pair<Multidegree, int>, PGroup> m;
        for (const auto& [k, g] : c.cells)
            if (!g.trivial()) m[k] = g;
        return m;
    };
    return nontrivial(*this) == nontrivial(o);
}

}  // namespace trcalc
