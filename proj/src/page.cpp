#include <sstream>

#include "trcalc/cobar.hpp"

namespace trcalc {

void Page::add(int col, int dim, const PGroup& g, const std::string& label)
{
    if (g.trivial()) return;
    auto it = cells.find({col, dim});
    if (it == cells.end())
        cells.emplace(std::make_pair(col, dim), g);
    else
        it->second += g;
    if (!label.empty()) labels[{col, dim}].push_back(label);
}

std::map<int, PGroup> Page::abutment(int min_row) const
{
    std::map<int, PGroup> out;
    for (const auto& [key, g] : cells) {
        auto [k, dim] = key;
        if (dim < 2 * min_row) continue;
        auto it = out.find(dim - k);
        if (it == out.end())
            out.emplace(dim - k, g);
        else
            it->second += g;
    }
    return out;
}

std::map<int, std::vector<std::string>> Page::abutment_labels(int min_row) const
{
    std::map<int, std::vector<std::string>> out;
    for (const auto& [key, names] : labels) {
        auto [k, dim] = key;
        if (dim < 2 * min_row) continue;
        auto& v = out[dim - k];
        v.insert(v.end(), names.begin(), names.end());
    }
    return out;
}

std::vector<std::string> collapse_violations(const Page& page)
{
    std::vector<std::string> out;
    for (const auto& [a, ga] : page.cells)
        for (const auto& [b, gb] : page.cells) {
            if (ga.trivial() || gb.trivial()) continue;
            const int s = b.first - a.first;
            if (s < 2) continue;
            if ((b.second - b.first) != (a.second - a.first) - 1) continue;
            std::ostringstream os;
            os << "collapse-violation: d_" << s << " (" << a.first << "," << a.second << ") -> (" << b.first << ","
               << b.second << ")";
            out.push_back(os.str());
        }
    return out;
}

}  // namespace trcalc
