#include "trcalc/cobar.hpp"

namespace trcalc {

bool CompareReport::all_pass() const
{
    if (!errors.empty()) return false;
    for (const auto& c : cells)
        if (!c.pass) return false;
    return true;
}

CompareReport compare(const Page& page, int p, int r, i64 d, int max_dim, std::optional<int> filtration)
{
    CompareReport rep;
    rep.errors = page.diagnostics;
    const int min_row = filtration.value_or(0);
    const auto ab = page.abutment(min_row);
    const auto lab = page.abutment_labels(min_row);
    const Multidegree deg{static_cast<int>(d)};
    for (int n = 0; n <= max_dim; ++n) {
        CellReport c;
        c.deg = deg;
        c.dim = n;
        auto it = ab.find(n);
        c.got = it == ab.end() ? PGroup(p) : it->second;
        c.want = filtration ? filtration_chart(p, r, 1, *filtration, deg, n) : tr_chart(p, r, 1, deg, n);
        c.pass = c.got == c.want;
        auto lt = lab.find(n);
        if (lt != lab.end()) c.labels = lt->second;
        rep.cells.push_back(std::move(c));
    }
    return rep;
}

CompareReport compare(const MultiE2& e2, int p, int r, int max_dim)
{
    CompareReport rep;
    rep.errors = e2.diagnostics;
    const int ell = static_cast<int>(e2.deg.size());
    for (int n = 0; n <= max_dim; ++n) {
        CellReport c;
        c.deg = e2.deg;
        c.dim = n;
        auto it = e2.abutment.find(n);
        c.got = it == e2.abutment.end() ? PGroup(p) : it->second;
        c.want = tr_chart(p, r, ell, e2.deg, n);
        c.pass = c.got == c.want;
        auto lt = e2.labels.find(n);
        if (lt != e2.labels.end()) c.labels = lt->second;
        rep.cells.push_back(std::move(c));
    }
    return rep;
}

}  // namespace trcalc
