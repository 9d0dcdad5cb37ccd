#include <numeric>
#include <sstream>
#include <stdexcept>

#include "trcalc/cobar.hpp"

namespace trcalc {

namespace {

// exterior labels u[S] for subsets of size q of the coordinates in A
std::vector<std::string> subset_names(const std::vector<int>& A, int q)
{
    std::vector<std::string> out;
    std::vector<int> pick(A.size(), 0);
    std::fill(pick.end() - q, pick.end(), 1);
    do {
        std::ostringstream os;
        if (q) {
            os << " u[";
            bool first = true;
            for (std::size_t t = 0; t < A.size(); ++t)
                if (pick[t]) {
                    os << (first ? "" : ",") << A[t];
                    first = false;
                }
            os << "]";
        }
        out.push_back(os.str());
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
}

// smash_tr_chart against the region formula at the reduced length, for the outer wedge words
void check_factorization(MultiE2& M, int p, int r, const Multidegree& rest, int rr, i64 d_first, int max_dim)
{
    const int A = static_cast<int>(rest.size());
    const auto words = summands_by_column(std::min<i64>(d_first, 10));
    int checked = 0;
    for (const auto& col : words)
        for (const auto& s : col) {
            if (checked++ >= 200) return;
            Rep V(p, {});
            for (i64 n : s.ns) V = V + Rep::standard(p, n);
            for (int n = 0; n <= max_dim; ++n) {
                PGroup want(p);
                for (int q = n % 2; q <= std::min(A, n); q += 2)
                    for (int t = 0; t < binomial(A, q); ++t) want += smash_homotopy(V, rr, (n - q) / 2);
                PGroup got = smash_tr_chart(p, r, A, V, rest, n);
                if (got != want)
                    M.diagnostics.push_back("factorization mismatch at " + s.str() + " n=" + std::to_string(n) + ": " +
                                            got.str() + " vs " + want.str());
            }
        }
}

}  // namespace

MultiE2 multivar_e2(int p, int r, const Multidegree& d, int max_dim)
{
    if (d.empty()) throw std::invalid_argument("multivar_e2: empty multidegree");
    MultiE2 M;
    M.deg = d;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) throw std::invalid_argument("multivar_e2: negative degree");
        if (d[i]) M.support.push_back(static_cast<int>(i) + 1);
    }
    i64 d_first = M.support.empty() ? 0 : d[M.support[0] - 1];
    std::vector<int> rest_coords(M.support.begin() + (M.support.empty() ? 0 : 1), M.support.end());
    Multidegree rest;
    for (int c : rest_coords) rest.push_back(d[c - 1]);

    M.r_outer = r;
    if (!rest.empty()) {
        int g = 0;
        for (int x : rest) g = std::gcd(g, x);
        M.r_outer = std::min(vp(g, p), r - 1) + 1;
        check_factorization(M, p, r, rest, M.r_outer, d_first, max_dim);
    }
    M.outer = symbolic_e2(p, M.r_outer, d_first, max_dim);
    for (const auto& s : M.outer.diagnostics) M.diagnostics.push_back("outer: " + s);

    const auto base = M.outer.abutment();
    const auto base_labels = M.outer.abutment_labels();
    const int A = static_cast<int>(rest.size());
    for (int n = 0; n <= max_dim; ++n) {
        PGroup g(p);
        std::vector<std::string> lab;
        for (int q = 0; q <= std::min(A, n); ++q) {
            auto it = base.find(n - q);
            if (it == base.end()) continue;
            auto names = subset_names(rest_coords, q);
            for (const auto& u : names) {
                g += it->second;
                auto lt = base_labels.find(n - q);
                if (lt != base_labels.end())
                    for (const auto& s : lt->second) lab.push_back(s + u);
            }
        }
        if (!g.trivial()) {
            M.abutment[n] = g;
            M.labels[n] = std::move(lab);
        }
    }
    return M;
}

}  // namespace trcalc
