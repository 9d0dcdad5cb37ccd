#include <sstream>
#include <stdexcept>

#include "trcalc/cobar.hpp"
#include "trcalc/parallel.hpp"

namespace trcalc {

std::string Summand::str() const
{
    std::ostringstream os;
    os << "x^" << m;
    if (!ns.empty()) {
        os << " w(";
        for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
        os << ")";
    }
    return os.str();
}

namespace {

void compositions(i64 w, std::vector<i64>& cur, std::vector<std::vector<i64>>& out)
{
    if (w == 0) {
        out.push_back(cur);
        return;
    }
    for (i64 f = 1; f <= w; ++f) {
        cur.push_back(f);
        compositions(w - f, cur, out);
        cur.pop_back();
    }
}

i64 mod(i64 x, i64 q)
{
    x %= q;
    return x < 0 ? x + q : x;
}

i64 binom_mod(i64 n, i64 k, i64 q)
{
    // exact binomials are small for the degrees this engine handles
    if (k < 0 || k > n) return 0;
    __int128 c = 1;
    for (i64 i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<i64>(c % q);
}

struct Row {
    std::vector<std::vector<Summand>> gens;  // present summands per column
    std::vector<std::vector<int>> orders;
};

Row present_row(int p, int r, i64 d, int a, const std::vector<std::vector<Summand>>& all)
{
    Row R;
    for (const auto& col : all) {
        std::vector<Summand> g;
        std::vector<int> o;
        for (const auto& s : col) {
            int e = region_index(fixed_dims_standard(p, r, s.ns), r, a);
            if (e > 0) {
                g.push_back(s);
                o.push_back(e);
            }
        }
        R.gens.push_back(std::move(g));
        R.orders.push_back(std::move(o));
    }
    (void)d;
    return R;
}

struct Term {
    Summand t;
    i64 c;
};

// d_1 terms of a summand: x-coaction splits b off m, the y-coaction splits one n_l
std::vector<Term> terms(const Summand& s, int p, int r, bool scaled)
{
    const i64 q = ipow(p, r);
    std::vector<Term> out;
    i64 fact = 1, pb = 1;
    for (i64 b = 1; b <= s.m; ++b) {
        fact = static_cast<i64>(static_cast<__int128>(fact) * b % q);
        pb = static_cast<i64>(static_cast<__int128>(pb) * p % q);
        Summand t{s.m - b, {}};
        t.ns.push_back(b);
        t.ns.insert(t.ns.end(), s.ns.begin(), s.ns.end());
        i64 c = binom_mod(s.m, b, q);
        if (scaled) c = static_cast<i64>(static_cast<__int128>(c) * fact % q * pb % q);
        out.push_back({std::move(t), c});
    }
    for (std::size_t l = 0; l < s.ns.size(); ++l) {
        const i64 n = s.ns[l];
        const i64 sign = (l % 2) ? 1 : -1;  // (-1)^{l+1}, l zero-based
        for (i64 a1 = 1; a1 < n; ++a1) {
            Summand t{s.m, {}};
            t.ns.assign(s.ns.begin(), s.ns.begin() + l);
            t.ns.push_back(a1);
            t.ns.push_back(n - a1);
            t.ns.insert(t.ns.end(), s.ns.begin() + l + 1, s.ns.end());
            i64 c = scaled ? 1 : binom_mod(n, a1, q);
            out.push_back({std::move(t), mod(sign * c, q)});
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<Summand>> summands_by_column(i64 d)
{
    if (d < 0) throw std::invalid_argument("summands_by_column: negative weight");
    std::vector<std::vector<Summand>> cols(d + 1);
    for (i64 w = 0; w <= d; ++w) {
        std::vector<std::vector<i64>> comps;
        std::vector<i64> cur;
        compositions(w, cur, comps);
        for (auto& ns : comps) cols[ns.size()].push_back(Summand{d - w, std::move(ns)});
    }
    return cols;
}

E1Table e1_sizes(int p, int r, i64 d, int amax, int kmax, const Rep& ambient)
{
    E1Table T;
    T.page.index = 1;
    T.page.p = p;
    T.page.r = r;
    const auto all = summands_by_column(d);
    std::vector<i64> amb(r, 0);
    if (!ambient.rotations.empty())
        for (int c = 0; c < r; ++c) amb[c] = fixed_dim(ambient, c, r).value();
    for (int a = 0; a <= amax; ++a) {
        i64 chi = 0;
        for (int k = 0; k <= std::min<i64>(kmax, static_cast<i64>(all.size()) - 1); ++k)
            for (const auto& s : all[k]) {
                auto f = fixed_dims_standard(p, r, s.ns);
                for (int c = 0; c < r; ++c) f[c] += amb[c];
                int e = region_index(f, r, a);
                if (e == 0) continue;
                T.page.add(k, 2 * a, PGroup::cyclic(p, e), s.str());
                chi += (k % 2 ? -e : e);
            }
        T.row_euler[a] = chi;
    }
    std::ostringstream os;
    os << "a<=" << amax << " k<=" << kmax;
    T.page.window = os.str();
    return T;
}

Page numeric_e2(int p, int r, i64 d, int amax)
{
    if (d < 0 || amax < 0) throw std::invalid_argument("numeric_e2: bad window");
    const auto all = summands_by_column(d);
    const i64 q = ipow(p, r);
    std::vector<std::map<int, PGroup>> rowres(amax + 1);
    std::vector<std::map<int, std::vector<std::string>>> rowlab(amax + 1);
    std::vector<std::vector<std::string>> rowdiag(amax + 1);

    parallel_for(amax + 1, [&](int a) {
        const bool scaled = a > 0;
        Row R = present_row(p, r, d, a, all);
        const int ncol = static_cast<int>(R.gens.size());
        std::vector<PresentedModule> mods;
        for (int k = 0; k < ncol; ++k) mods.push_back(PresentedModule{p, r, R.orders[k]});
        std::vector<PMatrix> mats;
        for (int k = 0; k + 1 < ncol; ++k) {
            std::map<std::pair<i64, std::vector<i64>>, int> idx;
            for (std::size_t i = 0; i < R.gens[k + 1].size(); ++i)
                idx[{R.gens[k + 1][i].m, R.gens[k + 1][i].ns}] = static_cast<int>(i);
            PMatrix M(static_cast<int>(R.gens[k + 1].size()), static_cast<int>(R.gens[k].size()), p, r);
            for (std::size_t j = 0; j < R.gens[k].size(); ++j) {
                const int is = R.orders[k][j];
                for (const auto& [t, c] : terms(R.gens[k][j], p, r, scaled)) {
                    auto it = idx.find({t.m, t.ns});
                    if (it == idx.end()) continue;  // target of order 0
                    const int i = it->second;
                    const int e = R.orders[k + 1][i] - is;
                    i64 g = c;
                    if (scaled) {
                        if (e >= 0) {
                            g = static_cast<i64>(static_cast<__int128>(c) * ipow(p, e) % q);
                        } else if (c == 0) {
                            g = 0;
                        } else if (vp(c, p) < -e) {
                            rowdiag[a].push_back("divisibility violation at " + R.gens[k][j].str() + " -> " + t.str());
                            g = 0;
                        } else {
                            g = c / ipow(p, -e);
                        }
                    }
                    M.add(i, static_cast<int>(j), g);
                }
            }
            mats.push_back(std::move(M));
        }
        for (int k = 0; k < ncol; ++k) {
            PGroup h(p);
            try {
                h = homology(mods, mats, k);
            } catch (const std::exception& ex) {
                rowdiag[a].push_back(std::string("row ") + std::to_string(a) + ": " + ex.what());
                return;
            }
            if (!h.trivial()) rowres[a][k] = h;
        }
    });

    Page P;
    P.index = 2;
    P.p = p;
    P.r = r;
    for (int a = 0; a <= amax; ++a) {
        for (const auto& [k, g] : rowres[a]) P.add(k, 2 * a, g);
        for (auto& s : rowdiag[a]) P.diagnostics.push_back(std::move(s));
    }
    std::ostringstream os;
    os << "a<=" << amax;
    P.window = os.str();
    return P;
}

}  // namespace trcalc
