#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "trcalc/cobar.hpp"
#include "trcalc/parallel.hpp"

namespace trcalc {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

int popcount(unsigned s) { return __builtin_popcount(s); }

std::vector<int> elements(unsigned s)
{
    std::vector<int> out;
    for (int b = 0; s >> b; ++b)
        if ((s >> b) & 1u) out.push_back(b);
    return out;
}

i64 mod(i64 x, i64 q)
{
    x %= q;
    return x < 0 ? x + q : x;
}

}  // namespace

int SymGen::column() const
{
    int c = popcount(S);
    for (int x : alpha) c += 2 * x;
    return c;
}

i64 SymGen::weight(int p) const
{
    i64 w = 0;
    for (int b : elements(S)) w += ipow(p, b);
    for (std::size_t b = 1; b <= alpha.size(); ++b) w += alpha[b - 1] * ipow(p, static_cast<int>(b));
    return w;
}

std::vector<i64> SymGen::fixed_dims(int p, int r) const
{
    std::vector<i64> f(r, 0);
    for (int c = 0; c < r; ++c) {
        for (int b : elements(S))
            if (b >= c) f[c] += ipow(p, b - c);
        for (int b = 1; b < r; ++b)
            if (c < b) f[c] += alpha[b - 1] * ipow(p, b - c);
    }
    return f;
}

std::string SymGen::str() const
{
    std::ostringstream os;
    os << "x^" << m;
    if (S) {
        os << " v{";
        auto e = elements(S);
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << "}";
    }
    for (std::size_t b = 1; b <= alpha.size(); ++b)
        if (alpha[b - 1]) os << " t" << b << "^" << alpha[b - 1];
    return os.str();
}

bool SymGen::operator<(const SymGen& o) const
{
    if (m != o.m) return m < o.m;
    if (S != o.S) return S < o.S;
    return alpha < o.alpha;
}

std::vector<SymGen> symbolic_generators(int p, int r, i64 d)
{
    if (d < 0) throw std::invalid_argument("symbolic_generators: negative weight");
    std::vector<unsigned> masks;
    for (unsigned s = 0; s < (1u << r); ++s) masks.push_back(s);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return elements(a) < elements(b);
    });
    std::vector<SymGen> out;
    for (unsigned S : masks) {
        i64 ws = 0;
        for (int b : elements(S)) ws += ipow(p, b);
        if (ws > d) continue;
        std::vector<int> alpha;
        auto rec = [&](auto&& self, int b, i64 w) -> void {
            if (b == r) {
                out.push_back(SymGen{d - w, S, alpha});
                return;
            }
            const i64 pb = ipow(p, b);
            for (i64 k = 0; k <= (d - w) / pb; ++k) {
                alpha.push_back(static_cast<int>(k));
                self(self, b + 1, w + k * pb);
                alpha.pop_back();
            }
        };
        rec(rec, 1, ws);
    }
    return out;
}

namespace {

struct Pairing {
    enum Kind { Pair, NoTr, Unmatched } kind = Unmatched;
    SymGen src, tgt;
};

int lowest_level(const SymGen& g, int r)
{
    int L = kInf;
    for (int b : elements(g.S)) L = std::min(L, b);
    for (int b = 1; b < r; ++b)
        if (g.alpha[b - 1] > 0) L = std::min(L, b - 1);
    return L;
}

Pairing pairing_of(const SymGen& g, int p, int r, int j)
{
    Pairing P;
    const int L = lowest_level(g, r);
    if (L < std::min(j, r)) {
        const i64 shift = ipow(p, L + 1) - ipow(p, L);
        if ((g.S >> L) & 1u) {
            if (L + 1 > r - 1) {
                P.kind = Pairing::NoTr;
                return P;
            }
            SymGen t = g;
            t.S &= ~(1u << L);
            t.alpha[L] += 1;
            t.m -= shift;
            P = {Pairing::Pair, g, t};
        } else {
            SymGen s = g;
            s.alpha[L] -= 1;
            s.S |= 1u << L;
            s.m += shift;
            P = {Pairing::Pair, s, g};
        }
        return P;
    }
    if (j >= r) return P;
    const i64 pj = ipow(p, j);
    if ((g.S >> j) & 1u) {
        SymGen s = g;
        s.S &= ~(1u << j);
        s.m += pj;
        P = {Pairing::Pair, s, g};
    } else {
        SymGen t = g;
        t.S |= 1u << j;
        t.m -= pj;
        P = {Pairing::Pair, g, t};
    }
    return P;
}

}  // namespace

SymbolicRow symbolic_row0(int p, int r, i64 d)
{
    SymbolicRow R;
    const int j = d > 0 ? vp(d, p) : kInf;
    auto gens = symbolic_generators(p, r, d);
    std::map<SymGen, int> present;
    std::vector<SymGen> order;
    for (const auto& g : gens) {
        int i = region_index(g.fixed_dims(p, r), r, 0);
        if (i > 0) {
            present[g] = i;
            order.push_back(g);
        }
    }
    std::stable_sort(order.begin(), order.end(), [](const SymGen& a, const SymGen& b) { return a.m > b.m; });
    auto order_of = [&](const SymGen& g) {
        auto it = present.find(g);
        return it == present.end() ? 0 : it->second;
    };
    auto survive = [&](const SymGen& g, int e, const char* why) {
        if (e <= 0) return;
        R.columns[g.column()] += PGroup::cyclic(p, e);
        R.labels[g.column()].push_back(g.str());
        if (why) R.diagnostics.push_back(std::string(why) + ": " + g.str());
    };

    std::map<SymGen, bool> matched;
    for (const auto& g : order) {
        if (matched.count(g)) continue;
        const int is = present[g];
        auto P = pairing_of(g, p, r, j);
        if (P.kind == Pairing::NoTr) {
            survive(g, is, "leftover without t_r");
            matched[g] = true;
            continue;
        }
        if (P.kind == Pairing::Unmatched) {
            survive(g, is, nullptr);
            matched[g] = true;
            continue;
        }
        const SymGen& other = P.src == g ? P.tgt : P.src;
        if (other.m < 0 || other.m > d) {
            survive(g, is, "partner out of degree");
            matched[g] = true;
            continue;
        }
        // involution check: the partner's rule must point back
        if (order_of(other) > 0) {
            auto Q = pairing_of(other, p, r, j);
            if (Q.kind != Pairing::Pair || !(Q.src == P.src) || !(Q.tgt == P.tgt))
                R.diagnostics.push_back("pairing not an involution at " + g.str());
        }
        matched[g] = true;
        matched[other] = true;
        ++R.matched_pairs;
        const int i_src = order_of(P.src), i_tgt = order_of(P.tgt);
        if (i_src > i_tgt) survive(P.src, i_src - i_tgt, nullptr);
        if (i_tgt > i_src) survive(P.tgt, i_tgt - i_src, nullptr);
    }
    return R;
}

SymbolicRow symbolic_row(int p, int r, i64 d, int a)
{
    if (a < 1) throw std::invalid_argument("symbolic_row: use symbolic_row0 for a = 0");
    SymbolicRow R;
    const i64 q = ipow(p, r);
    auto gens = symbolic_generators(p, r, d);
    int K = 0;
    for (const auto& g : gens) K = std::max(K, g.column());
    std::vector<std::vector<SymGen>> cols(K + 2);
    std::vector<std::vector<int>> ord(K + 2);
    for (const auto& g : gens) {
        int i = region_index(g.fixed_dims(p, r), r, a);
        if (i == 0) continue;
        cols[g.column()].push_back(g);
        ord[g.column()].push_back(i);
    }
    std::vector<PresentedModule> mods;
    for (int k = 0; k <= K + 1; ++k) mods.push_back(PresentedModule{p, r, ord[k]});
    std::vector<PMatrix> mats;
    for (int k = 0; k <= K; ++k) {
        std::map<SymGen, int> idx;
        for (std::size_t i = 0; i < cols[k + 1].size(); ++i) idx[cols[k + 1][i]] = static_cast<int>(i);
        PMatrix M(static_cast<int>(cols[k + 1].size()), static_cast<int>(cols[k].size()), p, r);
        for (std::size_t jj = 0; jj < cols[k].size(); ++jj) {
            const auto& g = cols[k][jj];
            const int is = ord[k][jj];
            std::vector<std::pair<SymGen, i64>> terms;
            auto e = elements(g.S);
            for (std::size_t pos = 0; pos < e.size(); ++pos) {
                const int b = e[pos];
                if (b == 0) continue;
                SymGen t = g;
                t.S &= ~(1u << b);
                t.alpha[b - 1] += 1;
                terms.push_back({t, pos % 2 ? -1 : 1});
            }
            bool bare = g.m == d && g.S == 0;
            for (int x : g.alpha) bare = bare && x == 0;
            if (bare && d > 0) {
                SymGen t = g;
                t.m = d - 1;
                t.S = 1u;
                terms.push_back({t, mod(d % q * p, q)});
            }
            for (const auto& [t, c] : terms) {
                auto it = idx.find(t);
                if (it == idx.end()) continue;
                const int it_ord = ord[k + 1][it->second];
                if (it_ord < is) {
                    if (mod(c, q) % ipow(p, is - it_ord))
                        R.diagnostics.push_back("divisibility violation at " + g.str() + " -> " + t.str());
                    else
                        M.add(it->second, static_cast<int>(jj), mod(c, q) / ipow(p, is - it_ord));
                    continue;
                }
                M.add(it->second, static_cast<int>(jj), mod(c * ipow(p, it_ord - is), q));
            }
        }
        mats.push_back(std::move(M));
    }
    for (int k = 0; k <= K + 1; ++k) {
        auto h = homology(mods, mats, k);
        if (h.trivial()) continue;
        R.columns[k] = h;
        // a bare generator name is only a representative when the column has a single class
        if (cols[k].size() == 1) R.labels[k].push_back(cols[k][0].str());
    }
    return R;
}

Page symbolic_e2(int p, int r, i64 d, int max_dim)
{
    if (d < 0 || max_dim < 0) throw std::invalid_argument("symbolic_e2: bad window");
    if (r < 1 || r > 30) throw std::invalid_argument("symbolic_e2: bad length");
    const int amax = max_dim / 2 + 1;
    std::vector<SymbolicRow> rows(amax + 1);
    parallel_for(amax + 1, [&](int a) { rows[a] = a == 0 ? symbolic_row0(p, r, d) : symbolic_row(p, r, d, a); });
    Page P;
    P.index = 2;
    P.p = p;
    P.r = r;
    for (int a = 0; a <= amax; ++a) {
        for (const auto& [k, g] : rows[a].columns) {
            P.add(k, 2 * a, g);
            auto it = rows[a].labels.find(k);
            if (it != rows[a].labels.end())
                for (const auto& s : it->second) P.labels[{k, 2 * a}].push_back(s);
        }
        for (const auto& s : rows[a].diagnostics) P.diagnostics.push_back("row " + std::to_string(a) + ": " + s);
    }
    for (auto& s : collapse_violations(P)) P.diagnostics.push_back(std::move(s));
    std::ostringstream os;
    os << "a<=" << amax << " (abutment n<=" << max_dim << ")";
    P.window = os.str();
    return P;
}

}  // namespace trcalc
