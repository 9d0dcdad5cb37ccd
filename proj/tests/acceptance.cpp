#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "trcalc/cobar.hpp"
#include "trcalc/oracle.hpp"
#include "trcalc/reps.hpp"
#include "trcalc/witt.hpp"

using namespace trcalc;

namespace {

struct Check {
    int failures = 0;
    std::string first;

    void operator()(bool ok, const std::string& what)
    {
        if (ok) return;
        if (failures++ == 0) first = what;
    }
};

int vmin(i64 d, int p, int r) { return d == 0 ? r : std::min(vp(d, p) + 1, r); }

std::string at(std::initializer_list<i64> xs)
{
    std::string s = "(";
    for (auto x : xs) s += (s.size() > 1 ? "," : "") + std::to_string(x);
    return s + ")";
}

void tr_of_fp(Check& c)
{
    for (int p : {2, 3, 5})
        for (int r = 1; r <= 4; ++r)
            for (int n = 0; n <= 20; ++n) {
                const auto want = n % 2 ? PGroup(p) : PGroup::cyclic(p, r);
                c(tr_chart(p, r, 0, {}, n) == want, "tr_chart " + at({p, r, n}));
            }
}

void length_one(Check& c)
{
    for (int p : {2, 3})
        for (i64 d = 0; d <= 6; ++d) {
            auto X = dim0_complex(p, 1, d, static_cast<int>(d) + 2, 0);
            auto H = X.cohomology();
            c(!H.empty() && H[0] == PGroup::cyclic(p, 1), "dimension-0 H^0 " + at({p, d}));
            for (std::size_t k = 1; k < H.size(); ++k) c(H[k].trivial(), "dimension-0 H^k " + at({p, d, (i64)k}));
            auto P = symbolic_e2(p, 1, d, 8);
            c(P.diagnostics.empty(), "symbolic diagnostics " + at({p, d}));
            auto it = P.cells.find({0, 0});
            c(it != P.cells.end() && !H.empty() && it->second == H[0], "dimension-0 engines disagree " + at({p, d}));
            const auto ab = P.abutment();
            for (int n = 0; n <= 8; ++n) {
                auto a = ab.find(n);
                const PGroup got = a == ab.end() ? PGroup(p) : a->second;
                c(got == r1_chart(p, d, n), "abutment " + at({p, d, n}));
            }
        }
}

void dim0_row(Check& c)
{
    for (int r : {2, 3})
        for (i64 d = 0; d <= 8; ++d) {
            std::vector<PGroup> prev;
            for (int N : {r - 1, r}) {
                auto H = dim0_complex(2, r, d, static_cast<int>(d) + 2, N).cohomology();
                c(!H.empty() && H[0] == PGroup::cyclic(2, vmin(d, 2, r)), "H^0 " + at({r, d, N}));
                for (std::size_t k = 1; k < H.size(); ++k) c(H[k].trivial(), "H^k " + at({r, d, N, (i64)k}));
                if (!prev.empty()) c(H == prev, "stabilization " + at({r, d}));
                prev = H;
            }
        }
}

WittCoords random_coords(std::mt19937& rng, const MonomialAlgebra& A, int r)
{
    WittCoords a(r);
    for (int i = 0; i < r; ++i) {
        const int L = (r - 1) - i;
        const i64 step = ipow(A.p, A.level - L);
        const int terms = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int t = 0; t < terms; ++t) {
            Monomial m(A.nvars(), 0);
            for (int v = 0; v < A.nvars(); ++v) {
                const i64 hi = A.roles[v] == VarRole::Y ? ipow(A.p, L) - 1 : 2 * ipow(A.p, L);
                m[v] = std::uniform_int_distribution<i64>(0, hi)(rng) * step;
            }
            a[i][m] = std::uniform_int_distribution<i64>(1, A.p - 1)(rng);
        }
    }
    return a;
}

void witt_oracle(Check& c)
{
    std::mt19937 rng(2024);
    for (int p : {2, 3})
        for (int r : {2, 3}) {
            auto A = MonomialAlgebra::make(p, 3 * (r - 1), 1, 1);
            auto S = witt_sum_oracle(p, r);
            int cases = 0;
            for (int t = 0; t < 150; ++t) {
                auto a = random_coords(rng, A, r), b = random_coords(rng, A, r);
                auto direct = witt_add(coords_to_flat(a, A, r), coords_to_flat(b, A, r), A);
                c(direct == coords_to_flat(S.add(a, b, A), A, r), "sum " + at({p, r, t}));
                c(flat_to_coords(direct, A, r) == S.add(a, b, A), "coordinates " + at({p, r, t}));
                ++cases;
            }
            c(cases >= 100, "case count");
        }
}

void collapse(Check& c)
{
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (i64 d = 0; d <= 2 * p * p; ++d) {
                const int dims = static_cast<int>(2 * d + 4);
                auto P = symbolic_e2(p, r, d, dims);
                auto rep = compare(P, p, r, d, dims);
                c(rep.all_pass(), "tr " + at({p, r, d}));
                for (int i = 0; i <= 4; ++i) c(compare(P, p, r, d, dims, i).all_pass(), "filtration " + at({p, r, d, i}));
                if (d >= 1) {
                    auto it = P.cells.find({0, 0});
                    c(it != P.cells.end() && it->second == PGroup::cyclic(p, vmin(d, p, r)), "survivor " + at({p, r, d}));
                }
            }
}

void truncated_orders(Check& c)
{
    for (int p : {2, 3})
        for (int r = 1; r <= 4; ++r) {
            auto A = MonomialAlgebra::make(p, 3, 0, 1);
            for (int L = 0; L <= 3; ++L)
                for (i64 num = 0; num <= 2 * ipow(p, L); ++num) {
                    if (L > 0 && num % p == 0) continue;
                    const i64 scaled = num * ipow(p, 3 - L);
                    c(e3alg_chart(p, r, 0, Rational{num, L}) == torsion_order(Monomial{scaled}, A, r),
                      "torsion " + at({p, r, num, L}));
                }
            for (int ell = 1; ell <= 4; ++ell)
                for (int L = 0; L <= 3; ++L)
                    for (i64 num = 0; num <= (ell + 2) * ipow(p, L); ++num) {
                        Rational s{num, L};
                        int first = 0;
                        while (first < r && !e3alg_member(p, r, ell, s, first)) ++first;
                        c(e3alg_chart(p, r, ell, s).value_or(0) == first, "membership " + at({p, r, ell, num, L}));
                    }
        }
}

void filtration_structure(Check& c)
{
    for (int r = 1; r <= 3; ++r)
        for (int d = 0; d <= 8; ++d)
            for (int n = 0; n <= 12; ++n) {
                const Multidegree deg{d};
                for (int i = 0; i <= 3; ++i) {
                    c(theorem1_chart(2, r, i, d, n) == filtration_chart(2, r, 1, i, deg, n), "fiber " + at({r, d, i, n}));
                    c(filtration_chart(2, r, 1, i + 1, deg, n).submultiset_of(filtration_chart(2, r, 1, i, deg, n)),
                      "nesting " + at({r, d, i, n}));
                }
                PGroup total(2);
                for (int i = 0; i <= n + 1; ++i) total += gr_chart(2, r, 1, i, deg, n);
                c(total == tr_chart(2, r, 1, deg, n), "graded sum " + at({r, d, n}));
            }
}

void two_variables(Check& c)
{
    for (int d1 = 0; d1 <= 4; ++d1)
        for (int d2 = 0; d1 + d2 <= 4; ++d2) {
            auto M = multivar_e2(2, 2, {d1, d2}, 8);
            c(M.diagnostics.empty(), "diagnostics " + at({d1, d2}));
            c(compare(M, 2, 2, 8).all_pass(), "tr " + at({d1, d2}));
        }
}

void mackey(Check& c)
{
    for (int p : {2, 3, 5})
        for (int r = 1; r <= 4; ++r)
            for (int n = 0; n <= 8; ++n) c(mackey_relations_hold(w_mackey(p, r, n)), "relations " + at({p, r, n}));
    for (int p : {2, 3, 5})
        for (int r = 2; r <= 4; ++r) {
            auto R = cyclotomic_restriction(p, r);
            c(cyclotomic_multiplicative(R, 6), "multiplicative " + at({p, r}));
            for (int a = 0; a <= 6; ++a) {
                const i64 mod = ipow(p, r - 1);
                c(R.image_of_power(a) == (a >= r - 1 ? 0 : ipow(p, a)) % mod, "sigma power " + at({p, r, a}));
            }
        }
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Check&)> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> all{
        {1, "TR^r(F_p) chart", 1, tr_of_fp},
        {2, "r = 1 cobar", 60, length_one},
        {3, "dimension-0 Witt row", 600, dim0_row},
        {4, "Witt cross-validation", 60, witt_oracle},
        {5, "symbolic collapse", 300, collapse},
        {6, "truncated polynomial orders", 1, truncated_orders},
        {7, "fiber and filtration structure", 60, filtration_structure},
        {8, "two variables", 900, two_variables},
        {9, "Mackey relations", 1, mackey},
    };
    int failed = 0;
    for (const auto& cr : all) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = c.failures == 0 && error.empty() && s < cr.limit_s;
        if (!ok) ++failed;
        std::printf("%s criterion %d (%s): %.3fs of %.0fs", ok ? "PASS" : "FAIL", cr.id, cr.name, s, cr.limit_s);
        if (!error.empty()) std::printf("; exception: %s", error.c_str());
        if (c.failures) std::printf("; %d failed checks, first: %s", c.failures, c.first.c_str());
        if (s >= cr.limit_s) std::printf("; over time");
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
