#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "trcalc/arith.hpp"

using namespace trcalc;

namespace {

PMatrix mat(int p, int r, std::vector<std::vector<i64>> rows)
{
    PMatrix M(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()), p, r);
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) M.set(i, j, rows[i][j]);
    return M;
}

// random torsion-respecting map src -> dst
PMatrix random_hom(std::mt19937& rng, const PresentedModule& src, const PresentedModule& dst)
{
    PMatrix M(dst.size(), src.size(), src.p, src.r);
    for (int i = 0; i < dst.size(); ++i)
        for (int j = 0; j < src.size(); ++j) {
            i64 v = std::uniform_int_distribution<i64>(0, M.modulus() - 1)(rng);
            M.set(i, j, v * ipow(src.p, std::max(0, dst.orders[i] - src.orders[j])));
        }
    return M;
}

std::vector<std::vector<i64>> elements(const PresentedModule& m)
{
    std::vector<std::vector<i64>> out{{}};
    for (int e : m.orders) {
        std::vector<std::vector<i64>> next;
        for (const auto& v : out)
            for (i64 x = 0; x < ipow(m.p, e); ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<i64> apply(const PMatrix& M, const std::vector<i64>& x, const PresentedModule& dst)
{
    std::vector<i64> y(M.rows());
    for (int i = 0; i < M.rows(); ++i) {
        __int128 s = 0;
        for (int j = 0; j < M.cols(); ++j) s += static_cast<__int128>(M.at(i, j)) * x[j];
        y[i] = static_cast<i64>(s % ipow(dst.p, dst.orders[i]));
    }
    return y;
}

// |H[p^k]| for k = 0..r by enumeration of the middle module
std::vector<std::size_t> brute_torsion_counts(const PresentedModule& A, const PresentedModule& B, const PresentedModule& C,
                                              const PMatrix& f, const PMatrix& g)
{
    std::set<std::vector<i64>> image;
    for (const auto& a : elements(A)) image.insert(apply(f, a, B));
    std::vector<std::size_t> counts(B.r + 1, 0);
    for (const auto& b : elements(B)) {
        auto gb = apply(g, b, C);
        if (std::any_of(gb.begin(), gb.end(), [](i64 v) { return v != 0; })) continue;
        for (int k = 0; k <= B.r; ++k) {
            std::vector<i64> pb(b.size());
            for (std::size_t t = 0; t < b.size(); ++t) pb[t] = b[t] * ipow(B.p, k) % ipow(B.p, B.orders[t]);
            if (image.count(pb)) ++counts[k];
        }
    }
    for (auto& c : counts) c /= image.size();
    return counts;
}

std::vector<std::size_t> group_torsion_counts(const PGroup& g, int r)
{
    std::vector<std::size_t> counts(r + 1, 1);
    for (int k = 0; k <= r; ++k)
        for (int e : g.exponents()) counts[k] *= static_cast<std::size_t>(ipow(g.p(), std::min(e, k)));
    return counts;
}

}  // namespace

TEST_CASE("ipow and valuations")
{
    CHECK(ipow(2, 10) == 1024);
    CHECK(ipow(3, 0) == 1);
    CHECK_THROWS(ipow(2, 41));
    CHECK(vp(12, 2) == 2);
    CHECK(vp(7, 7) == 1);
    CHECK(is_prime(5));
    CHECK_FALSE(is_prime(9));
}

TEST_CASE("PGroup value semantics")
{
    PGroup a(2, {1, 3});
    CHECK(a == PGroup(2, {3, 1}));
    CHECK(a.log_order() == 4);
    CHECK(a.str() == "Z/2 + Z/2^3");
    CHECK(PGroup(2).trivial());
    CHECK(PGroup(2).str() == "0");
    CHECK(PGroup::cyclic(3, 0).trivial());
    CHECK(PGroup(2, {1}).submultiset_of(a));
}

TEST_CASE("smith normal form examples")
{
    SUBCASE("already diagonal")
    {
        auto S = smith_normal_form(mat(2, 2, {{2}}));
        CHECK(S.D == mat(2, 2, {{2}}));
        CHECK(S.U == PMatrix::identity(1, 2, 2));
        CHECK(S.V == PMatrix::identity(1, 2, 2));
    }
    SUBCASE("zero")
    {
        auto S = smith_normal_form(mat(3, 2, {{0}}));
        CHECK(S.D.is_zero());
        CHECK(S.diag == std::vector<int>{2});
    }
    SUBCASE("determinant of valuation one")
    {
        auto M = mat(2, 2, {{1, 1}, {1, 3}});
        auto S = smith_normal_form(M);
        CHECK(S.D == mat(2, 2, {{1, 0}, {0, 2}}));
        CHECK(S.U * M * S.V == S.D);
    }
}

TEST_CASE("hom_check examples")
{
    PresentedModule Zp{2, 2, {1}}, Zp2{2, 2, {2}};
    CHECK(hom_check(PMatrix::identity(1, 2, 2), Zp, Zp));
    CHECK_FALSE(hom_check(mat(2, 2, {{1}}), Zp, Zp2));
    CHECK(hom_check(mat(2, 2, {{2}}), Zp, Zp2));
}

TEST_CASE("homology examples")
{
    const int p = 2, r = 2;
    PresentedModule Z4{p, r, {2}}, Z2{p, r, {1}}, zero{p, r, {}};
    auto times_p = mat(p, r, {{p}});
    CHECK(homology({Z4, Z4}, {times_p}, 0) == PGroup(p, {1}));
    CHECK(homology({Z2, Z2}, {PMatrix::identity(1, p, r)}, 1).trivial());
    CHECK(homology({Z4, Z4, Z4}, {times_p, times_p}, 1).trivial());
    CHECK(homology({zero, Z4}, {PMatrix(1, 0, p, r)}, 1) == PGroup(p, {2}));
    // a non-complex is rejected
    CHECK_THROWS(homology({Z4, Z4, Z4}, {PMatrix::identity(1, p, r), PMatrix::identity(1, p, r)}, 1));
}

TEST_CASE("smith normal form properties on random matrices")
{
    std::mt19937 rng(11);
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (int trial = 0; trial < 60; ++trial) {
                int m = std::uniform_int_distribution<int>(0, 4)(rng), n = std::uniform_int_distribution<int>(0, 4)(rng);
                PMatrix M(m, n, p, r);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        M.set(i, j, std::uniform_int_distribution<i64>(0, M.modulus() - 1)(rng) *
                                        ipow(p, std::uniform_int_distribution<int>(0, r)(rng)));
                auto S = smith_normal_form(M);
                CHECK(S.U * M * S.V == S.D);
                CHECK(S.U.invertible());
                CHECK(S.V.invertible());
                CHECK(std::is_sorted(S.diag.begin(), S.diag.end()));
                CHECK(smith_diagonal(M) == S.diag);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        if (i != j) CHECK(S.D.at(i, j) == 0);
            }
}

TEST_CASE("homology agrees with enumeration on random small complexes")
{
    std::mt19937 rng(5);
    int checked = 0;
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (int trial = 0; trial < 25; ++trial) {
                auto rand_module = [&](int maxgen) {
                    PresentedModule M{p, r, {}};
                    int n = std::uniform_int_distribution<int>(0, maxgen)(rng);
                    for (int i = 0; i < n; ++i) M.orders.push_back(std::uniform_int_distribution<int>(1, r)(rng));
                    return M;
                };
                PresentedModule A = rand_module(2), B = rand_module(2), C = rand_module(1);
                if (ipow(p, B.size() * r) > 800 || ipow(p, A.size() * r) > 800) continue;
                PMatrix g = random_hom(rng, B, C);
                // columns of f drawn from ker g so that g f = 0
                std::vector<std::vector<i64>> ker;
                for (const auto& b : elements(B)) {
                    auto gb = apply(g, b, C);
                    if (std::all_of(gb.begin(), gb.end(), [](i64 v) { return v == 0; })) ker.push_back(b);
                }
                PMatrix f(B.size(), A.size(), p, r);
                for (int j = 0; j < A.size(); ++j) {
                    std::vector<i64> col;
                    for (int tries = 0; tries < 50; ++tries) {
                        col = ker[std::uniform_int_distribution<std::size_t>(0, ker.size() - 1)(rng)];
                        bool ok = true;
                        for (int i = 0; i < B.size(); ++i)
                            if (col[i] * ipow(p, A.orders[j]) % ipow(p, B.orders[i])) ok = false;
                        if (ok) break;
                        col.assign(B.size(), 0);
                    }
                    for (int i = 0; i < B.size(); ++i) f.set(i, j, col[i]);
                }
                REQUIRE(hom_check(f, A, B));
                auto H = homology({A, B, C}, {f, g}, 1);
                CHECK(group_torsion_counts(H, r) == brute_torsion_counts(A, B, C, f, g));
                for (int e : H.exponents()) CHECK(e <= r);
                ++checked;
            }
    CHECK(checked > 50);
}

TEST_CASE("inserting an identity summand leaves homology unchanged")
{
    std::mt19937 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const int p = trial % 2 ? 3 : 2, r = 1 + trial % 3;
        PresentedModule A{p, r, {r}}, B{p, r, {1, r}}, C{p, r, {r}};
        PMatrix f(2, 1, p, r);
        f.set(1, 0, ipow(p, r - 1) * (trial % 2));
        PMatrix g = random_hom(rng, B, C);
        // force g f = 0 by killing the second column of g when f hits it
        if (f.at(1, 0)) g.set(0, 1, g.at(0, 1) * p % g.modulus());
        if (!(g * f).is_zero()) continue;
        auto H1 = homology({A, B, C}, {f, g}, 1);
        auto H2 = homology({A, B, C}, {f, g}, 2);

        const int e = 1 + trial % r;
        PresentedModule B2{p, r, B.orders}, C2{p, r, C.orders};
        B2.orders.push_back(e);
        C2.orders.push_back(e);
        PMatrix f2(3, 1, p, r), g2(2, 3, p, r);
        for (int i = 0; i < 2; ++i) f2.set(i, 0, f.at(i, 0));
        for (int j = 0; j < 2; ++j) g2.set(0, j, g.at(0, j));
        g2.set(1, 2, 1);
        CHECK(homology({A, B2, C2}, {f2, g2}, 1) == H1);
        CHECK(homology({A, B2, C2}, {f2, g2}, 2) == H2);
    }
}
