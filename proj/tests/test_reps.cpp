#include <random>

#include "doctest.h"
#include "trcalc/reps.hpp"

using namespace trcalc;

TEST_CASE("fixed dimension examples")
{
    CHECK(fixed_dim(Rep(2, {}), 0, 3).value() == 0);
    CHECK(fixed_dim(Rep(2, {1}), 0, 3).value() == 1);
    CHECK(fixed_dim(Rep(2, {1}), 1, 3).value() == 0);
    CHECK(fixed_dim(Rep(2, {2, 4, 3}), 1, 3).value() == 2);
    CHECK(fixed_dim(Rep(2, {2, 4, 3}), 2, 3).value() == 1);
    CHECK(fixed_dim(Rep(2, {1}), -1, 3) == ExtInt::pos_inf());
    CHECK(fixed_dim(Rep(2, {1}), 3, 3) == ExtInt::neg_inf());
}

TEST_CASE("smash homotopy examples")
{
    for (int r = 1; r <= 4; ++r)
        for (int a = 0; a < 6; ++a) CHECK(smash_homotopy(Rep(3, {}), r, a) == PGroup::cyclic(3, r));
    CHECK(smash_homotopy(Rep(2, {1}), 2, 0) == PGroup::cyclic(2, 1));
    CHECK(smash_homotopy(Rep(2, {1}), 2, 1) == PGroup::cyclic(2, 2));
    CHECK(smash_homotopy(Rep(2, {1}), 1, 0).trivial());
    CHECK(smash_homotopy(Rep(2, {1}), 2, -1).trivial());
}

TEST_CASE("fixed dimension and region properties")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int p = trial % 2 ? 3 : 2;
        const int r = 1 + trial % 4;
        std::vector<i64> v, w;
        for (int i = 0, n = trial % 5; i < n; ++i) v.push_back(std::uniform_int_distribution<i64>(1, 30)(rng));
        for (int i = 0, n = trial % 3; i < n; ++i) w.push_back(std::uniform_int_distribution<i64>(1, 30)(rng));
        Rep V(p, v), W(p, w);
        for (int j = 0; j + 1 < r; ++j) CHECK(fixed_dim(V, j, r).value() >= fixed_dim(V, j + 1, r).value());
        for (int j = 0; j < r; ++j)
            CHECK(fixed_dim(V + W, j, r).value() == fixed_dim(V, j, r).value() + fixed_dim(W, j, r).value());
        for (int a = 0; a < 40; ++a) {
            const int e = smash_homotopy(V, r, a).max_exponent();
            CHECK(smash_homotopy(V + W, r, a).max_exponent() <= e);
            if (a >= fixed_dim(V, 0, r).value()) CHECK(e == r);
        }
    }
}

TEST_CASE("standard representations")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 4; ++r) {
            std::vector<i64> ns{1, 4, 9, 2};
            Rep V(p, {});
            for (i64 n : ns) V = V + Rep::standard(p, n);
            auto f = fixed_dims_standard(p, r, ns);
            for (int j = 0; j < r; ++j) CHECK(f[j] == fixed_dim(V, j, r).value());
        }
}

TEST_CASE("region index rejects inconsistent data")
{
    CHECK_THROWS(region_index({0, 5}, 2, 1));
}

TEST_CASE("truncation composes")
{
    Chart c;
    c.p = 2;
    c.r = 3;
    for (int n = 0; n < 10; ++n) c.put({1}, n, PGroup::cyclic(2, 1 + n % 3));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) CHECK(trunc_ge(trunc_ge(c, i), j) == trunc_ge(c, std::max(i, j)));
    CHECK(trunc_ge(c, 4).at({1}, 3).trivial());
    CHECK(trunc_ge(c, 4).at({1}, 4) == c.at({1}, 4));
}

TEST_CASE("Mackey structure of the Witt charts")
{
    auto one = w_mackey(2, 1, 0);
    CHECK(one.levels.size() == 1);
    CHECK(one.res.empty());
    auto two = w_mackey(2, 2, 0);
    CHECK(two.levels[0].group() == PGroup::cyclic(2, 1));
    CHECK(two.levels[1].group() == PGroup::cyclic(2, 2));
    CHECK(two.res[0].at(0, 0) == 1);
    CHECK(two.tr[0].at(0, 0) == 2);
    for (int p : {2, 3, 5})
        for (int r = 1; r <= 4; ++r) {
            CHECK(mackey_relations_hold(w_mackey(p, r, 2 * r)));
            for (const auto& m : w_mackey(p, r, 3).levels) CHECK(m.group().trivial());
        }
}

TEST_CASE("cyclotomic restriction")
{
    auto c = cyclotomic_restriction(3, 3);
    CHECK(c.on_dim(0).at(0, 0) == 1);
    CHECK(c.image_of_power(1) == 3);
    CHECK(c.image_of_power(2) == 0);  // 9 mod 3^2
    CHECK(cyclotomic_restriction(2, 4).image_of_power(2) == 4);
    CHECK_THROWS(cyclotomic_restriction(2, 1));
    for (int p : {2, 3})
        for (int r = 2; r <= 4; ++r) CHECK(cyclotomic_multiplicative(cyclotomic_restriction(p, r), 6));
}
