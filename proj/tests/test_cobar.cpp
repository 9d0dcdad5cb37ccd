#include "doctest.h"
#include "trcalc/cobar.hpp"

using namespace trcalc;

namespace {

int vmin(i64 d, int p, int r) { return d == 0 ? r : std::min(vp(d, p) + 1, r); }

i64 row_euler(const Page& P, int a)
{
    i64 chi = 0;
    for (const auto& [key, g] : P.cells)
        if (key.second == 2 * a) chi += (key.first % 2 ? -1 : 1) * g.log_order();
    return chi;
}

}  // namespace

TEST_CASE("conerve structure maps")
{
    auto C = build_conerve(3, 4, 2, 6);
    CHECK(cosimplicial_identity_failures(C).empty());
    const auto& L1 = C.level[1];
    Monomial x(2, 0), y(2, 0);
    x[0] = L1.unit();
    y[1] = L1.unit();
    CHECK(C.coface[0][0].image[0] == Poly{{x, 1}, {y, 1}});
    CHECK(C.coface[0][1].image[0] == Poly{{x, 1}});
    CHECK_THROWS(build_conerve(4, 2, 1, 1));
    CHECK_THROWS(build_conerve(2, -1, 1, 1));
}

TEST_CASE("dimension-0 row")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (i64 d = 0; d <= 6; ++d) {
                std::vector<PGroup> prev;
                for (int N = std::max(0, r - 1); N <= r; ++N) {
                    auto X = dim0_complex(p, r, d, static_cast<int>(d) + 2, N);
                    for (std::size_t k = 0; k + 1 < X.boundaries.size(); ++k) {
                        auto dd = X.boundaries[k + 1] * X.boundaries[k];
                        for (int i = 0; i < dd.rows(); ++i)
                            for (int j = 0; j < dd.cols(); ++j)
                                CHECK(dd.at(i, j) % ipow(p, X.modules[k + 2].orders[i]) == 0);
                    }
                    auto H = X.cohomology();
                    REQUIRE(!H.empty());
                    CHECK(H[0] == PGroup::cyclic(p, vmin(d, p, r)));
                    for (std::size_t k = 1; k < H.size(); ++k) CHECK(H[k].trivial());
                    if (!prev.empty()) CHECK(H == prev);
                    prev = H;
                }
            }
    CHECK_THROWS(dim0_complex(2, 3, 4, 3, 1));
}

TEST_CASE("dimension-0 row at weight zero is constant")
{
    auto X = dim0_complex(2, 3, 0, 4, 3);
    CHECK(X.modules[0].group() == PGroup::cyclic(2, 3));
    for (std::size_t k = 1; k < X.modules.size(); ++k) CHECK(X.modules[k].group().trivial());
}

TEST_CASE("E_1 sizes")
{
    auto T = e1_sizes(2, 2, 1, 0, 1);
    auto col1 = T.page.cells.find({1, 0});
    REQUIRE(col1 != T.page.cells.end());
    CHECK(col1->second == PGroup::cyclic(2, 1));
    CHECK(T.page.cells.at({0, 0}) == PGroup::cyclic(2, 2));
    CHECK(summands_by_column(3)[2].size() == 3);
    CHECK(summands_by_column(0).size() == 1);
}

TEST_CASE("numeric E_2 agrees with the symbolic rows and preserves Euler characteristics")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (i64 d = 0; d <= 6; ++d) {
                const int amax = static_cast<int>(d) + 2;
                auto num = numeric_e2(p, r, d, amax);
                auto sym = symbolic_e2(p, r, d, 2 * amax - 2);
                CHECK(num.diagnostics.empty());
                CHECK(sym.diagnostics.empty());
                auto E1 = e1_sizes(p, r, d, amax, static_cast<int>(d) + 1);
                for (int a = 0; a <= amax; ++a) {
                    CHECK(row_euler(num, a) == E1.row_euler.at(a));
                    for (int k = 0; k <= 2; ++k) {
                        auto x = num.cells.find({k, 2 * a});
                        auto y = sym.cells.find({k, 2 * a});
                        CHECK((x == num.cells.end() ? PGroup(p) : x->second) == (y == sym.cells.end() ? PGroup(p) : y->second));
                    }
                }
            }
}

TEST_CASE("symbolic row zero leaves one survivor")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 4; ++r)
            for (i64 d = 1; d <= 2 * p * p; ++d) {
                auto R = symbolic_row0(p, r, d);
                CHECK(R.diagnostics.empty());
                REQUIRE(R.columns.size() == 1);
                CHECK(R.columns.at(0) == PGroup::cyclic(p, vmin(d, p, r)));
                CHECK(R.labels.at(0) == std::vector<std::string>{"x^" + std::to_string(d)});
            }
}

TEST_CASE("symbolic generators")
{
    auto gens = symbolic_generators(2, 2, 2);
    for (const auto& g : gens) CHECK(g.m + g.weight(2) == 2);
    SymGen v1{0, 2u, {0}}, t1{0, 0u, {1}};
    CHECK(v1.weight(2) == t1.weight(2));
    CHECK(v1.column() == 1);
    CHECK(t1.column() == 2);
    CHECK(v1.fixed_dims(2, 2) == std::vector<i64>{2, 1});
    CHECK(t1.fixed_dims(2, 2) == std::vector<i64>{2, 0});
    CHECK(v1.str() == "x^0 v{1}");
}

TEST_CASE("higher rows are two cells")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (i64 d = 1; d <= 2 * p * p; ++d)
                for (int a = 1; a <= d + 2; ++a) {
                    auto R = symbolic_row(p, r, d, a);
                    CHECK(R.diagnostics.empty());
                    const auto c = PGroup::cyclic(p, vmin(d, p, r));
                    CHECK(R.columns == std::map<int, PGroup>{{0, c}, {1, c}});
                }
}

TEST_CASE("collapse detection")
{
    Page P;
    P.p = 2;
    P.add(0, 2, PGroup::cyclic(2, 1));
    P.add(2, 3, PGroup::cyclic(2, 1));
    CHECK(collapse_violations(P).size() == 1);
    for (i64 d = 0; d <= 8; ++d) CHECK(collapse_violations(symbolic_e2(2, 3, d, 2 * d + 4)).empty());
}

TEST_CASE("comparison against the charts")
{
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (i64 d = 0; d <= 2 * p * p; ++d) {
                auto P = symbolic_e2(p, r, d, static_cast<int>(2 * d + 4));
                CHECK(compare(P, p, r, d, static_cast<int>(2 * d + 4)).all_pass());
                for (int i = 0; i <= 4; ++i) CHECK(compare(P, p, r, d, static_cast<int>(2 * d + 4), i).all_pass());
            }
    auto P = symbolic_e2(2, 3, 4, 8);
    auto rep = compare(P, 2, 3, 4, 8);
    CHECK(rep.cells[0].got == PGroup::cyclic(2, 3));
    CHECK(rep.cells[0].labels == std::vector<std::string>{"x^4"});
    // a wrong chart is reported
    CHECK_FALSE(compare(symbolic_e2(2, 3, 4, 8), 2, 3, 2, 8).all_pass());
}

TEST_CASE("several variables")
{
    auto M = multivar_e2(2, 2, {1, 1}, 2);
    CHECK(M.diagnostics.empty());
    CHECK(M.abutment.at(1) == PGroup(2, {1, 1}));
    CHECK(compare(M, 2, 2, 2).all_pass());
    for (int d1 = 0; d1 <= 6; ++d1)
        for (int d2 = 0; d1 + d2 <= 6; ++d2)
            for (int r = 1; r <= 3; ++r) CHECK(compare(multivar_e2(3, r, {d1, d2}, 6), 3, r, 6).all_pass());
    CHECK(compare(multivar_e2(2, 3, {2, 4, 6}, 6), 2, 3, 6).all_pass());
}
