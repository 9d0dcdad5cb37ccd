#include <algorithm>
#include <stdexcept>

#include "trcalc/cobar.hpp"

namespace trcalc {

namespace {

Poly var(const MonomialAlgebra& A, int v)
{
    Monomial m(A.nvars(), 0);
    m[v] = A.unit();
    return Poly{{m, 1}};
}

Poly sum(const Poly& a, const Poly& b, int p) { return poly_add(a, b, p); }

// d^j : level k -> level k+1
Assignment coface_map(const MonomialAlgebra& dst, int k, int j)
{
    Assignment f;
    const int p = dst.p;
    f.image.resize(k + 1);
    if (j == 0) {
        f.image[0] = sum(var(dst, 0), var(dst, 1), p);
        for (int i = 1; i <= k; ++i) f.image[i] = var(dst, i + 1);
        return f;
    }
    f.image[0] = var(dst, 0);
    for (int i = 1; i <= k; ++i) {
        if (i < j)
            f.image[i] = var(dst, i);
        else if (i == j)
            f.image[i] = sum(var(dst, j), var(dst, j + 1), p);
        else
            f.image[i] = var(dst, i + 1);
    }
    return f;
}

// s^i : level k -> level k-1, merging coordinates i and i+1
Assignment codegen_map(const MonomialAlgebra& dst, int k, int i)
{
    Assignment s;
    s.image.resize(k + 1);
    s.image[0] = var(dst, 0);
    for (int l = 1; l <= k; ++l) {
        if (l <= i)
            s.image[l] = var(dst, l);
        else if (l == i + 1)
            s.image[l] = Poly{};
        else
            s.image[l] = var(dst, l - 1);
    }
    return s;
}

bool same(const Assignment& a, const Assignment& b) { return a.image == b.image; }

Assignment identity_map(const MonomialAlgebra& A)
{
    Assignment f;
    for (int v = 0; v < A.nvars(); ++v) f.image.push_back(var(A, v));
    return f;
}

}  // namespace

CosimplicialRing build_conerve(int p, int kmax, int N, i64 D)
{
    if (kmax < 0 || N < 0 || D < 0) throw std::invalid_argument("build_conerve: caps must be non-negative");
    if (!is_prime(p)) throw std::invalid_argument("build_conerve: p must be prime");
    ipow(p, N);  // capacity check
    CosimplicialRing C;
    C.p = p;
    C.kmax = kmax;
    C.N = N;
    C.D = D;
    for (int k = 0; k <= kmax; ++k) C.level.push_back(MonomialAlgebra::make(p, N, 1, k));
    C.coface.resize(kmax + 1);
    C.codegen.resize(kmax + 1);
    for (int k = 0; k < kmax; ++k)
        for (int j = 0; j <= k + 1; ++j) C.coface[k].push_back(coface_map(C.level[k + 1], k, j));
    for (int k = 1; k <= kmax; ++k)
        for (int i = 0; i < k; ++i) C.codegen[k].push_back(codegen_map(C.level[k - 1], k, i));
    return C;
}

std::vector<std::string> cosimplicial_identity_failures(const CosimplicialRing& C)
{
    std::vector<std::string> bad;
    // the maps are compared as polynomial substitutions, before truncating the y's
    std::vector<MonomialAlgebra> free_level = C.level;
    for (auto& A : free_level) std::fill(A.roles.begin(), A.roles.end(), VarRole::X);
    auto lv = [&](int k) -> const MonomialAlgebra& { return free_level[k]; };
    auto tag = [](const char* what, int k, int i, int j) {
        return std::string(what) + " k=" + std::to_string(k) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
    };
    // d^j d^i = d^i d^{j-1} for i < j
    for (int k = 0; k + 2 <= C.kmax; ++k)
        for (int j = 0; j <= k + 2; ++j)
            for (int i = 0; i < j; ++i) {
                auto lhs = compose(C.coface[k + 1][j], C.coface[k][i], lv(k + 1), lv(k + 2));
                auto rhs = compose(C.coface[k + 1][i], C.coface[k][j - 1], lv(k + 1), lv(k + 2));
                if (!same(lhs, rhs)) bad.push_back(tag("dd", k, i, j));
            }
    // s^j s^i = s^i s^{j+1} for i <= j
    for (int k = 2; k <= C.kmax; ++k)
        for (int i = 0; i <= k - 1; ++i)
            for (int j = i; j <= k - 2; ++j) {
                auto lhs = compose(C.codegen[k - 1][j], C.codegen[k][i], lv(k - 1), lv(k - 2));
                auto rhs = compose(C.codegen[k - 1][i], C.codegen[k][j + 1], lv(k - 1), lv(k - 2));
                if (!same(lhs, rhs)) bad.push_back(tag("ss", k, i, j));
            }
    // mixed identities for s^j d^i : level k -> level k
    for (int k = 0; k + 1 <= C.kmax; ++k)
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i <= k + 1; ++i) {
                auto lhs = compose(C.codegen[k + 1][j], C.coface[k][i], lv(k + 1), lv(k));
                Assignment rhs;
                if (i == j || i == j + 1)
                    rhs = identity_map(lv(k));
                else if (i < j)
                    rhs = compose(C.coface[k - 1][i], C.codegen[k][j - 1], lv(k - 1), lv(k));
                else
                    rhs = compose(C.coface[k - 1][i - 1], C.codegen[k][j], lv(k - 1), lv(k));
                if (!same(lhs, rhs)) bad.push_back(tag("sd", k, i, j));
            }
    return bad;
}

}  // namespace trcalc
