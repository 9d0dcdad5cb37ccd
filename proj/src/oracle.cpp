#include "trcalc/oracle.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace trcalc {

std::optional<int> divisibility_index(int p, int r, const Multidegree& d)
{
    i64 g = 0;
    for (int x : d) {
        if (x < 0) throw std::invalid_argument("multidegree must be non-negative");
        g = std::gcd(g, static_cast<i64>(x));
    }
    if (g == 0) return std::nullopt;
    return std::min(vp(g, p), r - 1);
}

int binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    i64 c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<int>(c);
}

namespace {

int support_size(const Multidegree& d)
{
    int a = 0;
    for (int x : d) a += x != 0;
    return a;
}

std::vector<int> support(const Multidegree& d)
{
    std::vector<int> s;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) s.push_back(static_cast<int>(i) + 1);
    return s;
}

void subset_labels(const std::vector<int>& A, int q, int j, std::vector<std::string>& out)
{
    std::vector<int> pick(A.size(), 0);
    std::fill(pick.end() - q, pick.end(), 1);
    do {
        std::ostringstream os;
        os << "sigma^" << j;
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
}

void check_deg(int ell, const Multidegree& d)
{
    if (static_cast<int>(d.size()) != ell) throw std::invalid_argument("multidegree length differs from variable count");
}

}  // namespace

PGroup tr_chart(int p, int r, int ell, const Multidegree& d, int n, std::vector<std::string>* labels)
{
    check_deg(ell, d);
    PGroup g(p);
    if (n < 0) return g;
    auto i = divisibility_index(p, r, d);
    if (!i) {
        if (n % 2 == 0) {
            g += PGroup::cyclic(p, r);
            if (labels) labels->push_back("sigma^" + std::to_string(n / 2));
        }
        return g;
    }
    const int A = support_size(d);
    const int c = std::min(*i + 1, r);
    for (int q = n % 2; q <= std::min(A, n); q += 2) {
        for (int t = 0; t < binomial(A, q); ++t) g += PGroup::cyclic(p, c);
        if (labels) subset_labels(support(d), q, (n - q) / 2, *labels);
    }
    return g;
}

PGroup smash_tr_chart(int p, int r, int ell, const Rep& V, const Multidegree& d, int n)
{
    check_deg(ell, d);
    PGroup g(p);
    if (n < 0) return g;
    auto i = divisibility_index(p, r, d);
    if (!i) {
        if (n % 2 == 0) g += smash_homotopy(V, r, n / 2);
        return g;
    }
    const int A = support_size(d);
    const int rr = *i + 1;
    std::vector<i64> f(rr);
    for (int c = 0; c < rr; ++c) f[c] = fixed_dim(V, c, rr).value();
    for (int q = n % 2; q <= std::min(A, n); q += 2) {
        int e = region_index(f, rr, (n - q) / 2);
        for (int t = 0; t < binomial(A, q); ++t) g += PGroup::cyclic(p, e);
    }
    return g;
}

namespace {

template <class Keep>
PGroup select_summands(int p, int r, int ell, const Multidegree& d, int n, Keep keep)
{
    check_deg(ell, d);
    PGroup g(p);
    if (n < 0) return g;
    auto i = divisibility_index(p, r, d);
    const int A = i ? support_size(d) : 0;
    const int c = i ? std::min(*i + 1, r) : r;
    for (int q = n % 2; q <= std::min(A, n); q += 2) {
        int k = (n - q) / 2;
        if (!keep(q, k)) continue;
        for (int t = 0; t < binomial(A, q); ++t) g += PGroup::cyclic(p, c);
    }
    return g;
}

}  // namespace

PGroup filtration_chart(int p, int r, int ell, int i, const Multidegree& d, int n)
{
    return select_summands(p, r, ell, d, n, [&](int j, int k) { return j + k >= i; });
}

PGroup gr_chart(int p, int r, int ell, int i, const Multidegree& d, int n)
{
    return select_summands(p, r, ell, d, n, [&](int j, int k) { return j + k == i; });
}

PGroup drw_chart(int p, int r, int ell, int j, const Multidegree& d)
{
    return select_summands(p, r, ell, d, j, [&](int q, int k) { return q == j && k == 0; });
}

namespace {

// kernel and cokernel of a map between cyclic groups Z/p^a -> Z/p^b given by 1 -> c
PGroup kernel_of(int p, int r, int a, int b, i64 c)
{
    if (a == 0) return PGroup(p);
    PresentedModule src{p, r, {a}};
    if (b == 0) return src.group();
    PresentedModule dst{p, r, {b}};
    PMatrix M(1, 1, p, r);
    M.set(0, 0, c);
    return homology({src, dst}, {M}, 0);
}

PGroup cokernel_of(int p, int r, int a, int b, i64 c)
{
    if (b == 0) return PGroup(p);
    PresentedModule dst{p, r, {b}};
    if (a == 0) return dst.group();
    PresentedModule src{p, r, {a}};
    PMatrix M(1, 1, p, r);
    M.set(0, 0, c);
    return homology({src, dst}, {M}, 1);
}

}  // namespace

PGroup theorem1_chart(int p, int r, int i, i64 d, int n)
{
    auto x_exp = [&](int dim) {
        if (dim < 0 || dim % 2 || dim < 2 * i) return 0;
        return smash_homotopy(Rep(p, {}), r, dim / 2).max_exponent();
    };
    if (d == 0) return PGroup::cyclic(p, x_exp(n));
    const Rep L(p, {d});
    auto y_exp = [&](int dim) {
        if (dim < 0 || dim % 2 || dim < 2 * i) return 0;
        return smash_homotopy(L, r, dim / 2).max_exponent();
    };
    // S^0 -> S^{lambda_d}: reduction in dimension 0, multiplication by d*p above
    auto coeff = [&](int dim) -> i64 { return dim == 0 ? 1 : (d % ipow(p, r)) * p; };
    PGroup g(p);
    if (n < 0) return g;
    // 0 -> coker f_{n+1} -> pi_n F -> ker f_n -> 0; one end always vanishes since the charts are even
    g += cokernel_of(p, r, x_exp(n + 1), y_exp(n + 1), coeff(n + 1));
    g += kernel_of(p, r, x_exp(n), y_exp(n), coeff(n));
    return g;
}

std::optional<int> e3alg_chart(int p, int r, int ell, const Rational& s)
{
    if (ell < 0) throw std::invalid_argument("e3alg_chart: negative sigma power");
    const i64 bound = static_cast<i64>(ell + 1);
    const int L = s.level;
    const i64 target = bound * ipow(p, L);
    i64 x = s.num;
    if (x >= target) return std::nullopt;
    int j = 0;
    while (x < target && j < r) {
        x *= p;
        ++j;
    }
    return j;
}

bool e3alg_member(int p, int r, int ell, const Rational& s, int j)
{
    if (j >= r) return true;
    // generator p^{j'} z^{(l+1)/p^{j'}} divides p^j z^s iff j' <= j and s >= (l+1)/p^{j'}
    for (int jp = 0; jp <= j; ++jp) {
        Rational g{static_cast<i64>(ell + 1), jp};
        if (!rational_less(s, g, p)) return true;
    }
    return false;
}

PGroup r1_chart(int p, i64 d, int n)
{
    if (d < 0) throw std::invalid_argument("r1_chart: negative weight");
    // weight 0 has no suspension summand
    if (n < 0 || (d == 0 && n % 2)) return PGroup(p);
    return PGroup::cyclic(p, 1);
}

}  // namespace trcalc
