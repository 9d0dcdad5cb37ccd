#include "trcalc/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace trcalc {

namespace {
constexpr i64 kMaxModulus = i64{1} << 40;
}

i64 ipow(i64 p, int e)
{
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    i64 x = 1;
    for (int i = 0; i < e; ++i) {
        x *= p;
        if (x > kMaxModulus) throw std::overflow_error("modulus exceeds 2^40");
    }
    return x;
}

int vp(i64 n, i64 p)
{
    if (n == 0) throw std::invalid_argument("vp(0)");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------- PGroup

PGroup::PGroup(int p, std::vector<int> exps) : p_(p), exps_(std::move(exps))
{
    for (int e : exps_)
        if (e < 1) throw std::invalid_argument("PGroup exponent must be >= 1");
    std::sort(exps_.begin(), exps_.end());
}

PGroup PGroup::cyclic(int p, int e)
{
    if (e <= 0) return PGroup(p);
    return PGroup(p, {e});
}

int PGroup::log_order() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

int PGroup::max_exponent() const { return exps_.empty() ? 0 : exps_.back(); }

PGroup& PGroup::operator+=(const PGroup& o)
{
    if (p_ == 0) p_ = o.p_;
    exps_.insert(exps_.end(), o.exps_.begin(), o.exps_.end());
    std::sort(exps_.begin(), exps_.end());
    return *this;
}

bool PGroup::submultiset_of(const PGroup& o) const
{
    return std::includes(o.exps_.begin(), o.exps_.end(), exps_.begin(), exps_.end());
}

std::string PGroup::str() const
{
    if (exps_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) os << " + ";
        os << "Z/" << p_;
        if (exps_[i] != 1) os << "^" << exps_[i];
    }
    return os.str();
}

// ---------------------------------------------------------------- modular helpers

i64 mulmod(i64 a, i64 b, i64 q)
{
    __int128 x = static_cast<__int128>(a) * b % q;
    if (x < 0) x += q;
    return static_cast<i64>(x);
}

i64 inv_unit(i64 a, i64 q)
{
    i64 g = q, x = 0, x1 = 1, a1 = ((a % q) + q) % q;
    while (a1) {
        i64 t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw std::domain_error("inv_unit: not a unit");
    return ((x % q) + q) % q;
}

// ---------------------------------------------------------------- PMatrix

PMatrix::PMatrix(int rows, int cols, int p, int r)
    : rows_(rows), cols_(cols), p_(p), r_(r), q_(ipow(p, r)),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0)
{
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (r < 1) throw std::invalid_argument("modulus exponent must be >= 1");
}

PMatrix PMatrix::identity(int n, int p, int r)
{
    PMatrix I(n, n, p, r);
    for (int i = 0; i < n; ++i) I.set(i, i, 1);
    return I;
}

void PMatrix::set(int i, int j, i64 v)
{
    v %= q_;
    if (v < 0) v += q_;
    a_[static_cast<std::size_t>(i) * cols_ + j] = v;
}

void PMatrix::add(int i, int j, i64 v) { set(i, j, (at(i, j) + v % q_) % q_); }

int PMatrix::val(int i, int j) const
{
    i64 x = at(i, j);
    if (x == 0) return r_;
    return vp(x, p_);
}

PMatrix PMatrix::operator*(const PMatrix& o) const
{
    if (cols_ != o.rows_ || q_ != o.q_) throw std::invalid_argument("PMatrix product: shape or modulus mismatch");
    PMatrix out(rows_, o.cols_, p_, r_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            i64 a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < o.cols_; ++j) {
                i64 b = o.at(k, j);
                if (b) out.a_[static_cast<std::size_t>(i) * out.cols_ + j] =
                           (out.at(i, j) + mulmod(a, b, q_)) % q_;
            }
        }
    return out;
}

bool PMatrix::operator==(const PMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && a_ == o.a_;
}

bool PMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](i64 x) { return x == 0; });
}

bool PMatrix::invertible() const
{
    if (rows_ != cols_) return false;
    PMatrix red(rows_, cols_, p_, 1);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) red.set(i, j, at(i, j));
    auto d = smith_diagonal(red);
    return static_cast<int>(std::count(d.begin(), d.end(), 0)) == rows_;
}

std::string PMatrix::str() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

PGroup PresentedModule::group() const
{
    std::vector<int> e;
    for (int o : orders)
        if (o > 0) e.push_back(o);
    return PGroup(p, e);
}

// ---------------------------------------------------------------- Smith normal form

namespace {

// Dense working matrix with optional left/right transform tracking.
struct Work {
    int m, n;
    int p, r;
    i64 q;
    std::vector<i64> a;
    std::vector<i64>* U = nullptr;  // m x m
    std::vector<i64>* V = nullptr;  // n x n

    i64& A(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }

    int valuation(i64 x) const
    {
        if (x == 0) return r;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }

    void swap_rows(int i, int j)
    {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(A(i, c), A(j, c));
        if (U)
            for (int c = 0; c < m; ++c) std::swap((*U)[i * m + c], (*U)[j * m + c]);
    }
    void swap_cols(int i, int j)
    {
        if (i == j) return;
        for (int rr = 0; rr < m; ++rr) std::swap(A(rr, i), A(rr, j));
        if (V)
            for (int rr = 0; rr < n; ++rr) std::swap((*V)[rr * n + i], (*V)[rr * n + j]);
    }
    void scale_row(int i, i64 u)
    {
        for (int c = 0; c < n; ++c) A(i, c) = mulmod(A(i, c), u, q);
        if (U)
            for (int c = 0; c < m; ++c) (*U)[i * m + c] = mulmod((*U)[i * m + c], u, q);
    }
    // row_i -= c * row_t
    void axpy_row(int i, int t, i64 c)
    {
        for (int k = 0; k < n; ++k)
            if (A(t, k)) A(i, k) = ((A(i, k) - mulmod(c, A(t, k), q)) % q + q) % q;
        if (U)
            for (int k = 0; k < m; ++k) {
                i64& x = (*U)[i * m + k];
                i64 y = (*U)[t * m + k];
                if (y) x = ((x - mulmod(c, y, q)) % q + q) % q;
            }
    }
    // col_j -= c * col_t
    void axpy_col(int j, int t, i64 c)
    {
        for (int k = 0; k < m; ++k)
            if (A(k, t)) A(k, j) = ((A(k, j) - mulmod(c, A(k, t), q)) % q + q) % q;
        if (V)
            for (int k = 0; k < n; ++k) {
                i64& x = (*V)[k * n + j];
                i64 y = (*V)[k * n + t];
                if (y) x = ((x - mulmod(c, y, q)) % q + q) % q;
            }
    }

    std::vector<int> run()
    {
        std::vector<int> diag;
        int t = 0;
        const int lim = std::min(m, n);
        while (t < lim) {
            // pivot: minimal valuation, ties by lowest (row, col)
            int bv = r, bi = -1, bj = -1;
            for (int i = t; i < m && bv > 0; ++i)
                for (int j = t; j < n; ++j) {
                    i64 x = A(i, j);
                    if (!x) continue;
                    int v = valuation(x);
                    if (v < bv) {
                        bv = v;
                        bi = i;
                        bj = j;
                        if (v == 0) break;
                    }
                }
            if (bi < 0) break;
            swap_rows(t, bi);
            swap_cols(t, bj);
            i64 pv = ipow(p, bv);
            i64 unit = A(t, t) / pv;
            scale_row(t, inv_unit(unit, q));
            for (int i = 0; i < m; ++i)
                if (i != t && A(i, t)) axpy_row(i, t, A(i, t) / pv);
            for (int j = t + 1; j < n; ++j)
                if (A(t, j)) axpy_col(j, t, A(t, j) / pv);
            diag.push_back(bv);
            ++t;
        }
        return diag;
    }
};

Work make_work(const PMatrix& M)
{
    Work w;
    w.m = M.rows();
    w.n = M.cols();
    w.p = M.p();
    w.r = M.r();
    w.q = M.modulus();
    w.a.resize(static_cast<std::size_t>(w.m) * w.n);
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.n; ++j) w.A(i, j) = M.at(i, j);
    return w;
}

std::vector<i64> ident(int n)
{
    std::vector<i64> I(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) I[static_cast<std::size_t>(i) * n + i] = 1;
    return I;
}

PMatrix from_flat(const std::vector<i64>& v, int rows, int cols, int p, int r)
{
    PMatrix M(rows, cols, p, r);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M.set(i, j, v[static_cast<std::size_t>(i) * cols + j]);
    return M;
}

}  // namespace

SmithForm smith_normal_form(const PMatrix& M)
{
    Work w = make_work(M);
    std::vector<i64> U = ident(w.m), V = ident(w.n);
    w.U = &U;
    w.V = &V;
    auto diag = w.run();
    SmithForm out;
    out.U = from_flat(U, w.m, w.m, w.p, w.r);
    out.V = from_flat(V, w.n, w.n, w.p, w.r);
    out.D = from_flat(w.a, w.m, w.n, w.p, w.r);
    out.diag = diag;
    for (int i = static_cast<int>(diag.size()); i < std::min(w.m, w.n); ++i) out.diag.push_back(w.r);
    return out;
}

std::vector<int> smith_diagonal(const PMatrix& M)
{
    Work w = make_work(M);
    auto d = w.run();
    for (int i = static_cast<int>(d.size()); i < std::min(w.m, w.n); ++i) d.push_back(w.r);
    return d;
}

bool hom_check(const PMatrix& M, const PresentedModule& src, const PresentedModule& dst)
{
    if (M.cols() != src.size() || M.rows() != dst.size())
        throw std::invalid_argument("hom_check: dimension mismatch");
    const i64 p = M.p();
    for (int j = 0; j < M.cols(); ++j) {
        i64 pe = ipow(p, src.orders[j]);
        for (int i = 0; i < M.rows(); ++i) {
            i64 x = mulmod(M.at(i, j), pe, M.modulus());
            if (x % ipow(p, dst.orders[i]) != 0) return false;
        }
    }
    return true;
}

namespace {

// Generators of {z : A z = 0} in (Z/p^r)^n, as columns.
std::vector<std::vector<i64>> kernel_generators(const PMatrix& A)
{
    Work w = make_work(A);
    std::vector<i64> V = ident(w.n);
    w.V = &V;
    auto diag = w.run();
    std::vector<std::vector<i64>> gens;
    for (int c = 0; c < w.n; ++c) {
        int a = c < static_cast<int>(diag.size()) ? diag[c] : w.r;
        if (a == 0) continue;
        i64 s = ipow(w.p, w.r - a);
        std::vector<i64> g(w.n);
        for (int i = 0; i < w.n; ++i) g[i] = mulmod(V[static_cast<std::size_t>(i) * w.n + c], s, w.q);
        gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace

PGroup homology_at(const PresentedModule& src, const PMatrix* in, const PMatrix* out, const PresentedModule* dst)
{
    const int p = src.p, r = src.r, n = src.size();
    const i64 q = ipow(p, r);
    if (n == 0) return PGroup(p);

    // kernel of [out | diag(p^{dst orders})], projected to the source coordinates
    std::vector<std::vector<i64>> K;
    if (out && dst && dst->size() > 0) {
        const int m = dst->size();
        PMatrix A(m, n + m, p, r);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) A.set(i, j, out->at(i, j));
            A.set(i, n + i, ipow(p, dst->orders[i]) % q);
        }
        for (auto& g : kernel_generators(A)) {
            g.resize(n);
            if (std::any_of(g.begin(), g.end(), [](i64 x) { return x != 0; })) K.push_back(std::move(g));
        }
    } else {
        for (int i = 0; i < n; ++i) {
            std::vector<i64> g(n, 0);
            g[i] = 1;
            K.push_back(std::move(g));
        }
    }
    if (K.empty()) return PGroup(p);

    // basis of K: U K V = diag(p^{a_i})
    PMatrix Km(n, static_cast<int>(K.size()), p, r);
    for (int c = 0; c < Km.cols(); ++c)
        for (int i = 0; i < n; ++i) Km.set(i, c, K[c][i]);
    SmithForm sk = smith_normal_form(Km);
    std::vector<int> a(n, r);
    for (std::size_t i = 0; i < sk.diag.size() && static_cast<int>(i) < n; ++i) a[i] = sk.diag[i];

    // L = image of the incoming map plus the torsion relations of src
    std::vector<std::vector<i64>> L;
    if (in)
        for (int j = 0; j < in->cols(); ++j) {
            std::vector<i64> l(n);
            for (int i = 0; i < n; ++i) l[i] = in->at(i, j);
            L.push_back(std::move(l));
        }
    for (int i = 0; i < n; ++i) {
        std::vector<i64> l(n, 0);
        l[i] = ipow(p, src.orders[i]) % q;
        L.push_back(std::move(l));
    }

    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (a[i] < r) keep.push_back(i);
    if (keep.empty()) return PGroup(p);

    const int rows = static_cast<int>(keep.size());
    const int lc = static_cast<int>(L.size());
    PMatrix B(rows, lc + rows, p, r);
    for (int ii = 0; ii < rows; ++ii) {
        int i = keep[ii];
        i64 pa = ipow(p, a[i]);
        i64 mod_i = ipow(p, r - a[i]);
        for (int c = 0; c < lc; ++c) {
            i64 s = 0;
            for (int k = 0; k < n; ++k)
                if (L[c][k]) s = (s + mulmod(sk.U.at(i, k), L[c][k], q)) % q;
            if (s % pa != 0) throw std::logic_error("homology: image not contained in kernel");
            B.set(ii, c, (s / pa) % mod_i);
        }
        B.set(ii, lc + ii, mod_i % q);
    }
    std::vector<int> exps;
    for (int v : smith_diagonal(B))
        if (v > 0) exps.push_back(v);
    return PGroup(p, exps);
}

PGroup homology(const std::vector<PresentedModule>& modules, const std::vector<PMatrix>& boundaries, std::size_t at)
{
    if (at >= modules.size()) throw std::out_of_range("homology: index");
    if (boundaries.size() + 1 < modules.size()) throw std::invalid_argument("homology: missing boundaries");
    for (std::size_t k = 0; k + 1 < modules.size(); ++k)
        if (!hom_check(boundaries[k], modules[k], modules[k + 1]))
            throw std::logic_error("homology: boundary " + std::to_string(k) + " does not respect torsion orders");
    for (std::size_t k = 0; k + 2 < modules.size(); ++k) {
        PMatrix dd = boundaries[k + 1] * boundaries[k];
        for (int i = 0; i < dd.rows(); ++i) {
            i64 o = ipow(modules[k + 2].p, modules[k + 2].orders[i]);
            for (int j = 0; j < dd.cols(); ++j)
                if (dd.at(i, j) % o) throw std::logic_error("homology: d o d != 0 at " + std::to_string(k));
        }
    }
    const PMatrix* in = at > 0 ? &boundaries[at - 1] : nullptr;
    const PMatrix* out = at + 1 < modules.size() ? &boundaries[at] : nullptr;
    const PresentedModule* dst = at + 1 < modules.size() ? &modules[at + 1] : nullptr;
    return homology_at(modules[at], in, out, dst);
}

}  // namespace trcalc
