#include "trcalc/reps.hpp"

#include <algorithm>
#include <stdexcept>

namespace trcalc {

i64 ExtInt::value() const
{
    if (!finite()) throw std::logic_error("ExtInt: value of an infinite sentinel");
    return v_;
}

bool operator<(const ExtInt& a, const ExtInt& b)
{
    if (a.kind_ == b.kind_) return a.finite() && a.v_ < b.v_;
    if (a.kind_ == ExtInt::Kind::NegInf) return true;
    if (b.kind_ == ExtInt::Kind::PosInf) return true;
    return false;
}

Rep::Rep(int p_, std::vector<i64> rot) : p(p_), rotations(std::move(rot))
{
    for (i64 n : rotations)
        if (n < 1) throw std::invalid_argument("Rep: rotation numbers must be >= 1");
    std::sort(rotations.begin(), rotations.end());
}

Rep Rep::standard(int p, i64 n)
{
    std::vector<i64> rot;
    for (i64 k = 1; k <= n; ++k) rot.push_back(k);
    return Rep(p, rot);
}

Rep Rep::operator+(const Rep& o) const
{
    if (!rotations.empty() && !o.rotations.empty() && p != o.p) throw std::invalid_argument("Rep: prime mismatch");
    std::vector<i64> rot = rotations;
    rot.insert(rot.end(), o.rotations.begin(), o.rotations.end());
    return Rep(rotations.empty() ? o.p : p, rot);
}

ExtInt fixed_dim(const Rep& V, int j, int r)
{
    if (j < -1 || j > r) throw std::out_of_range("fixed_dim: j outside [-1, r]");
    if (j == -1) return ExtInt::pos_inf();
    if (j == r) return ExtInt::neg_inf();
    const i64 pj = ipow(V.p, j);
    return static_cast<i64>(std::count_if(V.rotations.begin(), V.rotations.end(), [&](i64 n) { return n % pj == 0; }));
}

std::vector<i64> fixed_dims_standard(int p, int r, const std::vector<i64>& ns)
{
    std::vector<i64> f(r, 0);
    for (int c = 0; c < r; ++c) {
        i64 pc = ipow(p, c);
        for (i64 n : ns) f[c] += n / pc;
    }
    return f;
}

int region_index(const std::vector<i64>& f, int r, i64 a)
{
    int found = -1;
    for (int i = 0; i <= r; ++i) {
        ExtInt lo = i == 0 ? ExtInt::neg_inf() : ExtInt(f[r - i]);
        ExtInt hi = i == r ? ExtInt::pos_inf() : ExtInt(f[r - i - 1]);
        if (lo <= ExtInt(a) && ExtInt(a) < hi) {
            if (found >= 0) throw std::logic_error("region_index: region not unique");
            found = i;
        }
    }
    if (found < 0) throw std::logic_error("region_index: no region contains a");
    return found;
}

PGroup smash_homotopy(const Rep& V, int r, i64 a)
{
    if (r < 1) throw std::invalid_argument("smash_homotopy: r >= 1 required");
    if (a < 0) return PGroup(V.p);
    std::vector<i64> f(r);
    for (int j = 0; j < r; ++j) f[j] = fixed_dim(V, j, r).value();
    return PGroup::cyclic(V.p, region_index(f, r, a));
}

Chart trunc_ge(const Chart& c, int i)
{
    Chart out = c;
    for (auto it = out.cells.begin(); it != out.cells.end();) {
        if (it->first.second < i) {
            out.labels.erase(it->first);
            it = out.cells.erase(it);
        } else {
            ++it;
        }
    }
    return out;
}

MackeyChart w_mackey(int p, int r, int dim)
{
    if (r < 1) throw std::invalid_argument("w_mackey: r >= 1 required");
    MackeyChart c;
    c.p = p;
    c.r = r;
    const bool live = dim >= 0 && dim % 2 == 0;
    for (int l = 1; l <= r; ++l) c.levels.push_back(PresentedModule{p, r, {live ? l : 0}});
    for (int l = 1; l < r; ++l) {
        // restriction is reduction, transfer sends 1 to p
        PMatrix res(1, 1, p, r), tr(1, 1, p, r);
        res.set(0, 0, live ? 1 : 0);
        tr.set(0, 0, live ? p : 0);
        c.res.push_back(res);
        c.tr.push_back(tr);
    }
    return c;
}

MackeyChart smash_mackey_levels(const Rep& V, int r, int dim)
{
    MackeyChart c;
    c.p = V.p;
    c.r = r;
    c.has_structure_maps = false;
    for (int l = 1; l <= r; ++l) {
        int e = 0;
        if (dim >= 0 && dim % 2 == 0) e = smash_homotopy(V, l, dim / 2).max_exponent();
        c.levels.push_back(PresentedModule{V.p, r, {e}});
    }
    return c;
}

MackeyChart trunc_ge(const MackeyChart& c, int dim, int i)
{
    if (dim >= i) return c;
    MackeyChart out = c;
    for (auto& m : out.levels) std::fill(m.orders.begin(), m.orders.end(), 0);
    for (auto& M : out.res) M = PMatrix(M.rows(), M.cols(), M.p(), M.r());
    for (auto& M : out.tr) M = PMatrix(M.rows(), M.cols(), M.p(), M.r());
    return out;
}

namespace {

bool equals_mod_orders(const PMatrix& A, const PMatrix& B, const PresentedModule& dst)
{
    for (int i = 0; i < A.rows(); ++i) {
        i64 o = ipow(dst.p, dst.orders[i]);
        for (int j = 0; j < A.cols(); ++j)
            if (((A.at(i, j) - B.at(i, j)) % o + o) % o != 0) return false;
    }
    return true;
}

PMatrix times_p(const PresentedModule& m)
{
    PMatrix P(m.size(), m.size(), m.p, m.r);
    for (int i = 0; i < m.size(); ++i) P.set(i, i, m.p);
    return P;
}

}  // namespace

bool mackey_relations_hold(const MackeyChart& c)
{
    if (!c.has_structure_maps) return false;
    for (int l = 1; l < c.r; ++l) {
        const auto& lo = c.levels[l - 1];
        const auto& hi = c.levels[l];
        const PMatrix& res = c.res[l - 1];
        const PMatrix& tr = c.tr[l - 1];
        if (!hom_check(res, hi, lo) || !hom_check(tr, lo, hi)) return false;
        if (!equals_mod_orders(res * tr, times_p(lo), lo)) return false;
        if (!equals_mod_orders(tr * res, times_p(hi), hi)) return false;
    }
    return true;
}

PresentedModule CyclotomicRestriction::source(int dim) const
{
    return PresentedModule{p, r, {dim >= 0 && dim % 2 == 0 ? r : 0}};
}

PresentedModule CyclotomicRestriction::target(int dim) const
{
    return PresentedModule{p, r, {dim >= 0 && dim % 2 == 0 ? r - 1 : 0}};
}

i64 CyclotomicRestriction::image_of_power(int a) const
{
    const i64 q = ipow(p, r - 1);
    i64 x = 1 % q;
    for (int k = 0; k < a; ++k) x = mulmod(x, p, q);
    return x;
}

PMatrix CyclotomicRestriction::on_dim(int dim) const
{
    PMatrix M(1, 1, p, r);
    if (dim >= 0 && dim % 2 == 0) M.set(0, 0, image_of_power(dim / 2));
    return M;
}

CyclotomicRestriction cyclotomic_restriction(int p, int r)
{
    if (r < 2) throw std::invalid_argument("cyclotomic_restriction: r >= 2 required");
    return CyclotomicRestriction{p, r};
}

bool cyclotomic_multiplicative(const CyclotomicRestriction& c, int amax)
{
    const i64 q = ipow(c.p, c.r - 1);
    if (c.image_of_power(0) != 1 % q) return false;
    for (int a = 0; a <= amax; ++a)
        for (int b = 0; a + b <= amax; ++b) {
            if (mulmod(c.image_of_power(a), c.image_of_power(b), q) != c.image_of_power(a + b)) return false;
            if (!hom_check(c.on_dim(2 * a), c.source(2 * a), c.target(2 * a))) return false;
        }
    return true;
}

}  // namespace trcalc
