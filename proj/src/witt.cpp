#include "trcalc/witt.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace trcalc {

// ---------------------------------------------------------------- Rational

Rational Rational::normalized(int p) const
{
    Rational x = *this;
    while (x.level > 0 && x.num % p == 0) {
        x.num /= p;
        --x.level;
    }
    if (x.num == 0) x.level = 0;
    return x;
}

i64 Rational::at_level(int p, int target_level) const
{
    if (target_level >= level) return num * ipow(p, target_level - level);
    i64 d = ipow(p, level - target_level);
    if (num % d != 0) throw std::domain_error("denominator exceeds level " + std::to_string(target_level));
    return num / d;
}

std::string Rational::str(int p) const
{
    Rational x = normalized(p);
    return std::to_string(x.num) + "/" + std::to_string(p) + "^" + std::to_string(x.level);
}

Rational Rational::parse(const std::string& s, int p)
{
    Rational x;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            x.num = std::stoll(s);
            return x;
        }
        x.num = std::stoll(s.substr(0, slash));
        std::string den = s.substr(slash + 1);
        auto caret = den.find('^');
        if (caret == std::string::npos) {
            i64 dv = std::stoll(den);
            int lv = 0;
            while (dv > 1 && dv % p == 0) {
                dv /= p;
                ++lv;
            }
            if (dv != 1) throw std::invalid_argument("denominator is not a power of p");
            x.level = lv;
        } else {
            if (std::stoll(den.substr(0, caret)) != p) throw std::invalid_argument("denominator base differs from p");
            x.level = std::stoi(den.substr(caret + 1));
        }
    } catch (const std::logic_error& e) {
        throw std::invalid_argument("bad rational '" + s + "': " + e.what());
    }
    if (x.num < 0 || x.level < 0) throw std::invalid_argument("bad rational '" + s + "'");
    return x;
}

bool rational_less(const Rational& a, const Rational& b, int p)
{
    int L = std::max(a.level, b.level);
    return a.at_level(p, L) < b.at_level(p, L);
}

// ---------------------------------------------------------------- MonomialAlgebra

MonomialAlgebra MonomialAlgebra::make(int p, int level, int n_x, int n_y)
{
    MonomialAlgebra A;
    A.p = p;
    A.level = level;
    A.roles.assign(n_x, VarRole::X);
    A.roles.insert(A.roles.end(), n_y, VarRole::Y);
    return A;
}

bool MonomialAlgebra::in_ideal(const Monomial& m) const
{
    const i64 u = unit();
    for (int v = 0; v < nvars(); ++v)
        if (roles[v] == VarRole::Y && m[v] >= u) return true;
    return false;
}

i64 MonomialAlgebra::weight_num(const Monomial& m) const
{
    i64 w = 0;
    for (i64 x : m) w += x;
    return w;
}

int MonomialAlgebra::monomial_level(const Monomial& m) const
{
    int lev = 0;
    for (i64 x : m)
        if (x) lev = std::max(lev, level - std::min(level, vp(x, p)));
    return lev;
}

std::string MonomialAlgebra::str(const Monomial& m) const
{
    std::ostringstream os;
    bool any = false;
    int ycount = 0;
    for (int v = 0; v < nvars(); ++v) {
        std::string name;
        if (roles[v] == VarRole::X)
            name = v == 0 ? "x" : "x" + std::to_string(v);
        else
            name = "y" + std::to_string(++ycount);
        if (!m[v]) continue;
        if (any) os << "*";
        any = true;
        os << name;
        Rational e{m[v], level};
        Rational n = e.normalized(p);
        if (!(n.level == 0 && n.num == 1)) os << "^(" << n.str(p) << ")";
    }
    if (!any) os << "1";
    return os.str();
}

std::optional<int> torsion_order(const Monomial& m, const MonomialAlgebra& A, int r)
{
    if (A.in_ideal(m)) return std::nullopt;
    const i64 u = A.unit();
    int e = r;
    for (int v = 0; v < A.nvars(); ++v) {
        if (A.roles[v] != VarRole::Y || m[v] == 0) continue;
        i64 x = m[v];
        int j = 0;
        while (x < u && j < e) {
            x *= A.p;
            ++j;
        }
        e = std::min(e, j);
    }
    return e;
}

// ---------------------------------------------------------------- polynomials

Poly poly_add(const Poly& a, const Poly& b, i64 modulus)
{
    Poly out = a;
    for (const auto& [m, c] : b) {
        i64& x = out[m];
        x = ((x + c) % modulus + modulus) % modulus;
        if (x == 0) out.erase(m);
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, const MonomialAlgebra& A, i64 modulus)
{
    Poly out;
    Monomial m(A.nvars());
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            for (int v = 0; v < A.nvars(); ++v) m[v] = ma[v] + mb[v];
            if (A.in_ideal(m)) continue;
            i64& x = out[m];
            x = (x + mulmod(ca, cb, modulus)) % modulus;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
    return out;
}

Poly poly_pow(const Poly& a, i64 e, const MonomialAlgebra& A, i64 modulus)
{
    Poly result{{Monomial(A.nvars(), 0), 1 % modulus}};
    Poly base = a;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base, A, modulus);
        e >>= 1;
        if (e) base = poly_mul(base, base, A, modulus);
    }
    return result;
}

// ---------------------------------------------------------------- flat Witt arithmetic

WittElement witt_reduce(Poly P, const MonomialAlgebra& A, int r)
{
    WittElement w;
    w.r = r;
    for (auto& [m, c] : P) {
        auto e = torsion_order(m, A, r);
        if (!e) continue;
        i64 o = ipow(A.p, *e);
        i64 x = ((c % o) + o) % o;
        if (x) w.coef[m] = x;
    }
    return w;
}

WittElement witt_add(const WittElement& a, const WittElement& b, const MonomialAlgebra& A)
{
    if (a.r != b.r) throw std::invalid_argument("witt_add: length mismatch");
    return witt_reduce(poly_add(a.coef, b.coef, ipow(A.p, a.r)), A, a.r);
}

WittElement witt_mul(const WittElement& a, const WittElement& b, const MonomialAlgebra& A)
{
    if (a.r != b.r) throw std::invalid_argument("witt_mul: length mismatch");
    return witt_reduce(poly_mul(a.coef, b.coef, A, ipow(A.p, a.r)), A, a.r);
}

WittElement witt_scale(const WittElement& a, i64 c, const MonomialAlgebra& A)
{
    const i64 q = ipow(A.p, a.r);
    Poly P;
    for (const auto& [m, x] : a.coef) P[m] = mulmod(x, ((c % q) + q) % q, q);
    return witt_reduce(std::move(P), A, a.r);
}

namespace {

// Q^(p^k) in the flat presentation, reducing torsion after every product.
WittElement frobenius_power(const Poly& Q, const MonomialAlgebra& A, int r, int k)
{
    const i64 q = ipow(A.p, r);
    WittElement cur = witt_reduce(Q, A, r);
    for (int s = 0; s < k; ++s) {
        WittElement acc = cur;
        for (int i = 1; i < A.p; ++i) acc = witt_reduce(poly_mul(acc.coef, cur.coef, A, q), A, r);
        cur = acc;
    }
    return cur;
}

Poly lift_char_p(const Poly& P, int p)
{
    Poly Q;
    for (const auto& [m, c] : P) {
        i64 x = ((c % p) + p) % p;
        if (x) Q[m] = x;
    }
    return Q;
}

}  // namespace

WittElement teichmuller_expand(const Poly& P, const MonomialAlgebra& A, int r)
{
    const i64 root = ipow(A.p, r - 1);
    Poly Q;
    for (const auto& [m, c] : lift_char_p(P, A.p)) {
        Monomial s(m.size());
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] % root != 0)
                throw std::domain_error("teichmuller_expand: denominator capacity exceeded");
            s[v] = m[v] / root;
        }
        Q[s] = c;
    }
    return frobenius_power(Q, A, r, r - 1);
}

// ---------------------------------------------------------------- ring maps

Poly substitute(const Poly& P, const Assignment& f, const MonomialAlgebra& src, const MonomialAlgebra& dst)
{
    const i64 u = src.unit();
    Poly out;
    for (const auto& [m, c] : P) {
        Poly term{{Monomial(dst.nvars(), 0), ((c % src.p) + src.p) % src.p}};
        for (int v = 0; v < src.nvars(); ++v) {
            if (!m[v]) continue;
            if (m[v] % u != 0) throw std::domain_error("substitute: fractional exponent");
            term = poly_mul(term, poly_pow(f.image[v], m[v] / u, dst, dst.p), dst, dst.p);
        }
        out = poly_add(out, term, dst.p);
    }
    return out;
}

Assignment compose(const Assignment& g, const Assignment& f, const MonomialAlgebra& mid, const MonomialAlgebra& dst)
{
    Assignment h;
    for (const auto& P : f.image) h.image.push_back(substitute(P, g, mid, dst));
    return h;
}

WittElement witt_image_scaled(const Assignment& f, const Monomial& m, const MonomialAlgebra& src,
                              const MonomialAlgebra& dst, int r, int t)
{
    if (static_cast<int>(f.image.size()) != src.nvars()) throw std::invalid_argument("assignment arity");
    const int p = src.p;
    const int extra = src.level + r - 1;
    MonomialAlgebra W = dst;
    W.level = dst.level + extra;

    // G = f(m)^{1/p^{r-1}} in characteristic p, at the working level
    Poly G{{Monomial(dst.nvars(), 0), 1}};
    for (int v = 0; v < src.nvars(); ++v) {
        if (!m[v]) continue;
        Poly g;
        for (const auto& [mm, c] : f.image[v]) g[mm] = ((c % p) + p) % p;
        g = lift_char_p(g, p);
        G = poly_mul(G, poly_pow(g, m[v], W, p), W, p);
    }
    WittElement T = frobenius_power(G, W, r, r - 1);

    const i64 q = ipow(p, r);
    const i64 pt = ipow(p, t);
    const i64 shrink = ipow(p, extra);
    Poly out;
    for (const auto& [mm, c] : T.coef) {
        i64 x = mulmod(c, pt, q);
        if (x == 0) continue;
        Monomial d(mm.size());
        bool fits = true;
        for (std::size_t v = 0; v < mm.size(); ++v) {
            if (mm[v] % shrink) {
                fits = false;
                break;
            }
            d[v] = mm[v] / shrink;
        }
        if (!fits) {
            auto e = torsion_order(mm, W, r);
            if (e && x % ipow(p, *e) != 0)
                throw std::domain_error("witt_image: target level too small for " + W.str(mm));
            continue;
        }
        out[d] = x;
    }
    return witt_reduce(std::move(out), dst, r);
}

namespace {

void enumerate_weight(const MonomialAlgebra& A, i64 total, const std::vector<std::vector<i64>>& allowed,
                      const std::function<void(const Monomial&)>& emit)
{
    const int n = A.nvars();
    Monomial m(n, 0);
    // suffix minimum/maximum of allowed values for pruning
    std::vector<i64> suf_min(n + 1, 0), suf_max(n + 1, 0);
    for (int v = n - 1; v >= 0; --v) {
        i64 lo = allowed[v].empty() ? 0 : *std::min_element(allowed[v].begin(), allowed[v].end());
        i64 hi = allowed[v].empty() ? 0 : *std::max_element(allowed[v].begin(), allowed[v].end());
        suf_min[v] = suf_min[v + 1] + lo;
        suf_max[v] = suf_max[v + 1] + hi;
    }
    std::function<void(int, i64)> rec = [&](int v, i64 left) {
        if (v == n) {
            if (left == 0) emit(m);
            return;
        }
        if (left < suf_min[v] || left > suf_max[v]) return;
        for (i64 x : allowed[v]) {
            if (x > left) break;
            m[v] = x;
            rec(v + 1, left - x);
        }
        m[v] = 0;
    };
    rec(0, total);
}

std::vector<std::vector<i64>> all_values(const MonomialAlgebra& A, i64 total)
{
    std::vector<std::vector<i64>> allowed(A.nvars());
    for (int v = 0; v < A.nvars(); ++v) {
        i64 hi = A.roles[v] == VarRole::Y ? std::min(total, A.unit() - 1) : total;
        for (i64 x = 0; x <= hi; ++x) allowed[v].push_back(x);
    }
    return allowed;
}

}  // namespace

WittElement witt_image(const Assignment& f, const Monomial& m, const MonomialAlgebra& src, const MonomialAlgebra& dst,
                       int r)
{
    return witt_image_scaled(f, m, src, dst, r, 0);
}

std::optional<int> WittBasis::index_of(const Monomial& m) const
{
    auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
    if (it == monomials.end() || *it != m) return std::nullopt;
    return static_cast<int>(it - monomials.begin());
}

WittBasis witt_group(const MonomialAlgebra& A, int r, const Rational& weight)
{
    WittBasis B;
    B.module.p = A.p;
    B.module.r = r;
    const i64 total = weight.at_level(A.p, A.level);
    enumerate_weight(A, total, all_values(A, total), [&](const Monomial& m) {
        auto e = torsion_order(m, A, r);
        if (!e) return;
        B.monomials.push_back(m);
        B.module.orders.push_back(*e);
    });
    return B;
}

PMatrix induced_map(const Assignment& f, const MonomialAlgebra& src, const MonomialAlgebra& dst, int r,
                    const Rational& weight)
{
    WittBasis S = witt_group(src, r, weight);
    WittBasis T = witt_group(dst, r, weight);
    PMatrix M(T.module.size(), S.module.size(), src.p, r);
    for (int j = 0; j < S.module.size(); ++j) {
        WittElement img = witt_image(f, S.monomials[j], src, dst, r);
        for (const auto& [m, c] : img.coef) {
            auto i = T.index_of(m);
            if (!i) throw std::logic_error("induced_map: image outside the weight piece");
            M.set(*i, j, c);
        }
    }
    if (!hom_check(M, S.module, T.module)) throw std::logic_error("induced_map: torsion orders violated");
    return M;
}

std::optional<int> WittLattice::index_of(const Monomial& m) const
{
    auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
    if (it == monomials.end() || *it != m) return std::nullopt;
    return static_cast<int>(it - monomials.begin());
}

WittLattice witt_lattice(const MonomialAlgebra& A, int r, const Rational& weight, int n0,
                         const std::function<bool(const Monomial&)>& keep)
{
    if (A.level < n0 + r - 1) throw std::invalid_argument("witt_lattice: level below n0 + r - 1");
    WittLattice L;
    L.n0 = n0;
    L.module.p = A.p;
    L.module.r = r;
    const i64 total = weight.at_level(A.p, A.level);

    // single-coordinate necessary condition: lev(u) - n0 < e(u)
    auto lev_of = [&](i64 x) { return x ? A.level - std::min(A.level, vp(x, A.p)) : 0; };
    std::vector<std::vector<i64>> allowed(A.nvars());
    for (int v = 0; v < A.nvars(); ++v) {
        const bool y = A.roles[v] == VarRole::Y;
        i64 hi = y ? std::min(total, A.unit() - 1) : total;
        for (i64 x = 0; x <= hi; ++x) {
            int t = std::max(0, lev_of(x) - n0);
            int e = r;
            if (y && x) {
                Monomial one(A.nvars(), 0);
                one[v] = x;
                e = *torsion_order(one, A, r);
            }
            if (t < e) allowed[v].push_back(x);
        }
    }
    enumerate_weight(A, total, allowed, [&](const Monomial& m) {
        if (keep && !keep(m)) return;
        auto e = torsion_order(m, A, r);
        if (!e) return;
        int t = std::max(0, A.monomial_level(m) - n0);
        if (t >= *e) return;
        L.monomials.push_back(m);
        L.shift.push_back(t);
        L.module.orders.push_back(*e - t);
    });
    return L;
}

std::vector<i64> lattice_coords(const WittElement& z, const WittLattice& T, int p)
{
    std::vector<i64> x(T.module.size(), 0);
    for (const auto& [m, c] : z.coef) {
        auto i = T.index_of(m);
        if (!i) throw std::logic_error("lattice_coords: component outside the target lattice");
        i64 pt = ipow(p, T.shift[*i]);
        if (c % pt) throw std::logic_error("lattice_coords: coefficient not divisible by the lattice shift");
        x[*i] = (c / pt) % ipow(p, T.module.orders[*i]);
    }
    return x;
}

PMatrix lattice_map(const Assignment& f, const MonomialAlgebra& src, const WittLattice& S, const MonomialAlgebra& dst,
                    const WittLattice& T, int r)
{
    PMatrix M(T.module.size(), S.module.size(), src.p, r);
    for (int j = 0; j < S.module.size(); ++j) {
        auto x = lattice_coords(witt_image_scaled(f, S.monomials[j], src, dst, r, S.shift[j]), T, src.p);
        for (int i = 0; i < T.module.size(); ++i) M.set(i, j, x[i]);
    }
    if (!hom_check(M, S.module, T.module)) throw std::logic_error("lattice_map: torsion orders violated");
    return M;
}

// ---------------------------------------------------------------- Witt coordinates

namespace {

Poly root_poly(const Poly& P, i64 root)
{
    Poly Q;
    for (const auto& [m, c] : P) {
        Monomial s(m.size());
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] % root) throw std::domain_error("denominator capacity exceeded");
            s[v] = m[v] / root;
        }
        Q[s] = c;
    }
    return Q;
}

Poly frob_exponents(const Poly& P, int p)
{
    Poly Q;
    for (const auto& [m, c] : P) {
        Monomial s(m.size());
        for (std::size_t v = 0; v < m.size(); ++v) s[v] = m[v] * p;
        Q[s] = c;
    }
    return Q;
}

}  // namespace

WittElement coords_to_flat(const WittCoords& a, const MonomialAlgebra& A, int r)
{
    if (static_cast<int>(a.size()) != r) throw std::invalid_argument("coords_to_flat: length");
    WittElement z;
    z.r = r;
    for (int i = 0; i < r; ++i) {
        if (a[i].empty()) continue;
        WittElement t = teichmuller_expand(root_poly(lift_char_p(a[i], A.p), ipow(A.p, i)), A, r);
        z = witt_add(z, witt_scale(t, ipow(A.p, i), A), A);
    }
    return z;
}

WittCoords flat_to_coords(const WittElement& z, const MonomialAlgebra& A, int r)
{
    WittCoords out;
    WittElement cur = z;
    for (int i = 0; i < r; ++i) {
        const int len = r - i;
        Poly a;
        for (const auto& [m, c] : cur.coef)
            if (c % A.p) a[m] = c % A.p;
        out.push_back(a);
        if (i + 1 == r) break;
        WittElement t = teichmuller_expand(a, A, len);
        WittElement diff = witt_add(cur, witt_scale(t, -1, A), A);
        // divide by p, then apply the Frobenius m -> m^p; lands in W_{len-1}
        Poly next;
        for (const auto& [m, c] : diff.coef) {
            if (c % A.p) throw std::logic_error("flat_to_coords: difference not divisible by p");
            next[m] = c / A.p;
        }
        cur = witt_reduce(frob_exponents(next, A.p), A, len - 1);
    }
    return out;
}

// ---------------------------------------------------------------- universal addition

WittSumOracle::WittSumOracle(int p, int r) : p_(p), r_(r)
{
    if (r < 1 || r > 4) throw std::invalid_argument("witt_sum_oracle: 1 <= r <= 4 required");
    if (!is_prime(p)) throw std::invalid_argument("witt_sum_oracle: p must be prime");
}

WittCoords WittSumOracle::add(const WittCoords& X, const WittCoords& Y, const MonomialAlgebra& A) const
{
    if (static_cast<int>(X.size()) != r_ || static_cast<int>(Y.size()) != r_)
        throw std::invalid_argument("witt_sum_oracle: length");
    WittCoords S;
    for (int n = 0; n < r_; ++n) {
        const i64 q = ipow(p_, n + 1);
        // p^n S_n = w_n(X) + w_n(Y) - sum_{i<n} p^i S_i^{p^{n-i}}  (mod p^{n+1})
        Poly acc;
        for (int i = 0; i <= n; ++i) {
            i64 pi = ipow(p_, i), e = ipow(p_, n - i);
            auto term = [&](const Poly& P, i64 sign) {
                Poly T = poly_pow(lift_char_p(P, p_), e, A, q);
                for (auto& [m, c] : T) c = mulmod(c, (sign * pi % q + q) % q, q);
                acc = poly_add(acc, T, q);
            };
            term(X[i], 1);
            term(Y[i], 1);
            if (i < n) term(S[i], -1);
        }
        const i64 pn = ipow(p_, n);
        Poly Sn;
        for (const auto& [m, c] : acc) {
            if (c % pn) throw std::logic_error("witt_sum_oracle: ghost recursion not divisible");
            i64 x = (c / pn) % p_;
            if (x) Sn[m] = x;
        }
        S.push_back(Sn);
    }
    return S;
}

WittSumOracle witt_sum_oracle(int p, int r) { return WittSumOracle(p, r); }

}  // namespace trcalc
