#pragma once

#include <optional>
#include <vector>

#include "trcalc/arith.hpp"
#include "trcalc/chart.hpp"

namespace trcalc {

// Integer extended by +inf and -inf. The infinities are tags, never big numbers.
class ExtInt {
public:
    enum class Kind { NegInf, Finite, PosInf };

    constexpr ExtInt(i64 v = 0) : kind_(Kind::Finite), v_(v) {}
    static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
    static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    i64 value() const;

    friend bool operator<(const ExtInt& a, const ExtInt& b);
    friend bool operator<=(const ExtInt& a, const ExtInt& b) { return !(b < a); }
    friend bool operator==(const ExtInt& a, const ExtInt& b)
    {
        return a.kind_ == b.kind_ && (!a.finite() || a.v_ == b.v_);
    }

private:
    constexpr explicit ExtInt(Kind k) : kind_(k), v_(0) {}
    Kind kind_;
    i64 v_;
};

// Complex S^1-representation: direct sum of C[xi_n] over the rotation multiset.
struct Rep {
    int p = 2;
    std::vector<i64> rotations;

    Rep() = default;
    Rep(int p_, std::vector<i64> rot);

    // V_n = C[xi_1] + ... + C[xi_n]
    static Rep standard(int p, i64 n);

    Rep operator+(const Rep& o) const;
    int dim() const { return static_cast<int>(rotations.size()); }
};

// number of rotations divisible by p^j for 0 <= j <= r-1; +inf at j = -1, -inf at j = r
ExtInt fixed_dim(const Rep& V, int j, int r);

// Fixed dimensions of V_{n_1} + ... + V_{n_k} at j = 0..r-1, without materializing the rotations.
std::vector<i64> fixed_dims_standard(int p, int r, const std::vector<i64>& ns);

// Region index i in [0, r] of the fixed-point formula, given the finite fixed
// dimensions f[0..r-1] (sentinels are implied at -1 and r).
int region_index(const std::vector<i64>& f, int r, i64 a);

// Z/p^i for the unique region containing a; trivial for a < 0.
PGroup smash_homotopy(const Rep& V, int r, i64 a);

// zero every entry in topological dimension < i
Chart trunc_ge(const Chart& c, int i);

struct MackeyChart {
    int p = 2;
    int r = 1;
    std::vector<PresentedModule> levels;  // levels[l-1] is the value at level l
    std::vector<PMatrix> res;             // res[l-1]: level l+1 -> level l
    std::vector<PMatrix> tr;              // tr[l-1]: level l -> level l+1
    bool has_structure_maps = true;
};

MackeyChart w_mackey(int p, int r, int dim);

// Per-level groups of S^V smashed with T(F_p) in dimension dim; structure maps are not exposed.
MackeyChart smash_mackey_levels(const Rep& V, int r, int dim);

MackeyChart trunc_ge(const MackeyChart& c, int dim, int i);

// res o tr and tr o res equal multiplication by p at every level where both are defined
bool mackey_relations_hold(const MackeyChart& c);

// The ring map TR^r(F_p) -> TR^{r-1}(F_p); sends sigma to p*sigma.
struct CyclotomicRestriction {
    int p = 2;
    int r = 2;

    PresentedModule source(int dim) const;
    PresentedModule target(int dim) const;
    // 1x1 matrix over Z/p^r in even dimensions, 0x0-shaped trivial map in odd ones
    PMatrix on_dim(int dim) const;
    // image of the generator sigma^a, as a residue mod p^{r-1}
    i64 image_of_power(int a) const;
};

CyclotomicRestriction cyclotomic_restriction(int p, int r);

// multiplicativity sigma^a sigma^b -> image(a) image(b) = image(a+b), for a + b <= amax
bool cyclotomic_multiplicative(const CyclotomicRestriction& c, int amax);

}  // namespace trcalc
