#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trcalc {

using i64 = std::int64_t;

// p^e as a 64-bit integer; throws if it exceeds 2^40.
i64 ipow(i64 p, int e);

// p-adic valuation of a nonzero integer; INT_MAX-ish sentinel is not used,
// callers must handle 0 themselves.
int vp(i64 n, i64 p);

bool is_prime(i64 n);

// Finite abelian p-group, stored as the sorted multiset of cyclic exponents.
class PGroup {
public:
    PGroup() = default;
    explicit PGroup(int p, std::vector<int> exps = {});

    static PGroup cyclic(int p, int e);

    int p() const { return p_; }
    const std::vector<int>& exponents() const { return exps_; }
    bool trivial() const { return exps_.empty(); }
    int log_order() const;
    int max_exponent() const;

    PGroup& operator+=(const PGroup& o);
    friend PGroup operator+(PGroup a, const PGroup& b) { return a += b; }
    bool operator==(const PGroup& o) const { return exps_ == o.exps_ && (trivial() || p_ == o.p_); }
    bool operator!=(const PGroup& o) const { return !(*this == o); }

    // true if every exponent of this group occurs in o (as a sub-multiset)
    bool submultiset_of(const PGroup& o) const;

    std::string str() const;

private:
    int p_ = 0;
    std::vector<int> exps_;
};

// Matrix over Z/p^r. rows index the target, cols the source.
class PMatrix {
public:
    PMatrix() = default;
    PMatrix(int rows, int cols, int p, int r);

    static PMatrix identity(int n, int p, int r);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }
    int r() const { return r_; }
    i64 modulus() const { return q_; }

    i64 at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    void set(int i, int j, i64 v);
    void add(int i, int j, i64 v);

    // valuation of an entry; r for zero
    int val(int i, int j) const;

    PMatrix operator*(const PMatrix& o) const;
    bool operator==(const PMatrix& o) const;

    bool is_zero() const;
    // invertibility over Z/p^r is decided mod p
    bool invertible() const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0, p_ = 2, r_ = 1;
    i64 q_ = 2;
    std::vector<i64> a_;
};

struct PresentedModule {
    int p = 2;
    int r = 1;
    std::vector<int> orders;  // generator g is Z/p^{orders[g]}

    int size() const { return static_cast<int>(orders.size()); }
    PGroup group() const;
};

struct SmithForm {
    PMatrix U, D, V;
    std::vector<int> diag;  // valuations of the diagonal, r for zero entries
};

i64 mulmod(i64 a, i64 b, i64 q);
i64 inv_unit(i64 a, i64 q);

SmithForm smith_normal_form(const PMatrix& M);

// valuations of the diagonal only (no U/V bookkeeping)
std::vector<int> smith_diagonal(const PMatrix& M);

bool hom_check(const PMatrix& M, const PresentedModule& src, const PresentedModule& dst);

// modules[0] -d0-> modules[1] -d1-> ... ; boundaries[k] maps modules[k] to modules[k+1].
PGroup homology(const std::vector<PresentedModule>& modules, const std::vector<PMatrix>& boundaries,
                std::size_t at);

// kernel of src -> dst modulo the image of prev -> src, without the d∘d check
PGroup homology_at(const PresentedModule& src, const PMatrix* in, const PMatrix* out,
                   const PresentedModule* dst);

}  // namespace trcalc
