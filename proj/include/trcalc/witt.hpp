#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trcalc/arith.hpp"

namespace trcalc {

// Non-negative rational num / p^level.
struct Rational {
    i64 num = 0;
    int level = 0;

    // canonical form: level lowered while num is divisible by p
    Rational normalized(int p) const;
    i64 at_level(int p, int target_level) const;  // numerator at a finer level; throws if not exact
    std::string str(int p) const;                 // "num/p^level"
    static Rational parse(const std::string& s, int p);
};

bool rational_less(const Rational& a, const Rational& b, int p);

// Exponent numerators at the shared level of the ambient algebra.
using Monomial = std::vector<i64>;

enum class VarRole { X, Y };

// F_p[x^{1/p^inf}] (x) (F_p[y^{1/p^inf}]/(y))^{(x) k}, with exponents truncated to denominators p^level.
struct MonomialAlgebra {
    int p = 2;
    int level = 0;
    std::vector<VarRole> roles;

    static MonomialAlgebra make(int p, int level, int n_x, int n_y);

    int nvars() const { return static_cast<int>(roles.size()); }
    i64 unit() const { return ipow(p, level); }  // numerator of exponent 1
    bool in_ideal(const Monomial& m) const;
    i64 weight_num(const Monomial& m) const;
    // smallest level at which m is representable
    int monomial_level(const Monomial& m) const;
    std::string str(const Monomial& m) const;
};

// e(m) in [1, r], or nullopt when m lies in the ideal
std::optional<int> torsion_order(const Monomial& m, const MonomialAlgebra& A, int r);

// Polynomial over Z/p^k (characteristic-p polynomials use k = 1).
using Poly = std::map<Monomial, i64>;

// Element of W_r(A_perf) in the flat presentation: residue at m lives in Z/p^{e(m)}.
struct WittElement {
    int r = 1;
    Poly coef;

    bool operator==(const WittElement& o) const { return r == o.r && coef == o.coef; }
};

WittElement witt_reduce(Poly P, const MonomialAlgebra& A, int r);
WittElement witt_add(const WittElement& a, const WittElement& b, const MonomialAlgebra& A);
WittElement witt_mul(const WittElement& a, const WittElement& b, const MonomialAlgebra& A);
WittElement witt_scale(const WittElement& a, i64 c, const MonomialAlgebra& A);

// Teichmuller lift of a characteristic-p polynomial whose monomials live at level <= N - (r-1).
WittElement teichmuller_expand(const Poly& P, const MonomialAlgebra& A, int r);

// Ring map on generators: image[v] is a characteristic-p polynomial in the target variables,
// written at the target level. Only integral exponents may occur in images.
struct Assignment {
    std::vector<Poly> image;
};

Assignment compose(const Assignment& g, const Assignment& f, const MonomialAlgebra& mid, const MonomialAlgebra& dst);
Poly substitute(const Poly& P, const Assignment& f, const MonomialAlgebra& src, const MonomialAlgebra& dst);

// [f(m)] for a single monomial m of src, written at the level of dst.
WittElement witt_image(const Assignment& f, const Monomial& m, const MonomialAlgebra& src,
                       const MonomialAlgebra& dst, int r);

// p^t [f(m)]; monomials finer than the level of dst must carry zero coefficients.
WittElement witt_image_scaled(const Assignment& f, const Monomial& m, const MonomialAlgebra& src,
                              const MonomialAlgebra& dst, int r, int t);

// non-ideal monomials of a given weight at the algebra's level, with torsion orders
struct WittBasis {
    std::vector<Monomial> monomials;
    PresentedModule module;
    std::optional<int> index_of(const Monomial& m) const;
};

WittBasis witt_group(const MonomialAlgebra& A, int r, const Rational& weight);

// Matrix of W_r(f) between weight pieces.
PMatrix induced_map(const Assignment& f, const MonomialAlgebra& src, const MonomialAlgebra& dst, int r,
                    const Rational& weight);

// W_r of the subalgebra with denominators p^{n0}: generators p^t m with t = max(0, lev(m) - n0),
// order p^{e(m) - t}. The ambient algebra level must be at least n0 + r - 1.
struct WittLattice {
    int n0 = 0;
    std::vector<Monomial> monomials;
    std::vector<int> shift;  // t per generator
    PresentedModule module;
    std::optional<int> index_of(const Monomial& m) const;
};

// All lattice generators of the weight piece; the filter may discard monomials (e.g. normalization).
WittLattice witt_lattice(const MonomialAlgebra& A, int r, const Rational& weight, int n0,
                         const std::function<bool(const Monomial&)>& keep = {});

// coordinates of z in the lattice generators; throws if z has a component outside T
std::vector<i64> lattice_coords(const WittElement& z, const WittLattice& T, int p);

PMatrix lattice_map(const Assignment& f, const MonomialAlgebra& src, const WittLattice& S,
                    const MonomialAlgebra& dst, const WittLattice& T, int r);

// Witt coordinates (a_0, ..., a_{r-1}) over A, each a characteristic-p polynomial.
using WittCoords = std::vector<Poly>;

// sum of V^i [a_i] in the flat presentation
WittElement coords_to_flat(const WittCoords& a, const MonomialAlgebra& A, int r);
WittCoords flat_to_coords(const WittElement& z, const MonomialAlgebra& A, int r);

// Universal addition polynomials by the ghost-component recursion.
class WittSumOracle {
public:
    WittSumOracle(int p, int r);
    WittCoords add(const WittCoords& X, const WittCoords& Y, const MonomialAlgebra& A) const;
    int p() const { return p_; }
    int r() const { return r_; }

private:
    int p_, r_;
};

WittSumOracle witt_sum_oracle(int p, int r);

// polynomial helpers, exposed for tests
Poly poly_mul(const Poly& a, const Poly& b, const MonomialAlgebra& A, i64 modulus);
Poly poly_pow(const Poly& a, i64 e, const MonomialAlgebra& A, i64 modulus);
Poly poly_add(const Poly& a, const Poly& b, i64 modulus);

}  // namespace trcalc
