#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trcalc/arith.hpp"
#include "trcalc/chart.hpp"
#include "trcalc/reps.hpp"
#include "trcalc/witt.hpp"

namespace trcalc {

// i = min(v_p(gcd over the support), r - 1); nullopt for the zero multidegree
std::optional<int> divisibility_index(int p, int r, const Multidegree& d);

int binomial(int n, int k);

// TR^r_n of F_p[x_1..x_ell] in multidegree d.
PGroup tr_chart(int p, int r, int ell, const Multidegree& d, int n, std::vector<std::string>* labels = nullptr);

// S^V smashed with T(F_p[x_1..x_ell]), fixed points, multidegree d, dimension n.
PGroup smash_tr_chart(int p, int r, int ell, const Rep& V, const Multidegree& d, int n);

// summands (j, k) with j + 2k = n and j + k >= i
PGroup filtration_chart(int p, int r, int ell, int i, const Multidegree& d, int n);

// summands with j + k == i exactly
PGroup gr_chart(int p, int r, int ell, int i, const Multidegree& d, int n);

// W_r Omega^j in multidegree d
PGroup drw_chart(int p, int r, int ell, int j, const Multidegree& d);

// The fiber of T(F_p)_{>=2i} -> (S^{lambda_d} smash T(F_p))_{>=2i}, fixed points, via the long exact sequence.
PGroup theorem1_chart(int p, int r, int i, i64 d, int n);

// exponent of the order of z_l^s in degree 2l; nullopt when z_l^s lies in the ideal
std::optional<int> e3alg_chart(int p, int r, int ell, const Rational& s);

// p^j z_l^s in the ideal (z_l^{l+1}, p z_l^{(l+1)/p}, p^2 z_l^{(l+1)/p^2}, ..., p^r)
bool e3alg_member(int p, int r, int ell, const Rational& s, int j);

PGroup r1_chart(int p, i64 d, int n);

}  // namespace trcalc
