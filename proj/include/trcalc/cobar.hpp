#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trcalc/arith.hpp"
#include "trcalc/chart.hpp"
#include "trcalc/oracle.hpp"
#include "trcalc/reps.hpp"
#include "trcalc/witt.hpp"

namespace trcalc {

// ---------------------------------------------------------------- conerve

// Level k: variables (x, y_1..y_k), y_i = x_i - x_{i-1} in the Amitsur coordinates x_0..x_k, x = x_0.
struct CosimplicialRing {
    int p = 2;
    int kmax = 0;
    int N = 0;
    i64 D = 0;
    std::vector<MonomialAlgebra> level;             // 0..kmax
    std::vector<std::vector<Assignment>> coface;    // coface[k][j]: level k -> k+1, j = 0..k+1 (k < kmax)
    std::vector<std::vector<Assignment>> codegen;   // codegen[k][i]: level k -> k-1, i = 0..k-1 (k >= 1)
};

CosimplicialRing build_conerve(int p, int kmax, int N, i64 D);

// list of violated identities (empty when all hold)
std::vector<std::string> cosimplicial_identity_failures(const CosimplicialRing& C);

// ---------------------------------------------------------------- dimension 0 row

struct Dim0Complex {
    int p = 2, r = 1, kmax = 0, N = 0;
    i64 d = 0;
    bool normalized = true;
    std::vector<PresentedModule> modules;   // columns 0..kmax
    std::vector<PMatrix> boundaries;        // column k -> k+1, k < kmax
    std::vector<std::vector<std::string>> generator_labels;

    // H^k for k < kmax (the last column has no outgoing map inside the truncation)
    std::vector<PGroup> cohomology() const;
};

// The weight-d piece of the Amitsur complex of W_r along F_p[x] -> F_p[x^{1/p^{n0}}], n0 = N - (r-1).
Dim0Complex dim0_complex(int p, int r, i64 d, int kmax, int N, bool normalized = true);

// ---------------------------------------------------------------- pages

struct Page {
    int index = 1;
    int p = 2, r = 1;
    std::map<std::pair<int, int>, PGroup> cells;  // (column k, row dimension 2a)
    std::map<std::pair<int, int>, std::vector<std::string>> labels;
    std::vector<std::string> diagnostics;
    std::string window;

    void add(int col, int dim, const PGroup& g, const std::string& label = {});
    // abutment dimension = row dimension - column; rows below 2*min_row are skipped
    std::map<int, PGroup> abutment(int min_row = 0) const;
    std::map<int, std::vector<std::string>> abutment_labels(int min_row = 0) const;
};

// pairs of nonzero cells that a higher differential d_s (s >= 2) could connect
std::vector<std::string> collapse_violations(const Page& page);

// ---------------------------------------------------------------- E_1 summands

struct Summand {
    i64 m = 0;
    std::vector<i64> ns;  // wedge word n_1..n_k
    int k() const { return static_cast<int>(ns.size()); }
    std::string str() const;
};

// all normalized summands (n_i >= 1) with m + sum n_i = d
std::vector<std::vector<Summand>> summands_by_column(i64 d);

struct E1Table {
    Page page;
    std::map<int, i64> row_euler;  // a -> sum_k (-1)^k log_p |E_1^{k,2a}|
};

E1Table e1_sizes(int p, int r, i64 d, int amax, int kmax, const Rep& ambient = Rep());

// E_2 from explicit d_1 matrices on the summand table (small d only).
Page numeric_e2(int p, int r, i64 d, int amax);

// ---------------------------------------------------------------- symbolic machine

struct SymGen {
    i64 m = 0;
    unsigned S = 0;          // bit b set: exterior class (v_b)
    std::vector<int> alpha;  // alpha[b-1]: power of t_b, b = 1..r-1

    int column() const;
    i64 weight(int p) const;
    std::vector<i64> fixed_dims(int p, int r) const;
    std::string str() const;
    bool operator<(const SymGen& o) const;
    bool operator==(const SymGen& o) const { return m == o.m && S == o.S && alpha == o.alpha; }
};

std::vector<SymGen> symbolic_generators(int p, int r, i64 d);

struct SymbolicRow {
    std::map<int, PGroup> columns;  // E_2 at (k, 2a)
    std::map<int, std::vector<std::string>> labels;
    int matched_pairs = 0;
    std::vector<std::string> diagnostics;
};

// dimension-0 row by the cancellation rules, with explicit x-power bookkeeping
SymbolicRow symbolic_row0(int p, int r, i64 d);
// row a >= 1: homology of the exterior/transpotence complex with region scaling
SymbolicRow symbolic_row(int p, int r, i64 d, int a);

Page symbolic_e2(int p, int r, i64 d, int max_dim);

// ---------------------------------------------------------------- several variables

struct MultiE2 {
    Multidegree deg;
    int r_outer = 1;                 // length used on the first coordinate
    std::vector<int> support;        // 1-based coordinates with nonzero degree
    std::map<int, PGroup> abutment;  // n -> group
    std::map<int, std::vector<std::string>> labels;
    std::vector<std::string> diagnostics;
    Page outer;
};

MultiE2 multivar_e2(int p, int r, const Multidegree& d, int max_dim);

// ---------------------------------------------------------------- comparison

struct CellReport {
    Multidegree deg;
    int dim = 0;
    PGroup got, want;
    bool pass = false;
    std::vector<std::string> labels;
};

struct CompareReport {
    std::vector<CellReport> cells;
    std::vector<std::string> errors;  // collapse violations and other page-level failures
    bool all_pass() const;
};

// filtration: compare rows 2a >= 2i against filtration_chart instead of tr_chart
CompareReport compare(const Page& page, int p, int r, i64 d, int max_dim, std::optional<int> filtration = {});
CompareReport compare(const MultiE2& e2, int p, int r, int max_dim);

}  // namespace trcalc
