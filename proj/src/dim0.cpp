#include <stdexcept>

#include "trcalc/cobar.hpp"
#include "trcalc/parallel.hpp"

namespace trcalc {

std::vector<PGroup> Dim0Complex::cohomology() const
{
    std::vector<PGroup> out;
    for (int k = 0; k < kmax; ++k) out.push_back(homology(modules, boundaries, k));
    return out;
}

Dim0Complex dim0_complex(int p, int r, i64 d, int kmax, int N, bool normalized)
{
    if (r < 1) throw std::invalid_argument("dim0_complex: r must be positive");
    if (d < 0) throw std::invalid_argument("dim0_complex: negative weight");
    if (N < r - 1) throw std::invalid_argument("dim0_complex: workspace level below r - 1");
    const int n0 = N - (r - 1);
    const Rational weight{d, r - 1};
    const auto C = build_conerve(p, kmax, N, d);

    std::function<bool(const Monomial&)> keep;
    if (normalized)
        keep = [](const Monomial& m) {
            for (std::size_t v = 1; v < m.size(); ++v)
                if (m[v] <= 0) return false;
            return true;
        };

    std::vector<WittLattice> L(kmax + 1);
    parallel_for(kmax + 1, [&](int k) { L[k] = witt_lattice(C.level[k], r, weight, n0, keep); });

    Dim0Complex X;
    X.p = p;
    X.r = r;
    X.kmax = kmax;
    X.N = N;
    X.d = d;
    X.normalized = normalized;
    for (int k = 0; k <= kmax; ++k) {
        X.modules.push_back(L[k].module);
        std::vector<std::string> names;
        for (std::size_t g = 0; g < L[k].monomials.size(); ++g) {
            std::string s = C.level[k].str(L[k].monomials[g]);
            if (L[k].shift[g]) s = std::to_string(p) + "^" + std::to_string(L[k].shift[g]) + "*" + s;
            names.push_back(s);
        }
        X.generator_labels.push_back(std::move(names));
    }

    for (int k = 0; k < kmax; ++k) {
        const auto& S = L[k];
        const auto& T = L[k + 1];
        PMatrix M(T.module.size(), S.module.size(), p, r);
        parallel_for(S.module.size(), [&](int g) {
            WittElement z;
            z.r = r;
            for (int j = 0; j <= k + 1; ++j) {
                auto im = witt_image_scaled(C.coface[k][j], S.monomials[g], C.level[k], C.level[k + 1], r, S.shift[g]);
                if (j % 2) im = witt_scale(im, -1, C.level[k + 1]);
                z = witt_add(z, im, C.level[k + 1]);
            }
            auto x = lattice_coords(z, T, p);
            for (int i = 0; i < T.module.size(); ++i) M.set(i, g, x[i]);
        });
        if (!hom_check(M, S.module, T.module)) throw std::logic_error("dim0_complex: torsion orders violated");
        X.boundaries.push_back(std::move(M));
    }
    return X;
}

}  // namespace trcalc
