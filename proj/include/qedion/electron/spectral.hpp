#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>

#include "qedion/electron/bound.hpp"
#include "qedion/electron/pw.hpp"

namespace qedion {

// Per-partial-wave eigendecomposition of the radial Hamiltonian, used for
// spectral functions (fractional powers, resolvents, sinc kernels) on
// lab-sized electron grids. Decompositions are cached per l; the angular
// index m never enters.
class SpectralCache {
public:
    explicit SpectralCache(const ElectronModel& m) : model_(&m) {}

    const ElectronModel& model() const { return *model_; }

    struct Decomp {
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;  // columns
    };

    const Decomp& decomp(int l) const {
        auto it = dec_.find(l);
        if (it != dec_.end()) return it->second;
        const Tridiag t = radial_hamiltonian(*model_, l);
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(t.d.data(), t.d.size());
        Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(t.e.data(), t.e.size());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e);
        Decomp dc{es.eigenvalues(), es.eigenvectors()};
        return dec_.emplace(l, std::move(dc)).first->second;
    }

    // psi -> f(H_el) psi channel-wise for a real scalar function f
    template <class F>
    PWFunction apply(const F& f, const PWFunction& psi) const {
        PWFunction out(model_);
        const int n = model_->n_r;
        Eigen::VectorXcd u(n), w(n);
        for (auto& [c, uc] : psi.channels()) {
            const Decomp& dc = decomp(c.l);
            for (int i = 0; i < n; ++i) u[i] = uc[i];
            w = dc.evecs.transpose() * u;
            for (int i = 0; i < n; ++i) w[i] *= f(dc.evals[i]);
            u = dc.evecs * w;
            auto& v = out.channel(c);
            for (int i = 0; i < n; ++i) v[i] = u[i];
        }
        return out;
    }

    // (H_el - b)^s with b < min spec; spectrum of the discrete operator is
    // strictly above b, so real powers are plain spectral calculus
    PWFunction power(double b, double s, const PWFunction& psi) const {
        return apply([b, s](double e) { return std::pow(e - b, s); }, psi);
    }

    double min_eigenvalue() const {
        double mn = 1e300;
        for (int l = 0; l <= model_->l_max; ++l) mn = std::min(mn, decomp(l).evals[0]);
        return mn;
    }

private:
    const ElectronModel* model_;
    mutable std::map<int, Decomp> dec_;
};

}  // namespace qedion
