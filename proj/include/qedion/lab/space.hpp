#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <vector>

#include "qedion/coupling/coupling.hpp"
#include "qedion/electron/spectral.hpp"
#include "qedion/photon/fock.hpp"
#include "qedion/util/power_iter.hpp"

namespace qedion {

// Dense enumeration of the truncated Fock space over a small mode grid.
class FockBasis {
public:
    FockBasis(const ModeGrid& grid, int n_max) : grid_(&grid), n_max_(n_max) {
        OccKey key;
        enumerate(key, 0, n_max);
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = (int)i;
    }

    const ModeGrid& grid() const { return *grid_; }
    int n_max() const { return n_max_; }
    int dim() const { return (int)basis_.size(); }
    const OccKey& state(int i) const { return basis_[i]; }
    int index(const OccKey& k) const { return index_.at(k); }

    // diagonal of the windowed field energy
    Eigen::VectorXd field_energy_diag(double rlo, double rhi) const {
        Eigen::VectorXd d(dim());
        for (int i = 0; i < dim(); ++i) {
            double E = 0;
            for (auto& [m, c] : basis_[i]) E += c * omega_window(grid_->mode(m).omega, rlo, rhi);
            d[i] = E;
        }
        return d;
    }

    // dense smeared creator a*(f) (drops above n_max)
    Eigen::MatrixXcd creator(const OnePhotonFunction& f) const {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i) {
            const OccKey& k = basis_[i];
            if (occ_total(k) + 1 > n_max_) continue;
            for (std::size_t m = 0; m < grid_->size(); ++m) {
                if (f[m] == 0.0) continue;
                const OccKey up = occ_bump(k, (std::uint32_t)m, +1);
                A(index_.at(up), i) += f[m] * std::sqrt(grid_->mode(m).w) *
                                       std::sqrt((double)occ_count(k, m) + 1.0);
            }
        }
        return A;
    }

    Eigen::MatrixXcd annihilator(const OnePhotonFunction& f) const {
        return creator(f).adjoint();
    }

private:
    void enumerate(OccKey& key, std::size_t mode, int room) {
        basis_.push_back(key);
        if (room == 0) return;
        for (std::size_t m = mode; m < grid_->size(); ++m) {
            key = occ_bump(key, (std::uint32_t)m, +1);
            enumerate(key, m, room - 1);
            key = occ_bump(key, (std::uint32_t)m, -1);
        }
    }

    const ModeGrid* grid_;
    int n_max_;
    std::vector<OccKey> basis_;
    std::map<OccKey, int> index_;
};

// Small dense electron space: all (l, m) channels of a lab-sized model,
// flattened; operators materialise as De x De matrices through the
// partial-wave machinery.
class ElecSpace {
public:
    explicit ElecSpace(const ElectronModel& m) : model_(&m), spec_(m) {
        for (int l = 0; l <= m.l_max; ++l)
            for (int mm = -l; mm <= l; ++mm) chans_.push_back({l, mm});
    }

    const ElectronModel& model() const { return *model_; }
    const SpectralCache& spectral() const { return spec_; }
    int n_chan() const { return (int)chans_.size(); }
    int dim() const { return n_chan() * model_->n_r; }
    const std::vector<Channel>& channels() const { return chans_; }

    PWFunction to_pw(const Eigen::VectorXcd& v) const {
        PWFunction f(model_);
        for (int c = 0; c < n_chan(); ++c) {
            auto& u = f.channel(chans_[c]);
            for (int i = 0; i < model_->n_r; ++i) u[i] = v[c * model_->n_r + i];
        }
        return f;
    }

    Eigen::VectorXcd from_pw(const PWFunction& f) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
        for (int c = 0; c < n_chan(); ++c) {
            const auto* u = f.channel_if(chans_[c]);
            if (!u) continue;
            for (int i = 0; i < model_->n_r; ++i) v[c * model_->n_r + i] = (*u)[i];
        }
        return v;
    }

    Eigen::MatrixXcd materialize(const std::function<PWFunction(const PWFunction&)>& op) const {
        Eigen::MatrixXcd A(dim(), dim());
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim());
        for (int j = 0; j < dim(); ++j) {
            e[j] = 1.0;
            A.col(j) = from_pw(op(to_pw(e)));
            e[j] = 0.0;
        }
        return A;
    }

    // dense (H_el - b)^s, block diagonal over channels
    Eigen::MatrixXcd h_power(double b, double s) const {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim(), dim());
        const int n = model_->n_r;
        std::map<int, Eigen::MatrixXd> blocks;
        for (int c = 0; c < n_chan(); ++c) {
            const int l = chans_[c].l;
            auto it = blocks.find(l);
            if (it == blocks.end()) {
                const auto& dc = spec_.decomp(l);
                Eigen::VectorXd f(n);
                for (int i = 0; i < n; ++i) f[i] = std::pow(dc.evals[i] - b, s);
                it = blocks.emplace(l, dc.evecs * f.asDiagonal() * dc.evecs.transpose()).first;
            }
            A.block(c * n, c * n, n, n) = it->second;
        }
        return A;
    }

    double b_shift(double offset) const { return spec_.min_eigenvalue() - offset; }

private:
    const ElectronModel* model_;
    SpectralCache spec_;
    std::vector<Channel> chans_;
};

// sigma_max of a dense matrix; SVD below 500, power iteration above.
inline double dense_norm(const Eigen::MatrixXcd& A, double tol = 1e-10) {
    if (A.rows() < 500) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
        return svd.singularValues()[0];
    }
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> T =
        [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(A * v); };
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> Ta =
        [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(A.adjoint() * v); };
    Eigen::VectorXcd v0(A.cols());
    DetRng rng(4242);
    for (int i = 0; i < A.cols(); ++i) v0[i] = cplx(rng.next(), rng.next());
    std::function<double(const Eigen::VectorXcd&)> nrm = [](const Eigen::VectorXcd& v) {
        return v.norm();
    };
    std::function<void(Eigen::VectorXcd&, double)> scl = [](Eigen::VectorXcd& v, double c) {
        v *= c;
    };
    return largest_singular_value<Eigen::VectorXcd>(T, Ta, v0, nrm, scl, tol, 500);
}

}  // namespace qedion
