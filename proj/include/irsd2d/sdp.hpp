// SPDX-License-Identifier: Apache-2.0
//
// irsd2d - delay-optimal IRS-assisted D2D cooperative computing
// Copyright (C) 2026 The irsd2d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSD2D_SDP_HPP
#define IRSD2D_SDP_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace irsd2d
{

// Relaxed lifted beam: Hermitian, unit diagonal, positive semidefinite.
// Rank one is not enforced.
struct LiftedBeam
{
    Eigen::MatrixXcd V;
};

struct SdpOptions
{
    double feasibility_slack = 1e-7; // relative to each threshold
    double gap_tol = 1e-10;
    int max_iter = 100;
};

struct SdpResult
{
    bool feasible = false;
    LiftedBeam beam;
    double min_ratio = 0.0;   // min_k Tr(H_k V) / tau_k over tau_k > 0
    double min_slack = 0.0;   // min_k Tr(H_k V) - tau_k
    double upper_bound = 0.0; // dual bound on the best achievable min ratio
    int iterations = 0;
    bool converged = false;
};

struct Certificate
{
    bool hermitian = false;
    bool unit_diagonal = false;
    bool psd = false;
    bool slack = false;
    bool ok() const { return hermitian && unit_diagonal && psd && slack; }
};

inline double real_trace_product(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B)
{
    // Re Tr(A B)
    return (A.array() * B.transpose().array()).real().sum();
}

// Checks a returned beam against the invariants independently of the solver.
inline Certificate check_certificate(const LiftedBeam &beam, const std::vector<Eigen::MatrixXcd> &Hs,
                                     const std::vector<double> &thresholds, double slack_tol = 1e-7)
{
    Certificate c;
    const auto &V = beam.V;
    if (V.rows() == 0 || V.rows() != V.cols())
        return c;
    c.hermitian = (V - V.adjoint()).cwiseAbs().maxCoeff() <= 1e-10;
    c.unit_diagonal = (V.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-8;
    const Eigen::MatrixXcd Vh = 0.5 * (V + V.adjoint());
    c.psd = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Vh, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() >= -1e-8;
    c.slack = true;
    for (std::size_t k = 0; k < Hs.size(); ++k)
    {
        const double val = real_trace_product(Hs[k], Vh);
        if (val < thresholds[k] - slack_tol * std::max(1.0, thresholds[k]))
            c.slack = false;
    }
    return c;
}

namespace detail
{

// In-place lower Cholesky factorization of a Hermitian matrix (only the lower
// triangle is read). Returns false as soon as a non-positive pivot appears.
inline bool cholesky_in_place(Eigen::MatrixXcd &A)
{
    const Eigen::Index n = A.rows();
    for (Eigen::Index j = 0; j < n; ++j)
    {
        double d = A(j, j).real() - A.row(j).head(j).squaredNorm();
        if (!(d > 0.0))
            return false;
        d = std::sqrt(d);
        A(j, j) = d;
        if (j + 1 < n)
        {
            auto col = A.col(j).tail(n - j - 1);
            col.noalias() -= A.block(j + 1, 0, n - j - 1, j) * A.row(j).head(j).adjoint();
            col /= d;
        }
    }
    return true;
}

inline bool is_positive_definite(const Eigen::MatrixXcd &X, const Eigen::MatrixXcd &dX, double beta,
                                 Eigen::MatrixXcd &work)
{
    work = X;
    work.noalias() += beta * dX;
    return cholesky_in_place(work);
}

// Step alpha <= cap for which X + (alpha / 0.95) dX is still positive
// definite: geometric backtracking followed by a short bisection between the
// last admissible and the first inadmissible step.
inline double cone_step(const Eigen::MatrixXcd &X, const Eigen::MatrixXcd &dX, double cap)
{
    constexpr double fraction = 0.95;
    Eigen::MatrixXcd work(X.rows(), X.cols());
    double hi = cap / fraction;
    if (is_positive_definite(X, dX, hi, work))
        return fraction * hi;
    double lo = 0.0;
    for (double beta = 0.5 * hi; beta > 1e-12 * hi; beta *= 0.5)
    {
        if (is_positive_definite(X, dX, beta, work))
        {
            lo = beta;
            break;
        }
        hi = beta;
    }
    if (lo == 0.0)
        return 0.0;
    for (int j = 0; j < 4; ++j)
    {
        const double mid = 0.5 * (lo + hi);
        if (is_positive_definite(X, dX, mid, work))
            lo = mid;
        else
            hi = mid;
    }
    return fraction * lo;
}

inline double max_step(const Eigen::VectorXd &x, const Eigen::VectorXd &dx)
{
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx(i) < 0.0)
            a = std::min(a, -x(i) / dx(i));
    return a;
}

// Primal-dual path-following method for
//
//   maximize r  s.t.  Tr(F_k F_k^H V) - r - w_k = 0,  V_ii = 1,  V >= 0,  r, w >= 0
//
// i.e. the largest achievable min_k Tr(H_k V) over the unit-diagonal PSD set.
// HKM search direction with a Mehrotra corrector.
class MaxMinSdp
{
  public:
    MaxMinSdp(std::vector<Eigen::MatrixXcd> factors, Eigen::Index n) : F_(std::move(factors)), n_(n)
    {
        K_ = static_cast<Eigen::Index>(F_.size());
        m_ = n_ + K_;
        trace_.resize(K_);
        for (Eigen::Index k = 0; k < K_; ++k)
            trace_(k) = F_[k].squaredNorm();
        for (const auto &F : F_)
        {
            Eigen::MatrixXcd H = F * F.adjoint();
            H_.push_back(std::move(H));
        }
    }

    struct Outcome
    {
        Eigen::MatrixXcd V;
        double primal = 0.0; // achieved r
        double dual = 0.0;   // upper bound on r
        int iterations = 0;
        bool converged = false;
    };

    Outcome solve(double gap_tol, int max_iter)
    {
        const Eigen::Index nl = K_ + 1;
        X_ = Eigen::MatrixXcd::Identity(n_, n_);
        x_.resize(nl);
        const double r0 = 0.5 * trace_.minCoeff();
        x_(0) = r0;
        for (Eigen::Index k = 0; k < K_; ++k)
            x_(k + 1) = trace_(k) - r0;

        y_.setZero(m_);
        double diag_shift = 1.0;
        for (Eigen::Index k = 0; k < K_; ++k)
        {
            y_(n_ + k) = 2.0 / static_cast<double>(K_);
            diag_shift += y_(n_ + k) * trace_(k);
        }
        y_.head(n_).setConstant(-diag_shift);
        z_.resize(nl);
        z_(0) = y_.tail(K_).sum() - 1.0;
        for (Eigen::Index k = 0; k < K_; ++k)
            z_(k + 1) = y_(n_ + k);
        Z_ = dual_slack_from(y_);

        Outcome out;
        const double nu = static_cast<double>(n_ + nl);
        for (int it = 0; it < max_iter; ++it)
        {
            out.iterations = it;
            work_ = X_;
            if (!cholesky_in_place(work_))
                break;
            work_ = Z_;
            if (!cholesky_in_place(work_))
                break;
            Linv_ = work_.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(n_, n_));
            Zi_.noalias() = Linv_.adjoint() * Linv_;
            Zi_ = 0.5 * (Zi_ + Zi_.adjoint());

            residuals();
            const double gap = real_trace_product(X_, Z_) + x_.dot(z_);
            const double mu = gap / nu;
            const double pobj = -x_(0);
            const double dobj = y_.head(n_).sum();
            const double pinf = rp_.norm() / (1.0 + std::sqrt(static_cast<double>(n_)));
            const double dinf = std::max(Rd_.norm(), rd_.norm());
            if (gap <= gap_tol * (1.0 + std::abs(pobj) + std::abs(dobj)) && pinf <= 1e-10 && dinf <= 1e-10)
            {
                out.converged = true;
                break;
            }

            build_schur();
            Eigen::LLT<Eigen::MatrixXd> lltM(M_);
            if (lltM.info() != Eigen::Success)
            {
                M_.diagonal().array() += 1e-14 * M_.diagonal().cwiseAbs().maxCoeff();
                lltM.compute(M_);
                if (lltM.info() != Eigen::Success)
                    break;
            }

            // predictor
            Direction aff = direction(lltM, -X_, -x_);
            const double ap_aff = cone_step(X_, aff.dX, std::min(1.0, 0.95 * max_step(x_, aff.dx))) / 0.95;
            const double ad_aff = cone_step(Z_, aff.dZ, std::min(1.0, 0.95 * max_step(z_, aff.dz))) / 0.95;
            const double gap_aff = real_trace_product(X_ + ap_aff * aff.dX, Z_ + ad_aff * aff.dZ) +
                                   (x_ + ap_aff * aff.dx).dot(z_ + ad_aff * aff.dz);
            const double sigma = std::clamp(std::pow(gap_aff / gap, 3.0), 0.0, 1.0);

            // corrector
            Eigen::MatrixXcd T = sigma * mu * Zi_ - X_ - times_dz_zi(aff.dX, aff);
            Eigen::VectorXd tl = (sigma * mu) * z_.cwiseInverse() - x_ - aff.dx.cwiseProduct(aff.dz).cwiseQuotient(z_);
            Direction d = direction(lltM, T, tl);

            const double ap = cone_step(X_, d.dX, std::min(1.0, 0.95 * max_step(x_, d.dx)));
            const double ad = cone_step(Z_, d.dZ, std::min(1.0, 0.95 * max_step(z_, d.dz)));
            X_ += ap * d.dX;
            X_ = 0.5 * (X_ + X_.adjoint());
            x_ += ap * d.dx;
            y_ += ad * d.dy;
            Z_ += ad * d.dZ;
            Z_ = 0.5 * (Z_ + Z_.adjoint());
            z_ += ad * d.dz;
            out.iterations = it + 1;
        }
        out.V = X_;
        out.primal = x_(0);
        out.dual = -y_.head(n_).sum();
        return out;
    }

  private:
    struct Direction
    {
        Eigen::MatrixXcd dX, dZ;
        Eigen::VectorXd dx, dz, dy;
    };

    Eigen::MatrixXcd dual_slack_from(const Eigen::VectorXd &y) const
    {
        Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n_, n_);
        Z.diagonal() = -y.head(n_).cast<std::complex<double>>();
        for (Eigen::Index k = 0; k < K_; ++k)
            Z -= y(n_ + k) * H_[k];
        return Z;
    }

    void residuals()
    {
        rp_.resize(m_);
        for (Eigen::Index i = 0; i < n_; ++i)
            rp_(i) = 1.0 - X_(i, i).real();
        for (Eigen::Index k = 0; k < K_; ++k)
            rp_(n_ + k) = -(real_trace_product(H_[k], X_) - x_(0) - x_(k + 1));
        Rd_ = dual_slack_from(y_) - Z_;
        dual_infeasible_ = Rd_.cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, Z_.cwiseAbs().maxCoeff());
        rd_.resize(K_ + 1);
        rd_(0) = -1.0 + y_.tail(K_).sum() - z_(0);
        for (Eigen::Index k = 0; k < K_; ++k)
            rd_(k + 1) = y_(n_ + k) - z_(k + 1);
    }

    void build_schur()
    {
        M_.resize(m_, m_);
        M_.topLeftCorner(n_, n_) = (X_.array() * Zi_.transpose().array()).real();
        P_.clear();
        Q_.clear();
        for (Eigen::Index k = 0; k < K_; ++k)
        {
            P_.push_back(X_ * F_[k]);
            Q_.push_back(Zi_ * F_[k]);
        }
        for (Eigen::Index k = 0; k < K_; ++k)
        {
            const Eigen::VectorXd col = (P_[k].array() * Q_[k].conjugate().array()).rowwise().sum().real();
            M_.block(0, n_ + k, n_, 1) = col;
            M_.block(n_ + k, 0, 1, n_) = col.transpose();
            for (Eigen::Index l = 0; l < K_; ++l)
            {
                const Eigen::MatrixXcd a = F_[k].adjoint() * P_[l];
                const Eigen::MatrixXcd b = Q_[l].adjoint() * F_[k];
                M_(n_ + k, n_ + l) = real_trace_product(a, b);
            }
        }
        M_.bottomRightCorner(K_, K_) = 0.5 * (M_.bottomRightCorner(K_, K_) + M_.bottomRightCorner(K_, K_).transpose()).eval();
        const Eigen::VectorXd ratio = x_.cwiseQuotient(z_);
        M_.bottomRightCorner(K_, K_).array() += ratio(0);
        for (Eigen::Index k = 0; k < K_; ++k)
            M_(n_ + k, n_ + k) += ratio(k + 1);
    }

    // A dZ Z^-1 using dZ = Rd - Diag(dy) - sum_k dy_k F_k F_k^H.
    Eigen::MatrixXcd times_dz_zi(const Eigen::MatrixXcd &A, const Direction &d) const
    {
        Eigen::MatrixXcd out = (A * (-d.dy.head(n_)).asDiagonal()) * Zi_;
        if (dual_infeasible_)
            out += A * Rd_ * Zi_;
        for (Eigen::Index k = 0; k < K_; ++k)
            out -= d.dy(n_ + k) * (A * F_[k]) * Q_[k].adjoint();
        return out;
    }

    // Solves for the step with dX = T - X dZ Z^-1 and dx = tl - x dz / z.
    Direction direction(const Eigen::LLT<Eigen::MatrixXd> &lltM, const Eigen::MatrixXcd &T, const Eigen::VectorXd &tl)
    {
        Eigen::VectorXd rhs(m_);
        const Eigen::VectorXd wl = tl - x_.cwiseProduct(rd_).cwiseQuotient(z_);
        if (dual_infeasible_)
        {
            const Eigen::MatrixXcd W = T - X_ * Rd_ * Zi_;
            for (Eigen::Index i = 0; i < n_; ++i)
                rhs(i) = rp_(i) - W(i, i).real();
            for (Eigen::Index k = 0; k < K_; ++k)
                rhs(n_ + k) = rp_(n_ + k) - (F_[k].adjoint() * W * F_[k]).trace().real() + wl(0) + wl(k + 1);
        }
        else
        {
            for (Eigen::Index i = 0; i < n_; ++i)
                rhs(i) = rp_(i) - T(i, i).real();
            for (Eigen::Index k = 0; k < K_; ++k)
                rhs(n_ + k) = rp_(n_ + k) - (F_[k].adjoint() * T * F_[k]).trace().real() + wl(0) + wl(k + 1);
        }

        Direction d;
        d.dy = lltM.solve(rhs);
        d.dZ = Rd_;
        d.dZ.diagonal() -= d.dy.head(n_).cast<std::complex<double>>();
        for (Eigen::Index k = 0; k < K_; ++k)
            d.dZ -= d.dy(n_ + k) * H_[k];
        d.dX = T - times_dz_zi(X_, d);
        d.dX = (0.5 * (d.dX + d.dX.adjoint())).eval();
        d.dz.resize(K_ + 1);
        d.dz(0) = rd_(0) + d.dy.tail(K_).sum();
        for (Eigen::Index k = 0; k < K_; ++k)
            d.dz(k + 1) = rd_(k + 1) + d.dy(n_ + k);
        d.dx = tl - x_.cwiseProduct(d.dz).cwiseQuotient(z_);
        return d;
    }

    std::vector<Eigen::MatrixXcd> F_;
    std::vector<Eigen::MatrixXcd> H_;
    Eigen::Index n_ = 0, K_ = 0, m_ = 0;
    Eigen::VectorXd trace_;

    Eigen::MatrixXcd X_, Z_, Zi_, Rd_, work_, Linv_;
    Eigen::VectorXd x_, z_, y_, rp_, rd_;
    Eigen::MatrixXd M_;
    bool dual_infeasible_ = true;
    std::vector<Eigen::MatrixXcd> P_, Q_;
};

} // namespace detail

// Finds V >= 0 with unit diagonal and Tr(H_k V) >= tau_k for every k by
// maximizing min_k Tr(H_k V) / tau_k. Constraints with tau_k = 0 hold for any
// feasible V and are dropped. Feasible iff the optimal ratio reaches
// 1 - feasibility_slack.
inline SdpResult solve_feasibility(const std::vector<Eigen::MatrixXcd> &Hs, const std::vector<double> &thresholds,
                                   Eigen::Index dim, const SdpOptions &opts = {})
{
    if (dim < 1)
        throw std::invalid_argument("solve_feasibility: dimension must be positive.");
    if (Hs.size() != thresholds.size())
        throw std::invalid_argument("solve_feasibility: one threshold per constraint matrix is required.");

    std::vector<Eigen::MatrixXcd> factors;
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < Hs.size(); ++k)
    {
        const auto &H = Hs[k];
        if (H.rows() != dim || H.cols() != dim)
            throw std::invalid_argument("solve_feasibility: constraint matrix dimension mismatch.");
        if (!H.allFinite())
            throw std::invalid_argument("solve_feasibility: non-finite constraint matrix.");
        const double scale = std::max(H.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
        if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw std::invalid_argument("solve_feasibility: constraint matrix is not Hermitian.");
        if (!std::isfinite(thresholds[k]) || thresholds[k] < 0.0)
            throw std::invalid_argument("solve_feasibility: thresholds must be finite and non-negative.");
        if (thresholds[k] == 0.0)
            continue;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (H + H.adjoint()) / thresholds[k]);
        const Eigen::VectorXd lam = es.eigenvalues();
        const double lmax = lam.maxCoeff();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < lam.size(); ++i)
            if (lmax > 0.0 && lam(i) > 1e-12 * lmax)
                keep.push_back(i);
        Eigen::MatrixXcd F(dim, static_cast<Eigen::Index>(keep.size()));
        for (std::size_t j = 0; j < keep.size(); ++j)
            F.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]) * std::sqrt(lam(keep[j]));
        factors.push_back(std::move(F));
        active.push_back(k);
    }

    SdpResult res;
    auto evaluate = [&](const Eigen::MatrixXcd &V) {
        res.min_ratio = std::numeric_limits<double>::infinity();
        res.min_slack = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < Hs.size(); ++k)
        {
            const double val = real_trace_product(Hs[k], V);
            res.min_slack = std::min(res.min_slack, val - thresholds[k]);
            if (thresholds[k] > 0.0)
                res.min_ratio = std::min(res.min_ratio, val / thresholds[k]);
        }
    };

    if (active.empty())
    {
        res.beam.V = Eigen::MatrixXcd::Identity(dim, dim);
        evaluate(res.beam.V);
        res.upper_bound = std::numeric_limits<double>::infinity();
        res.feasible = true;
        res.converged = true;
        return res;
    }

    // a zero matrix can never meet a positive threshold
    double gamma = std::numeric_limits<double>::infinity();
    for (const auto &F : factors)
        gamma = std::min(gamma, F.squaredNorm());
    if (!(gamma > 0.0))
    {
        res.beam.V = Eigen::MatrixXcd::Identity(dim, dim);
        evaluate(res.beam.V);
        res.upper_bound = 0.0;
        res.converged = true;
        return res;
    }
    for (auto &F : factors)
        F /= std::sqrt(gamma);

    detail::MaxMinSdp solver(std::move(factors), dim);
    const auto out = solver.solve(opts.gap_tol, opts.max_iter);

    // Rescaling by the diagonal keeps V positive semidefinite and restores an
    // exact unit diagonal.
    Eigen::MatrixXcd V = 0.5 * (out.V + out.V.adjoint());
    const Eigen::VectorXd dinv = V.diagonal().real().cwiseMax(std::numeric_limits<double>::min()).cwiseSqrt().cwiseInverse();
    V = dinv.asDiagonal() * V * dinv.asDiagonal();
    V = 0.5 * (V + V.adjoint());
    V.diagonal().setOnes();

    res.beam.V = std::move(V);
    res.iterations = out.iterations;
    res.converged = out.converged;
    res.upper_bound = out.dual * gamma;
    evaluate(res.beam.V);
    res.feasible = res.min_ratio >= 1.0 - opts.feasibility_slack;
    return res;
}

inline Eigen::VectorXcd unit_modulus(const Eigen::VectorXcd &r)
{
    Eigen::VectorXcd u(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
    {
        const double a = std::abs(r(i));
        u(i) = a > 0.0 ? r(i) / a : std::complex<double>(1.0, 0.0);
    }
    return u;
}

// Rank-one recovery from a relaxed beam. Draws r ~ CN(0, V), projects each
// draw onto unit modulus and keeps the candidate with the largest score; the
// phase of the leading eigenvector is always scored as well.
template <class Score>
Eigen::VectorXcd gaussian_randomize(const LiftedBeam &beam, int num_samples, Score &&score, std::mt19937_64 &rng)
{
    if (num_samples < 1)
        throw std::invalid_argument("gaussian_randomize: num_samples must be >= 1.");
    const Eigen::Index n = beam.V.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (beam.V + beam.V.adjoint()));
    // eigenvalues at round-off level are zero; their square roots (~1e-8)
    // would otherwise perturb the samples of an exactly low-rank beam
    const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                         std::max(0.0, es.eigenvalues()(n - 1));
    const Eigen::VectorXd lam = es.eigenvalues().unaryExpr([floor](double l) { return l > floor ? l : 0.0; });
    const Eigen::MatrixXcd L = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();

    Eigen::VectorXcd best = unit_modulus(es.eigenvectors().col(n - 1));
    double best_score = score(best);

    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    Eigen::VectorXcd w(n);
    for (int s = 0; s < num_samples; ++s)
    {
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double re = nd(rng);
            const double im = nd(rng);
            w(i) = {re, im};
        }
        Eigen::VectorXcd cand = unit_modulus(L * w);
        const double sc = score(cand);
        if (sc > best_score)
        {
            best_score = sc;
            best = std::move(cand);
        }
    }
    return best;
}

} // namespace irsd2d

#endif
