#include "chsav/linsolve.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace chsav {

namespace {

// [[M, dt K], [-K, M]], phi unknowns first. M and K rows concatenate
// directly because every M column index is below every shifted K index.
SparseOperator build_block_matrix(const SparseOperator& mass, const SparseOperator& stiffness,
                                  double dt) {
    if (mass.rows() != mass.cols() || stiffness.rows() != stiffness.cols() ||
        mass.rows() != stiffness.rows()) {
        throw std::invalid_argument("BlockSolver: mass and stiffness must be square and equal-sized");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("BlockSolver: dt must be positive, got " + std::to_string(dt));
    }

    const int n = mass.rows();
    std::vector<int> offsets;
    std::vector<int> columns;
    std::vector<double> values;
    offsets.reserve(static_cast<std::size_t>(2 * n) + 1);
    columns.reserve(2 * (static_cast<std::size_t>(mass.nnz()) + static_cast<std::size_t>(stiffness.nnz())));
    values.reserve(columns.capacity());

    offsets.push_back(0);
    for (int r = 0; r < n; ++r) {
        for (int k = mass.offsets()[r]; k < mass.offsets()[r + 1]; ++k) {
            columns.push_back(mass.columns()[static_cast<std::size_t>(k)]);
            values.push_back(mass.values()[static_cast<std::size_t>(k)]);
        }
        for (int k = stiffness.offsets()[r]; k < stiffness.offsets()[r + 1]; ++k) {
            columns.push_back(stiffness.columns()[static_cast<std::size_t>(k)] + n);
            values.push_back(dt * stiffness.values()[static_cast<std::size_t>(k)]);
        }
        offsets.push_back(static_cast<int>(columns.size()));
    }
    for (int r = 0; r < n; ++r) {
        for (int k = stiffness.offsets()[r]; k < stiffness.offsets()[r + 1]; ++k) {
            columns.push_back(stiffness.columns()[static_cast<std::size_t>(k)]);
            values.push_back(-stiffness.values()[static_cast<std::size_t>(k)]);
        }
        for (int k = mass.offsets()[r]; k < mass.offsets()[r + 1]; ++k) {
            columns.push_back(mass.columns()[static_cast<std::size_t>(k)] + n);
            values.push_back(mass.values()[static_cast<std::size_t>(k)]);
        }
        offsets.push_back(static_cast<int>(columns.size()));
    }
    return SparseOperator(2 * n, 2 * n, std::move(offsets), std::move(columns), std::move(values));
}

}  // namespace

struct BlockSolver::Impl {
    SparseOperator a;
    double dt = 0.0;
    int n_nodes = 0;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    bool factorized = false;
    std::uint64_t factorizations = 0;
    mutable std::atomic<std::uint64_t> solves{0};
    mutable std::mutex solve_mutex;
};

BlockSolver::BlockSolver(const SparseOperator& mass, const SparseOperator& stiffness, double dt)
    : impl_(std::make_unique<Impl>()) {
    impl_->a = build_block_matrix(mass, stiffness, dt);
    impl_->dt = dt;
    impl_->n_nodes = mass.rows();
}

BlockSolver::~BlockSolver() = default;
BlockSolver::BlockSolver(BlockSolver&&) noexcept = default;
BlockSolver& BlockSolver::operator=(BlockSolver&&) noexcept = default;

void BlockSolver::factorize() {
    if (impl_->factorized) return;
    const auto& a = impl_->a;
    Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>> mapped(
        a.rows(), a.cols(), a.nnz(), a.offsets().data(), a.columns().data(), a.values().data());
    Eigen::SparseMatrix<double> col_major = mapped;
    impl_->lu.compute(col_major);
    if (impl_->lu.info() != Eigen::Success) {
        throw std::runtime_error("BlockSolver: sparse LU factorization failed (singular matrix?)");
    }
    impl_->factorized = true;
    ++impl_->factorizations;
}

bool BlockSolver::is_factorized() const { return impl_->factorized; }

std::pair<NodalFunction, NodalFunction> BlockSolver::solve(std::span<const double> rhs) const {
    const int n = impl_->n_nodes;
    if (!impl_->factorized) throw std::logic_error("BlockSolver::solve before factorize");
    if (rhs.size() != static_cast<std::size_t>(2 * n)) {
        throw std::invalid_argument("BlockSolver::solve: rhs length " + std::to_string(rhs.size()) +
                                    ", expected " + std::to_string(2 * n));
    }
    double rhs_inf = 0.0;
    for (double v : rhs) {
        if (!std::isfinite(v)) throw std::runtime_error("BlockSolver::solve: non-finite rhs entry");
        rhs_inf = std::max(rhs_inf, std::abs(v));
    }

    Eigen::VectorXd x;
    {
        std::lock_guard<std::mutex> lock(impl_->solve_mutex);
        Eigen::Map<const Eigen::VectorXd> b(rhs.data(), 2 * n);
        x = impl_->lu.solve(b);
    }
    if (impl_->lu.info() != Eigen::Success) {
        throw std::runtime_error("BlockSolver::solve: back substitution failed");
    }

    const auto residual = impl_->a.apply(std::span<const double>(x.data(), static_cast<std::size_t>(2 * n)));
    double res_inf = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        res_inf = std::max(res_inf, std::abs(residual[i] - rhs[i]));
    }
    const double bound = 1e-11 * (1.0 + rhs_inf);
    if (!(res_inf <= bound)) {
        throw std::runtime_error("BlockSolver::solve: residual " + std::to_string(res_inf) +
                                 " exceeds bound " + std::to_string(bound));
    }
    ++impl_->solves;

    NodalFunction phi_part(static_cast<std::size_t>(n));
    NodalFunction mu_part(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        phi_part[static_cast<std::size_t>(i)] = x[i];
        mu_part[static_cast<std::size_t>(i)] = x[n + i];
    }
    return {std::move(phi_part), std::move(mu_part)};
}

std::pair<NodalFunction, NodalFunction> BlockSolver::solve(std::span<const double> rhs_phi,
                                                           std::span<const double> rhs_mu) const {
    const int n = impl_->n_nodes;
    if (rhs_phi.size() != static_cast<std::size_t>(n) || rhs_mu.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("BlockSolver::solve: block rhs length mismatch");
    }
    std::vector<double> rhs(static_cast<std::size_t>(2 * n));
    std::copy(rhs_phi.begin(), rhs_phi.end(), rhs.begin());
    std::copy(rhs_mu.begin(), rhs_mu.end(), rhs.begin() + n);
    return solve(rhs);
}

const SparseOperator& BlockSolver::matrix() const { return impl_->a; }
double BlockSolver::dt() const { return impl_->dt; }
int BlockSolver::node_count() const { return impl_->n_nodes; }
std::uint64_t BlockSolver::factorize_count() const { return impl_->factorizations; }
std::uint64_t BlockSolver::solve_count() const { return impl_->solves.load(); }

std::vector<double> spd_solve(const SparseOperator& m, std::span<const double> b, double tol,
                              int max_iterations) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spd_solve: matrix must be square");
    const int n = m.rows();
    if (b.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("spd_solve: rhs length mismatch");
    }
    if (max_iterations <= 0) max_iterations = 10 * n + 200;

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) return x;
    const double target = tol * b_norm;

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> p = r;
    std::vector<double> ap(static_cast<std::size_t>(n));
    double rs = dot(r, r);

    for (int iter = 0; iter < max_iterations; ++iter) {
        if (std::sqrt(rs) <= target) break;
        m.apply(p, ap);
        const double denom = dot(p, ap);
        if (!(denom > 0.0)) {
            throw std::runtime_error("spd_solve: matrix not positive definite (p^T M p = " +
                                     std::to_string(denom) + ")");
        }
        const double alpha = rs / denom;
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
            r[static_cast<std::size_t>(i)] -= alpha * ap[static_cast<std::size_t>(i)];
        }
        const double rs_new = dot(r, r);
        const double beta = rs_new / rs;
        rs = rs_new;
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
        }
    }

    // Recurrence residuals can drift; certify against the true residual.
    m.apply(x, ap);
    double true_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = ap[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
        true_res += d * d;
    }
    true_res = std::sqrt(true_res);
    if (true_res > target) {
        throw std::runtime_error("spd_solve: no convergence within " +
                                 std::to_string(max_iterations) + " iterations (residual " +
                                 std::to_string(true_res) + ", target " + std::to_string(target) + ")");
    }
    return x;
}

}  // namespace chsav
