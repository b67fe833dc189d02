// linsolve.hpp
// Constant-coefficient 2Nx2N block system [[M, dt K], [-K, M]] in the
// unknown ordering (phi block first, mu block second), factorized once and
// reused for every step of a run.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "chsav/nodal_function.hpp"
#include "chsav/sparse.hpp"

namespace chsav {

class BlockSolver {
public:
    // Assembles the block operator; call factorize() before solve().
    BlockSolver(const SparseOperator& mass, const SparseOperator& stiffness, double dt);
    ~BlockSolver();
    BlockSolver(BlockSolver&&) noexcept;
    BlockSolver& operator=(BlockSolver&&) noexcept;
    BlockSolver(const BlockSolver&) = delete;
    BlockSolver& operator=(const BlockSolver&) = delete;

    // Direct sparse LU; throws if the factorization fails. Idempotent after
    // the first call.
    void factorize();
    bool is_factorized() const;

    // rhs has length 2N. Returns (phi part, mu part). Verifies the residual
    // bound |A x - rhs|_inf <= 1e-11 (1 + |rhs|_inf) on every solve.
    std::pair<NodalFunction, NodalFunction> solve(std::span<const double> rhs) const;
    std::pair<NodalFunction, NodalFunction> solve(std::span<const double> rhs_phi,
                                                  std::span<const double> rhs_mu) const;

    const SparseOperator& matrix() const;
    double dt() const;
    int node_count() const;

    // Reuse instrumentation: factorizations performed / solves served.
    std::uint64_t factorize_count() const;
    std::uint64_t solve_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Conjugate gradient solve of M x = b for symmetric positive definite M,
// to |M x - b|_2 <= tol |b|_2. Throws on non-convergence, reporting the
// achieved residual. max_iterations == 0 picks a cap from the dimension.
std::vector<double> spd_solve(const SparseOperator& m, std::span<const double> b,
                              double tol, int max_iterations = 0);

}  // namespace chsav
