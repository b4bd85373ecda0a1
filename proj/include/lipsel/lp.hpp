#pragma once

// Small dense linear programs:  minimize c.v  subject to  A v <= b,  v free.
//
// Two-phase tableau simplex, Dantzig pricing with a Bland fallback. Free variables are
// split as v = p - q; rows with negative right-hand side get an artificial
// variable. Intended for the tiny programs produced by the geometry kernel
// and the selection oracle, not for large-scale use.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipsel/metric_space.hpp"

namespace lipsel::lp {

struct Constraint {
    std::vector<double> row;
    double bound = 0.0;
};

struct LinearProgram {
    std::size_t variables = 0;
    std::vector<double> objective;       // empty means zero objective
    std::vector<Constraint> constraints; // row . v <= bound

    void add(std::vector<double> row, double bound) {
        constraints.push_back({std::move(row), bound});
    }
};

enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    }
    return "?";
}

struct Solution {
    Status status = Status::infeasible;
    double value = 0.0;
    std::vector<double> point;
};

inline constexpr double pivot_tolerance = 1e-9;

namespace detail {

class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void pivot(std::size_t pr, std::size_t pc) {
        double* prow = &a_[pr * cols_];
        const double inv = 1.0 / prow[pc];
        for (std::size_t c = 0; c < cols_; ++c)
            prow[c] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr)
                continue;
            double* row = &a_[r * cols_];
            const double f = row[pc];
            if (f == 0.0)
                continue;
            for (std::size_t c = 0; c < cols_; ++c)
                row[c] -= f * prow[c];
            row[pc] = 0.0;
        }
    }

  private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

// Runs the simplex method on the tableau. The last row is the objective row
// holding reduced costs (minimization: optimal when all >= -eps over
// `allowed` columns); the last column is the right-hand side. Pricing is
// Dantzig's rule; after a run of degenerate pivots it switches to Bland's
// rule, which cannot cycle, until the objective moves again.
// Returns false when unbounded.
inline bool run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed_cols) {
    const std::size_t m = t.rows() - 1;
    const std::size_t rhs = t.cols() - 1;
    const std::size_t obj = m;
    const double eps = 1e-10;
    std::size_t degenerate_run = 0;
    for (std::size_t iter = 0; iter < 200000; ++iter) {
        const bool bland = degenerate_run > 30;
        std::size_t enter = allowed_cols;
        double most = -eps;
        for (std::size_t c = 0; c < allowed_cols; ++c)
            if (t(obj, c) < most) {
                enter = c;
                if (bland)
                    break;
                most = t(obj, c);
            }
        if (enter == allowed_cols)
            return true;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double a = t(r, enter);
            if (a > pivot_tolerance)
                best = std::min(best, std::max(t(r, rhs), 0.0) / a);
        }
        if (best == std::numeric_limits<double>::infinity())
            return false;
        // Among (nearly) minimum-ratio rows take the largest pivot, or in
        // Bland mode the smallest basic index.
        std::size_t leave = m;
        const double slack = 1e-12 * (1.0 + std::abs(best));
        for (std::size_t r = 0; r < m; ++r) {
            const double a = t(r, enter);
            if (!(a > pivot_tolerance) || std::max(t(r, rhs), 0.0) / a > best + slack)
                continue;
            if (leave == m || (bland ? basis[r] < basis[leave] : a > t(leave, enter)))
                leave = r;
        }
        degenerate_run = best <= slack ? degenerate_run + 1 : 0;
        t.pivot(leave, enter);
        basis[leave] = enter;
        for (std::size_t r = 0; r < m; ++r)
            if (t(r, rhs) < 0.0 && t(r, rhs) > -1e-12)
                t(r, rhs) = 0.0;
    }
    throw std::runtime_error("simplex iteration limit reached");
}

} // namespace detail

/// Solves the program. Throws input_error for dimension mismatches or
/// non-finite coefficients.
inline Solution solve(const LinearProgram& p) {
    const std::size_t n = p.variables;
    if (!p.objective.empty() && p.objective.size() != n)
        throw input_error("objective length " + std::to_string(p.objective.size()) +
                          " does not match variable count " + std::to_string(n));
    for (double c : p.objective)
        if (!std::isfinite(c))
            throw input_error("non-finite objective coefficient");
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& con = p.constraints[i];
        if (con.row.size() != n)
            throw input_error("constraint " + std::to_string(i) + " has length " +
                              std::to_string(con.row.size()) + ", expected " + std::to_string(n));
        if (!std::isfinite(con.bound))
            throw input_error("non-finite bound in constraint " + std::to_string(i));
        for (double v : con.row)
            if (!std::isfinite(v))
                throw input_error("non-finite coefficient in constraint " + std::to_string(i));
    }

    const std::size_t m = p.constraints.size();
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (p.constraints[i].bound < 0)
            art_rows.push_back(i);

    // Columns: p (n) | q (n) | slacks (m) | artificials | rhs
    const std::size_t n_struct = 2 * n + m;
    const std::size_t n_cols = n_struct + art_rows.size() + 1;
    const std::size_t rhs = n_cols - 1;
    detail::Tableau t(m + 1, n_cols);
    std::vector<std::size_t> basis(m);

    std::size_t next_art = n_struct;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& con = p.constraints[i];
        const double sign = con.bound < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            t(i, j) = sign * con.row[j];
            t(i, n + j) = -sign * con.row[j];
        }
        t(i, 2 * n + i) = sign;
        t(i, rhs) = sign * con.bound;
        if (sign < 0) {
            t(i, next_art) = 1.0;
            basis[i] = next_art++;
        } else {
            basis[i] = 2 * n + i;
        }
    }

    Solution out;
    out.point.assign(n, 0.0);

    if (!art_rows.empty()) {
        // Phase 1: minimize the sum of artificials.
        for (std::size_t c = n_struct; c < n_struct + art_rows.size(); ++c)
            t(m, c) = 1.0;
        for (std::size_t i : art_rows)
            for (std::size_t c = 0; c < n_cols; ++c)
                t(m, c) -= t(i, c);
        detail::run_simplex(t, basis, n_struct + art_rows.size());
        double scale = 1.0;
        for (const auto& con : p.constraints)
            scale = std::max(scale, std::abs(con.bound));
        if (-t(m, rhs) > 1e-9 * scale) {
            out.status = Status::infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis.
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < n_struct)
                continue;
            std::size_t best_c = n_struct;
            for (std::size_t c = 0; c < n_struct; ++c)
                if (std::abs(t(r, c)) > 1e-9 &&
                    (best_c == n_struct || std::abs(t(r, c)) > std::abs(t(r, best_c))))
                    best_c = c;
            if (best_c < n_struct) {
                t.pivot(r, best_c);
                basis[r] = best_c;
            }
            // A row that cannot be pivoted is redundant; its artificial stays
            // basic at zero and is never allowed to re-enter.
        }
    }

    // Phase 2 objective row.
    for (std::size_t c = 0; c < n_cols; ++c)
        t(m, c) = 0.0;
    if (!p.objective.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            t(m, j) = p.objective[j];
            t(m, n + j) = -p.objective[j];
        }
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t b = basis[r];
            const double cb = t(m, b);
            if (cb != 0.0 && b < n_struct)
                for (std::size_t c = 0; c < n_cols; ++c)
                    t(m, c) -= cb * t(r, c);
        }
    }
    if (!detail::run_simplex(t, basis, n_struct)) {
        out.status = Status::unbounded;
        return out;
    }

    std::vector<double> vals(n_struct, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n_struct)
            vals[basis[r]] = t(r, rhs);
    for (std::size_t j = 0; j < n; ++j)
        out.point[j] = vals[j] - vals[n + j];
    out.value = 0.0;
    for (std::size_t j = 0; j < p.objective.size(); ++j)
        out.value += p.objective[j] * out.point[j];
    out.status = Status::optimal;
    return out;
}

struct Feasibility {
    bool feasible = false;
    std::vector<double> witness;
};

/// Zero-objective solve over `variables` unknowns.
inline Feasibility feasible(std::size_t variables, const std::vector<Constraint>& constraints) {
    LinearProgram p;
    p.variables = variables;
    p.constraints = constraints;
    auto s = solve(p);
    if (s.status != Status::optimal)
        return {false, {}};
    return {true, std::move(s.point)};
}

} // namespace lipsel::lp
