#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lipsel {

/// Thrown for malformed input at any public entry point (bad shapes,
/// unknown ids, out-of-range parameters).
class input_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// One failed pseudometric axiom. Indices refer to rows of the input table.
struct AxiomViolation {
    enum class Kind { nonzero_diagonal, asymmetric, triangle };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;
    double excess = 0.0;

    std::string describe() const {
        switch (kind) {
        case Kind::nonzero_diagonal:
            return "d[" + std::to_string(i) + "][" + std::to_string(i) + "] != 0";
        case Kind::asymmetric:
            return "d[" + std::to_string(i) + "][" + std::to_string(j) + "] != d[" +
                   std::to_string(j) + "][" + std::to_string(i) + "]";
        case Kind::triangle:
            return "triangle " + std::to_string(i) + "-" + std::to_string(k) + "-" +
                   std::to_string(j) + ": d[" + std::to_string(i) + "][" + std::to_string(j) +
                   "] exceeds d[" + std::to_string(i) + "][" + std::to_string(k) + "] + d[" +
                   std::to_string(k) + "][" + std::to_string(j) + "]";
        }
        return {};
    }
};

/// Finite pseudometric space. Points are addressed by index 0..size()-1;
/// string identifiers are kept for I/O and reports. Immutable once built.
class PseudoMetric {
  public:
    static constexpr double relative_tolerance = 1e-9;

    PseudoMetric() = default;

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * ids_.size() + j]; }
    double max_distance() const { return max_d_; }

    std::size_t index_of(const std::string& name) const {
        auto it = std::find(ids_.begin(), ids_.end(), name);
        if (it == ids_.end())
            throw input_error("unknown point id '" + name + "'");
        return static_cast<std::size_t>(it - ids_.begin());
    }

    /// Smallest strictly positive distance, or nullopt when every distance is 0.
    std::optional<double> min_positive_distance() const {
        std::optional<double> best;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j) {
                double v = (*this)(i, j);
                if (v > 0 && (!best || v < *best))
                    best = v;
            }
        return best;
    }

    /// Restriction to a subset of indices, in the given order.
    PseudoMetric restrict_to(const std::vector<std::size_t>& subset) const {
        PseudoMetric out;
        out.ids_.reserve(subset.size());
        for (auto s : subset) {
            if (s >= size())
                throw input_error("subset index out of range");
            out.ids_.push_back(ids_[s]);
        }
        out.d_.resize(subset.size() * subset.size());
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = 0; b < subset.size(); ++b) {
                double v = (*this)(subset[a], subset[b]);
                out.d_[a * subset.size() + b] = v;
                out.max_d_ = std::max(out.max_d_, v);
            }
        return out;
    }

    /// Same space with every distance multiplied by `factor` (> 0).
    PseudoMetric scaled(double factor) const {
        if (!(factor > 0) || !std::isfinite(factor))
            throw input_error("scale factor must be positive and finite");
        PseudoMetric out = *this;
        for (auto& v : out.d_)
            v *= factor;
        out.max_d_ *= factor;
        return out;
    }

    friend std::variant<PseudoMetric, std::vector<AxiomViolation>>
    validate_pseudometric(const std::vector<std::vector<double>>& table,
                          std::vector<std::string> ids);

  private:
    std::vector<std::string> ids_;
    std::vector<double> d_;
    double max_d_ = 0.0;
};

inline std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i)
        ids.push_back("p" + std::to_string(i));
    return ids;
}

/// Checks the pseudometric axioms on a square table. Returns the validated
/// space or every violated axiom instance. Throws input_error for a
/// non-square table or a negative / non-finite entry.
inline std::variant<PseudoMetric, std::vector<AxiomViolation>>
validate_pseudometric(const std::vector<std::vector<double>>& table,
                      std::vector<std::string> ids = {}) {
    const std::size_t n = table.size();
    if (ids.empty())
        ids = default_ids(n);
    if (ids.size() != n)
        throw input_error("id list length does not match table size");
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw input_error("distance table is not square (row " + std::to_string(i) + ")");
        for (std::size_t j = 0; j < n; ++j) {
            double v = table[i][j];
            if (!std::isfinite(v))
                throw input_error("non-finite distance at [" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]");
            if (v < 0)
                throw input_error("negative distance at [" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]");
            max_d = std::max(max_d, v);
        }
    }
    const double tol = PseudoMetric::relative_tolerance * (1.0 + max_d);
    std::vector<AxiomViolation> bad;
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i][i] > tol)
            bad.push_back({AxiomViolation::Kind::nonzero_diagonal, i, i, i, table[i][i]});
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(table[i][j] - table[j][i]) > tol)
                bad.push_back({AxiomViolation::Kind::asymmetric, i, j, j,
                               std::abs(table[i][j] - table[j][i])});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j)
                    continue;
                double excess = table[i][j] - (table[i][k] + table[k][j]);
                if (excess > tol)
                    bad.push_back({AxiomViolation::Kind::triangle, i, j, k, excess});
            }
    if (!bad.empty())
        return bad;

    PseudoMetric m;
    m.ids_ = std::move(ids);
    m.d_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.d_[i * n + j] = (i == j) ? 0.0 : 0.5 * (table[i][j] + table[j][i]);
    m.max_d_ = max_d;
    return m;
}

/// Validates and returns the space, throwing input_error listing the first
/// violation otherwise.
inline PseudoMetric make_pseudometric(const std::vector<std::vector<double>>& table,
                                      std::vector<std::string> ids = {}) {
    auto r = validate_pseudometric(table, std::move(ids));
    if (auto* bad = std::get_if<std::vector<AxiomViolation>>(&r))
        throw input_error("not a pseudometric: " + bad->front().describe());
    return std::get<PseudoMetric>(std::move(r));
}

/// Largest pairwise distance inside `subset`; 0 for empty or singleton subsets.
inline double diam(const PseudoMetric& m, const std::vector<std::size_t>& subset) {
    double best = 0.0;
    for (auto i : subset)
        if (i >= m.size())
            throw input_error("unknown point index " + std::to_string(i));
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            best = std::max(best, m(subset[a], subset[b]));
    return best;
}

inline double diam(const PseudoMetric& m, const std::vector<std::string>& subset) {
    std::vector<std::size_t> idx;
    for (const auto& s : subset)
        idx.push_back(m.index_of(s));
    return diam(m, idx);
}

/// Line embedding of a four-point pseudometric with distortion at most 7:
/// rho(z,z') <= |phi(z) - phi(z')| <= 7 rho(z,z').
///
/// z1,z2 is the closest pair (first in lexicographic (i,j) order on ties),
/// z3 is the remaining point nearer to z1 (lower index on ties), z4 the last.
/// The result is indexed like `points`.
inline std::array<double, 4> embed_four_points(const PseudoMetric& m,
                                               const std::vector<std::size_t>& points) {
    if (points.size() != 4)
        throw input_error("embed_four_points needs exactly four points");
    for (auto p : points)
        if (p >= m.size())
            throw input_error("unknown point index " + std::to_string(p));
    auto rho = [&](std::size_t a, std::size_t b) { return m(points[a], points[b]); };

    std::size_t z1 = 0, z2 = 1;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (rho(i, j) < rho(z1, z2))
                z1 = i, z2 = j;
    std::array<std::size_t, 2> rest{};
    std::size_t r = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != z1 && i != z2)
            rest[r++] = i;
    std::size_t z3 = rest[0], z4 = rest[1];
    if (rho(z1, z4) < rho(z1, z3))
        std::swap(z3, z4);

    std::array<double, 4> phi{};
    phi[z1] = 0.0;
    phi[z2] = rho(z1, z2);
    phi[z3] = phi[z2] + rho(z2, z3);
    phi[z4] = phi[z3] + rho(z3, z4);
    return phi;
}

} // namespace lipsel
