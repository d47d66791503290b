#pragma once

#include "itpn/bound.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace itpn {

/// Caller-chosen variable identifier (transition ids, delay ids, ...).
using VarTag = std::int64_t;

/// Σ coeffs[k]·x_k ≤ bound with gcd-normalized integer coefficients.
struct Constraint {
    std::vector<std::int64_t> coeffs;
    Rational bound;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Sparse linear form over tagged variables.
using LinearForm = std::vector<std::pair<VarTag, std::int64_t>>;

struct OracleBudget {
    std::size_t max_constraints = 512;
    std::size_t max_variables = 24;
};

/// Conjunction of rational linear inequalities. Rows are kept normalized
/// and deduplicated (one row per coefficient vector, tightest bound).
class LinearSystem {
public:
    LinearSystem() = default;
    explicit LinearSystem(std::vector<VarTag> vars, OracleBudget budget = {});

    const std::vector<VarTag>& variables() const { return vars_; }
    std::size_t var_count() const { return vars_.size(); }
    bool has_variable(VarTag x) const;
    std::size_t column(VarTag x) const;
    void add_variable(VarTag x);
    void rename(VarTag from, VarTag to);
    /// Permutes columns into `order`, which must be a permutation of variables().
    void reorder(const std::vector<VarTag>& order);

    const std::vector<Constraint>& constraints() const { return rows_; }
    /// True when a contradiction 0 ≤ b < 0 has been derived.
    bool trivially_infeasible() const { return infeasible_; }

    /// Adds Σ form ≤ bound; an infinite bound adds nothing.
    void add(const LinearForm& form, const Bound& bound);
    void add_row(std::vector<std::int64_t> coeffs, const Rational& bound);
    /// x ≤ b
    void add_upper(VarTag x, const Bound& b);
    /// x ≥ a
    void add_lower(VarTag x, const Rational& a);
    /// y − x ≤ b
    void add_difference(VarTag x, VarTag y, const Bound& b);

    /// x := x' + by, i.e. the column of x now denotes x − by.
    void shift(VarTag x, VarTag by);
    /// x := value; removes the column.
    void assign(VarTag x, const Rational& value);

    /// Fourier–Motzkin projection removing x.
    void eliminate(VarTag x);
    /// Eliminates several variables, pruning rows with Chernikov's
    /// history criterion. Throws BudgetError on blow-up.
    void eliminate_all(const std::vector<VarTag>& xs);

    bool is_consistent() const;
    /// Supremum of the form over the solution set; nullopt when empty.
    std::optional<Bound> maximize(const LinearForm& form) const;
    bool entails(const Constraint& c) const;
    /// Every row of other is entailed by this system (this ⊆ other).
    bool entails_all(const LinearSystem& other) const;
    /// Drops every row entailed by the remaining ones.
    void simplify();

    bool satisfied_by(const std::vector<Rational>& point) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    void check_budget() const;
    void insert(Constraint c);
    void rebuild_index();

    std::vector<VarTag> vars_;
    std::vector<Constraint> rows_;
    bool infeasible_ = false;
    OracleBudget budget_;
};

}  // namespace itpn
