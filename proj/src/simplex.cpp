// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/simplex.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace eqrefute {

namespace {

// Dense tableau with an explicit reduced-cost row. Column layout:
// structural columns (free variables split into positive and negative parts),
// then slack/surplus columns, then artificials.
class Tableau {
public:
    Tableau(const SimplexProblem& p, const Deadline& deadline)
        : problem_(p), deadline_(deadline) {
        build();
    }

    SimplexResult run() {
        SimplexResult res;
        // Phase 1: drive the artificial variables to zero.
        set_costs(phase1_costs_);
        auto st = optimize();
        if (st == SimplexStatus::Timeout) {
            res.status = st;
            return res;
        }
        if (obj_value_ != 0) {
            res.status = SimplexStatus::Infeasible;
            res.iterations = iterations_;
            return res;
        }
        purge_artificials();

        set_costs(phase2_costs_);
        st = optimize();
        res.status = st;
        res.iterations = iterations_;
        if (st != SimplexStatus::Optimal) return res;

        res.point = extract_point();
        res.objective_value = 0;
        for (int i = 0; i < problem_.num_vars; ++i)
            res.objective_value += problem_.objective[i] * res.point[i];
        return res;
    }

private:
    const SimplexProblem& problem_;
    const Deadline& deadline_;
    size_t m_ = 0;
    size_t ncols_ = 0;
    size_t art_begin_ = 0;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<Rational> cost_row_;
    Rational obj_value_ = 0;
    std::vector<size_t> basis_;
    std::vector<Rational> phase1_costs_;
    std::vector<Rational> phase2_costs_;
    // Column pair of each structural variable (second = npos unless free).
    static constexpr size_t npos = std::numeric_limits<size_t>::max();
    std::vector<std::pair<size_t, size_t>> var_cols_;
    long iterations_ = 0;
    bool bland_ = false;
    long bland_threshold_ = 0;

    void build() {
        m_ = problem_.rows.size();
        size_t structural = 0;
        var_cols_.resize(problem_.num_vars);
        for (int i = 0; i < problem_.num_vars; ++i) {
            var_cols_[i].first = structural++;
            var_cols_[i].second = problem_.nonneg[i] ? npos : structural++;
        }
        size_t slack_count = 0;
        for (const auto& row : problem_.rows)
            if (row.op != RowOp::Eq) ++slack_count;

        // Worst case every row needs an artificial.
        art_begin_ = structural + slack_count;
        ncols_ = art_begin_;
        a_.assign(m_, {});
        b_.assign(m_, Rational(0));
        basis_.assign(m_, npos);

        size_t next_slack = structural;
        std::vector<size_t> art_rows;
        for (size_t r = 0; r < m_; ++r) {
            const auto& row = problem_.rows[r];
            std::vector<Rational> dense(art_begin_, Rational(0));
            for (const auto& [v, c] : row.terms) {
                dense[var_cols_[v].first] += c;
                if (var_cols_[v].second != npos) dense[var_cols_[v].second] -= c;
            }
            Rational rhs = row.rhs;
            RowOp op = row.op;
            if (rhs < 0) {
                for (auto& x : dense) x = -x;
                rhs = -rhs;
                if (op == RowOp::Le)
                    op = RowOp::Ge;
                else if (op == RowOp::Ge)
                    op = RowOp::Le;
            }
            if (op == RowOp::Le) {
                dense[next_slack] = 1;
                basis_[r] = next_slack++;
            } else if (op == RowOp::Ge) {
                dense[next_slack] = -1;
                ++next_slack;
                art_rows.push_back(r);
            } else {
                art_rows.push_back(r);
            }
            a_[r] = std::move(dense);
            b_[r] = rhs;
        }
        // Append artificial columns only where needed.
        for (size_t r : art_rows) {
            for (size_t i = 0; i < m_; ++i) a_[i].push_back(Rational(0));
            a_[r][ncols_] = 1;
            basis_[r] = ncols_;
            ++ncols_;
        }

        phase1_costs_.assign(ncols_, Rational(0));
        for (size_t j = art_begin_; j < ncols_; ++j) phase1_costs_[j] = 1;

        phase2_costs_.assign(ncols_, Rational(0));
        for (int i = 0; i < problem_.num_vars; ++i) {
            Rational c = problem_.objective[i];
            if (problem_.maximize) c = -c;
            phase2_costs_[var_cols_[i].first] += c;
            if (var_cols_[i].second != npos) phase2_costs_[var_cols_[i].second] -= c;
        }
        bland_threshold_ = 4 * static_cast<long>(m_ + ncols_) + 256;
    }

    // Rebuilds the reduced-cost row for the given cost vector and the current
    // basis, then prices out all basic columns.
    void set_costs(const std::vector<Rational>& costs) {
        cost_row_ = costs;
        cost_row_.resize(ncols_, Rational(0));
        obj_value_ = 0;
        for (size_t r = 0; r < m_; ++r) {
            const Rational& cb = costs[basis_[r]];
            if (cb == 0) continue;
            for (size_t j = 0; j < ncols_; ++j)
                if (a_[r][j] != 0) cost_row_[j] -= cb * a_[r][j];
            obj_value_ -= cb * b_[r];
        }
    }

    std::optional<size_t> pick_entering() const {
        if (bland_) {
            for (size_t j = 0; j < ncols_; ++j)
                if (cost_row_[j] < 0) return j;
            return std::nullopt;
        }
        std::optional<size_t> best;
        for (size_t j = 0; j < ncols_; ++j)
            if (cost_row_[j] < 0 && (!best || cost_row_[j] < cost_row_[*best])) best = j;
        return best;
    }

    std::optional<size_t> pick_leaving(size_t enter) const {
        std::optional<size_t> best;
        Rational best_ratio = 0;
        for (size_t r = 0; r < m_; ++r) {
            if (a_[r][enter] <= 0) continue;
            Rational ratio = b_[r] / a_[r][enter];
            if (!best || ratio < best_ratio ||
                (ratio == best_ratio && basis_[r] < basis_[*best])) {
                best = r;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(size_t row, size_t col) {
        Rational inv = 1 / a_[row][col];
        for (size_t j = 0; j < ncols_; ++j)
            if (a_[row][j] != 0) a_[row][j] *= inv;
        b_[row] *= inv;
        a_[row][col] = 1;
        for (size_t r = 0; r < m_; ++r) {
            if (r == row || a_[r][col] == 0) continue;
            Rational f = a_[r][col];
            for (size_t j = 0; j < ncols_; ++j)
                if (a_[row][j] != 0) a_[r][j] -= f * a_[row][j];
            b_[r] -= f * b_[row];
            a_[r][col] = 0;
        }
        if (cost_row_[col] != 0) {
            Rational f = cost_row_[col];
            for (size_t j = 0; j < ncols_; ++j)
                if (a_[row][j] != 0) cost_row_[j] -= f * a_[row][j];
            obj_value_ -= f * b_[row];
            cost_row_[col] = 0;
        }
        basis_[row] = col;
    }

    SimplexStatus optimize() {
        while (true) {
            if ((iterations_ & 63) == 0 && deadline_.expired()) return SimplexStatus::Timeout;
            if (!bland_ && iterations_ > bland_threshold_) bland_ = true;
            auto enter = pick_entering();
            if (!enter) return SimplexStatus::Optimal;
            auto leave = pick_leaving(*enter);
            if (!leave) return SimplexStatus::Unbounded;
            pivot(*leave, *enter);
            ++iterations_;
        }
    }

    // After phase 1 at objective zero, any artificial still basic sits at
    // value zero; pivot it out on a structural column, or drop the row as
    // redundant when the row has no structural entry left. Artificial columns
    // are then removed entirely so phase 2 cannot touch them.
    void purge_artificials() {
        for (size_t r = 0; r < m_;) {
            if (basis_[r] < art_begin_) {
                ++r;
                continue;
            }
            assert(b_[r] == 0);
            size_t col = npos;
            for (size_t j = 0; j < art_begin_; ++j)
                if (a_[r][j] != 0) {
                    col = j;
                    break;
                }
            if (col != npos) {
                pivot(r, col);
                ++r;
            } else {
                a_.erase(a_.begin() + static_cast<long>(r));
                b_.erase(b_.begin() + static_cast<long>(r));
                basis_.erase(basis_.begin() + static_cast<long>(r));
                --m_;
            }
        }
        for (auto& row : a_) row.resize(art_begin_);
        ncols_ = art_begin_;
        phase2_costs_.resize(art_begin_);
    }

    std::vector<Rational> extract_point() const {
        std::vector<Rational> col_val(ncols_, Rational(0));
        for (size_t r = 0; r < m_; ++r) col_val[basis_[r]] = b_[r];
        std::vector<Rational> x(problem_.num_vars, Rational(0));
        for (int i = 0; i < problem_.num_vars; ++i) {
            x[i] = col_val[var_cols_[i].first];
            if (var_cols_[i].second != npos) x[i] -= col_val[var_cols_[i].second];
        }
        return x;
    }
};

}  // namespace

SimplexResult solve_simplex(const SimplexProblem& problem, const Deadline& deadline) {
    assert(problem.objective.size() == static_cast<size_t>(problem.num_vars));
    assert(problem.nonneg.size() == static_cast<size_t>(problem.num_vars));
    Tableau t(problem, deadline);
    return t.run();
}

}  // namespace eqrefute
