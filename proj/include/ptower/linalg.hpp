#pragma once

// Exact Gaussian elimination over an arbitrary field type (RatFun, Fp, Fq).
// Vectors are sparse maps index -> coefficient; the basis is kept in full
// reduced row echelon form so coordinates against it are unique.

#include "context.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ptower {

template <class F>
using SparseVec = std::map<long, F>;

template <class F>
void vec_axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
    if (a.is_zero()) return;
    for (auto& [i, c] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            F v = a * c;
            if (!v.is_zero()) y.emplace(i, v);
        } else {
            it->second = it->second + a * c;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

template <class F>
SparseVec<F> vec_scale(const SparseVec<F>& x, const F& a) {
    SparseVec<F> r;
    if (a.is_zero()) return r;
    for (auto& [i, c] : x) r.emplace(i, a * c);
    return r;
}

enum class Pivot { Min, Max };

// Incremental RREF with optional bookkeeping of how each stored row was
// produced from the inserted ones.
template <class F>
class RowBasis {
public:
    explicit RowBasis(Pivot mode = Pivot::Min, bool track = false)
        : mode_(mode), track_(track) {}

    size_t rank() const { return rows_.size(); }
    const SparseVec<F>& row(size_t i) const { return rows_[i].v; }
    long pivot(size_t i) const { return rows_[i].pivot; }
    const SparseVec<F>& combo(size_t i) const { return rows_[i].combo; }

    // Reduce v against the basis; `used` (if given) collects the coefficients
    // of the stored rows that were subtracted.
    SparseVec<F> reduce(SparseVec<F> v, SparseVec<F>* used = nullptr) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            auto it = v.find(rows_[i].pivot);
            if (it == v.end()) continue;
            F c = it->second;
            vec_axpy(v, -c, rows_[i].v);
            if (used) (*used)[static_cast<long>(i)] = c;
        }
        return v;
    }

    // Insert a row (tagged `tag` for bookkeeping). Returns true if the rank grew.
    bool insert(SparseVec<F> v, long tag = -1) {
        SparseVec<F> used;
        v = reduce(std::move(v), track_ ? &used : nullptr);
        if (v.empty()) return false;
        long piv = (mode_ == Pivot::Min) ? v.begin()->first : v.rbegin()->first;
        F c = v.at(piv);
        F cinv = c.inv();
        SparseVec<F> nv = vec_scale(v, cinv);
        SparseVec<F> ncombo;
        if (track_) {
            // combo of the new row over the inserted tags
            for (auto& [i, u] : used) vec_axpy(ncombo, -(cinv * u), rows_[i].combo);
            auto it = ncombo.find(tag);
            ncombo[tag] = (it == ncombo.end() ? cinv : it->second + cinv);
            if (ncombo[tag].is_zero()) ncombo.erase(tag);
        }
        // back-eliminate the new pivot from existing rows
        for (auto& r : rows_) {
            auto it = r.v.find(piv);
            if (it == r.v.end()) continue;
            F a = it->second;
            vec_axpy(r.v, -a, nv);
            if (track_) vec_axpy(r.combo, -a, ncombo);
        }
        rows_.push_back(Row{piv, std::move(nv), std::move(ncombo)});
        return true;
    }

    bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }

    // coefficients over the *inserted* rows expressing target, if it lies in
    // the span (requires tracking)
    std::optional<SparseVec<F>> solve(const SparseVec<F>& target) const {
        SparseVec<F> used;
        SparseVec<F> rem = reduce(target, &used);
        if (!rem.empty()) return std::nullopt;
        SparseVec<F> out;
        for (auto& [i, c] : used) vec_axpy(out, c, rows_[i].combo);
        return out;
    }

private:
    struct Row {
        long pivot;
        SparseVec<F> v;
        SparseVec<F> combo;
    };
    Pivot mode_;
    bool track_;
    std::vector<Row> rows_;
};

// Right kernel {x : A x = 0} of the matrix whose rows are given. `unit` is
// the field's 1 (field types carry runtime context, so it must be passed in).
template <class F>
std::vector<SparseVec<F>> kernel(const std::vector<SparseVec<F>>& rows, long ncols, const F& unit) {
    RowBasis<F> basis;
    for (auto& r : rows) basis.insert(r);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t i = 0; i < basis.rank(); ++i) is_pivot[basis.pivot(i)] = true;
    std::vector<SparseVec<F>> ker;
    for (long f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        SparseVec<F> x;
        for (size_t i = 0; i < basis.rank(); ++i) {
            auto it = basis.row(i).find(f);
            if (it != basis.row(i).end()) x[basis.pivot(i)] = -it->second;
        }
        x[f] = unit;
        ker.push_back(std::move(x));
    }
    return ker;
}

template <class F>
size_t rank_of(const std::vector<SparseVec<F>>& rows) {
    RowBasis<F> basis;
    for (auto& r : rows) basis.insert(r);
    return basis.rank();
}

// coefficients c with sum c_i rows_i = target, or InconsistentSystem
template <class F>
SparseVec<F> solve_in_span(const std::vector<SparseVec<F>>& rows, const SparseVec<F>& target) {
    RowBasis<F> basis(Pivot::Min, true);
    for (size_t i = 0; i < rows.size(); ++i) basis.insert(rows[i], static_cast<long>(i));
    auto sol = basis.solve(target);
    if (!sol) fail("inconsistent_system", "target not in the row span");
    return *sol;
}

}  // namespace ptower
