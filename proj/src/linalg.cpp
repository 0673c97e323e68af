#include "polcheck/linalg.hpp"

namespace polcheck {

namespace {

// Reduces m in place to row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> echelon(Matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const FieldElement inv = m[row][col].inverse();
        for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            const FieldElement factor = m[i][col];
            for (std::size_t j = col; j < m[i].size(); ++j) {
                if (!m[row][j].is_zero()) m[i][j] -= factor * m[row][j];
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t matrix_rank(Matrix m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    return echelon(m, cols).size();
}

std::optional<std::vector<FieldElement>> solve_linear(Matrix a, std::vector<FieldElement> b, const SpecPtr& spec) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    const std::vector<std::size_t> pivots = echelon(a, cols);
    for (std::size_t i = pivots.size(); i < a.size(); ++i) {
        if (!a[i][cols].is_zero()) return std::nullopt;
    }
    std::vector<FieldElement> x(cols, FieldElement::zero(spec));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

}  // namespace polcheck
