#include "hopfsmooth/linalg.hpp"

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

namespace {

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> echelon(const Field& field, Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Coeff inv = field.inv(m[row][c]);
    for (auto& v : m[row]) v = field.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Coeff f = m[r][c];
      for (std::size_t k = c; k < m[r].size(); ++k)
        if (m[row][k] != 0) m[r][k] = field.sub(m[r][k], field.mul(f, m[row][k]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(const Field& field, Matrix m) {
  if (m.empty()) return 0;
  for (auto& row : m)
    for (auto& v : row) v = field.normalize(v);
  return echelon(field, m, m.front().size()).size();
}

std::optional<std::vector<Coeff>> solve_linear(const Field& field, Matrix a, std::vector<Coeff> b) {
  if (a.size() != b.size()) throw InputError("DimensionMismatch", "right-hand side has wrong length");
  std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != cols) throw InputError("DimensionMismatch", "ragged matrix");
    for (auto& v : a[r]) v = field.normalize(v);
    a[r].push_back(field.normalize(b[r]));
  }
  auto pivots = echelon(field, a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (a[r][cols] != 0) return std::nullopt;
  std::vector<Coeff> x(cols, Coeff(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

}  // namespace hopfsmooth
