#include "coalspec/tri_matrix.hpp"

#include "coalspec/errors.hpp"

namespace coalspec {

TriMatrix::TriMatrix(std::shared_ptr<const PartitionLattice> lattice)
    : lattice_(std::move(lattice)), rows_(lattice_ ? lattice_->size() : 0) {}

TriMatrix TriMatrix::over_block_counts(int n) {
  if (n < 1) throw domain_error("block-counting matrix needs n >= 1");
  TriMatrix m;
  m.rows_.resize(static_cast<std::size_t>(n));
  return m;
}

BigRat TriMatrix::get(std::size_t row, std::size_t col) const {
  const auto& r = rows_.at(row);
  const auto it = r.find(col);
  return it == r.end() ? BigRat() : it->second;
}

void TriMatrix::set(std::size_t row, std::size_t col, const BigRat& value) {
  if (row >= dim() || col >= dim()) throw domain_error("TriMatrix: index out of range");
  if (col < row) {
    if (value.is_zero()) return;
    throw domain_error("TriMatrix: entry below the diagonal at (" + label(row) + ", " + label(col) + ")");
  }
  if (value.is_zero()) {
    rows_[row].erase(col);
  } else {
    rows_[row][col] = value;
  }
}

void TriMatrix::add(std::size_t row, std::size_t col, const BigRat& value) {
  set(row, col, get(row, col) + value);
}

std::size_t TriMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::string TriMatrix::label(std::size_t index) const {
  if (lattice_) return lattice_->at(index).str();
  return std::to_string(dim() - index);
}

std::size_t TriMatrix::block_position(int blocks) const {
  if (!is_block_indexed()) throw domain_error("TriMatrix: not a block-counting matrix");
  if (blocks < 1 || static_cast<std::size_t>(blocks) > dim()) {
    throw domain_error("TriMatrix: block count out of range");
  }
  return dim() - static_cast<std::size_t>(blocks);
}

TriMatrix TriMatrix::identity_like(const TriMatrix& shape) {
  TriMatrix out = shape;
  for (std::size_t k = 0; k < out.dim(); ++k) {
    out.rows_[k].clear();
    out.rows_[k].emplace(k, BigRat(1));
  }
  return out;
}

TriMatrix operator*(const TriMatrix& a, const TriMatrix& b) {
  if (a.dim() != b.dim()) throw domain_error("TriMatrix product: dimension mismatch");
  TriMatrix out = a;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    TriMatrix::Row acc;
    for (const auto& [mid, av] : a.rows_[r]) {
      for (const auto& [col, bv] : b.rows_[mid]) acc[col] += av * bv;
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
    out.rows_[r] = std::move(acc);
  }
  return out;
}

TriMatrix TriMatrix::scale_columns(const std::vector<BigRat>& diag) const {
  if (diag.size() != dim()) throw domain_error("TriMatrix: diagonal size mismatch");
  TriMatrix out = *this;
  for (auto& r : out.rows_) {
    for (auto& [col, v] : r) v *= diag[col];
    std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  }
  return out;
}

}  // namespace coalspec
