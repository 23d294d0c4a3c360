#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hc {

// Rectangular 0/1 matrix with rows packed 64 bits per word. Labels carry
// the pool / context indices the rows and columns were built from.
struct BitMatrix {
  size_t rows = 0, cols = 0;
  size_t words_per_row = 0;
  std::vector<uint64_t> bits;
  std::vector<int64_t> row_labels, col_labels;

  BitMatrix() = default;
  BitMatrix(size_t r, size_t c)
      : rows(r), cols(c), words_per_row((c + 63) / 64), bits(r * words_per_row, 0) {
    row_labels.resize(r);
    col_labels.resize(c);
    for (size_t i = 0; i < r; ++i) row_labels[i] = static_cast<int64_t>(i);
    for (size_t j = 0; j < c; ++j) col_labels[j] = static_cast<int64_t>(j);
  }

  bool get(size_t r, size_t c) const {
    return (bits[r * words_per_row + c / 64] >> (c % 64)) & 1u;
  }
  void set(size_t r, size_t c, bool v) {
    uint64_t& w = bits[r * words_per_row + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    w = v ? (w | m) : (w & ~m);
  }
  const uint64_t* row(size_t r) const { return bits.data() + r * words_per_row; }
  uint64_t* row(size_t r) { return bits.data() + r * words_per_row; }
};

// GF(2) rank by Gaussian elimination on a copy; the input is unmodified.
int gf2_rank(const BitMatrix& m);

size_t distinct_row_count(const BitMatrix& m);

// One 0/1 character row per line.
std::string dump_matrix(const BitMatrix& m);

// Rank of one truncation of an infinite matrix, plus where the truncation
// sat. saturated means the rank did not move under the last increment of
// either truncation parameter.
struct RankReport {
  int rank = 0;
  size_t distinct_rows = 0;
  int pool_bound = 0;
  int depth = 0;
  bool saturated = false;

  std::string line() const;
};

}  // namespace hc
