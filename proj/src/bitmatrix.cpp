#include "bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "error.hpp"

namespace hc {

int gf2_rank(const BitMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  size_t w = m.words_per_row;
  std::vector<uint64_t> work = m.bits;
  std::vector<size_t> pivot_word;   // per pivot row: word of its leading bit
  std::vector<uint64_t> pivot_mask;
  std::vector<size_t> pivots;       // row offsets into work

  for (size_t r = 0; r < m.rows; ++r) {
    uint64_t* row = work.data() + r * w;
    for (size_t p = 0; p < pivots.size(); ++p) {
      if (row[pivot_word[p]] & pivot_mask[p]) {
        const uint64_t* prow = work.data() + pivots[p];
        for (size_t i = 0; i < w; ++i) row[i] ^= prow[i];
      }
    }
    for (size_t i = 0; i < w; ++i) {
      if (row[i] == 0) continue;
      uint64_t lead = row[i] & (~row[i] + 1);
      pivot_word.push_back(i);
      pivot_mask.push_back(lead);
      pivots.push_back(r * w);
      break;
    }
  }
  return static_cast<int>(pivots.size());
}

size_t distinct_row_count(const BitMatrix& m) {
  if (m.rows == 0) return 0;
  std::vector<size_t> order(m.rows);
  for (size_t i = 0; i < m.rows; ++i) order[i] = i;
  size_t w = m.words_per_row;
  auto cmp = [&](size_t a, size_t b) {
    return std::lexicographical_compare(m.row(a), m.row(a) + w, m.row(b), m.row(b) + w);
  };
  std::sort(order.begin(), order.end(), cmp);
  size_t count = 1;
  for (size_t i = 1; i < m.rows; ++i)
    if (!std::equal(m.row(order[i - 1]), m.row(order[i - 1]) + w, m.row(order[i]))) ++count;
  return count;
}

std::string dump_matrix(const BitMatrix& m) {
  std::string out;
  out.reserve(m.rows * (m.cols + 1));
  for (size_t r = 0; r < m.rows; ++r) {
    for (size_t c = 0; c < m.cols; ++c) out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string RankReport::line() const {
  std::ostringstream out;
  out << "rank " << rank << " distinct_rows " << distinct_rows << " pool " << pool_bound
      << " depth " << depth << " saturated " << (saturated ? 1 : 0);
  return out.str();
}

}  // namespace hc
