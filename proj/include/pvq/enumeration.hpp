#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pvq/pyramid.hpp"

namespace pvq {

/// Exact rank of a pyramid point within the canonical codebook ordering.
struct CodebookIndex {
  BigInt value;
  int l;
  int k;
};

/// Bijection between pyramid points and ranks in [0, N(L,K)).
///
/// Canonical order, recursing on the leading coordinate: points whose leading
/// coordinate is 0 come first, then +1, -1, +2, -2, ..., +K, -K; within each
/// block the remaining coordinates are ordered the same way with the leftover
/// weight. With a single coordinate remaining the only points are +weight
/// (rank 0) and -weight (rank 1). Everything here is exact integer
/// arithmetic over an immutable count table, so the coder is safe to share
/// across threads.
class EnumerativeCoder {
 public:
  EnumerativeCoder(int l, int k) : l_(l), k_(k) {
    detail::require(l >= 1, "EnumerativeCoder: l must be >= 1");
    detail::require(k >= 1, "EnumerativeCoder: k must be >= 1");
    counts_ = detail::codebook_table(l, k);
  }

  int l() const { return l_; }
  int k() const { return k_; }

  /// Codebook cardinality N(L,K).
  const BigInt& size() const {
    return counts_[static_cast<std::size_t>(l_)][static_cast<std::size_t>(k_)];
  }

  /// Rank of y in the canonical order.
  CodebookIndex encode(const PyramidPoint& y) const {
    detail::require(static_cast<int>(y.ints.size()) == l_,
                    "encode: dimension mismatch");
    detail::require(y.k == k_, "encode: pyramid radius mismatch");
    BigInt rank = 0;
    long long rem = k_;
    for (int i = 0; i < l_; ++i) {
      const long long v = y.ints[static_cast<std::size_t>(i)];
      const long long m = v < 0 ? -v : v;
      const int left = l_ - 1 - i;
      if (left == 0) {
        if (v < 0) rank += 1;
        break;
      }
      if (m > 0) {
        rank += count(left, rem);  // the leading-0 block
        for (long long j = 1; j < m; ++j)
          rank += 2 * count(left, rem - j);  // +j and -j blocks
        if (v < 0) rank += count(left, rem - m);  // + sorts before -
        rem -= m;
      }
    }
    return CodebookIndex{std::move(rank), l_, k_};
  }

  /// Inverse of encode. Throws std::out_of_range when rank is not a valid
  /// index.
  PyramidPoint decode(BigInt rank) const {
    if (rank < 0 || rank >= size())
      throw std::out_of_range("decode: index outside [0, N(L,K))");
    std::vector<long long> ints(static_cast<std::size_t>(l_), 0);
    long long rem = k_;
    for (int i = 0; i < l_; ++i) {
      const int left = l_ - 1 - i;
      if (left == 0) {
        // The last coordinate absorbs all remaining weight; within this
        // block rank 0 is + and rank 1 is -.
        ints[static_cast<std::size_t>(i)] = rank == 0 ? rem : -rem;
        break;
      }
      if (rank < count(left, rem)) continue;  // leading 0, weight unspent
      rank -= count(left, rem);
      long long m = 1;
      for (;; ++m) {
        const BigInt& block = count(left, rem - m);
        if (rank < block) {
          ints[static_cast<std::size_t>(i)] = m;
          break;
        }
        rank -= block;
        if (rank < block) {
          ints[static_cast<std::size_t>(i)] = -m;
          break;
        }
        rank -= block;
      }
      rem -= m;
    }
    return PyramidPoint(std::move(ints), k_);
  }

 private:
  const BigInt& count(int l, long long k) const {
    return counts_[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
  }

  int l_;
  int k_;
  std::vector<std::vector<BigInt>> counts_;
};

/// One-shot conveniences; build an EnumerativeCoder once when ranking many
/// points of the same codebook.
inline CodebookIndex encode_index(const PyramidPoint& y) {
  return EnumerativeCoder(static_cast<int>(y.ints.size()),
                          static_cast<int>(y.k))
      .encode(y);
}

inline PyramidPoint decode_index(const CodebookIndex& index) {
  return EnumerativeCoder(index.l, index.k).decode(index.value);
}

/// Exact decimal serialization used in CLI output and interchange.
inline std::string index_to_string(const CodebookIndex& index) {
  return index.value.str();
}

}  // namespace pvq
