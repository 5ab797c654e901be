#pragma once

// Subsets of [0,n], packets and gap counts.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace bruhat {

/// Largest vertex label a VertexSet can hold.
inline constexpr int kMaxVertex = 62;

/// A finite subset of [0, kMaxVertex], stored as a bitmask.
///
/// Iteration yields elements in increasing order. The total order `<=>` sorts
/// by cardinality first and then lexicographically on the increasing element
/// sequences, which is the canonical order used for chains and tensor terms.
class VertexSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr VertexSet() = default;
  constexpr VertexSet(std::initializer_list<int> elements) {
    for (int e : elements) bits_ |= bit_of(e);
  }
  explicit VertexSet(const std::vector<int>& elements) {
    for (int e : elements) bits_ |= bit_of(e);
  }

  static constexpr VertexSet from_bits(std::uint64_t bits) {
    VertexSet s;
    s.bits_ = bits;
    return s;
  }
  /// The interval [p, q]; empty when q < p.
  static constexpr VertexSet interval(int p, int q) {
    VertexSet s;
    for (int v = p; v <= q; ++v) s.bits_ |= bit_of(v);
    return s;
  }
  /// [0, n].
  static constexpr VertexSet full(int n) { return interval(0, n); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int v) const {
    return v >= 0 && v <= kMaxVertex && ((bits_ >> v) & 1u);
  }
  constexpr bool is_subset_of(VertexSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool is_disjoint_from(VertexSet other) const {
    return (bits_ & other.bits_) == 0;
  }
  constexpr int min() const { return std::countr_zero(bits_); }
  constexpr int max() const { return 63 - std::countl_zero(bits_); }

  constexpr VertexSet with(int v) const { return from_bits(bits_ | bit_of(v)); }
  constexpr VertexSet without(int v) const {
    return from_bits(bits_ & ~bit_of(v));
  }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> elements() const { return {begin(), end()}; }

  /// |{x in *this : x > a}|
  constexpr int count_greater(int a) const {
    if (a >= 63) return 0;
    if (a < 0) return size();
    return std::popcount(bits_ >> (a + 1));
  }
  /// |{x in *this : x < a}|
  constexpr int count_less(int a) const {
    if (a <= 0) return 0;
    if (a >= 64) return size();
    return std::popcount(bits_ & ((std::uint64_t{1} << a) - 1));
  }

  /// The j-th smallest element (0-based).
  constexpr int nth(int j) const {
    std::uint64_t rest = bits_;
    for (int k = 0; k < j; ++k) rest &= rest - 1;
    return std::countr_zero(rest);
  }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  /// Set difference.
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend constexpr VertexSet operator^(VertexSet a, VertexSet b) {
    return from_bits(a.bits_ ^ b.bits_);
  }

  friend constexpr bool operator==(VertexSet, VertexSet) = default;

  /// Lexicographic comparison of the increasing element sequences.
  /// For sets of equal size the smaller set is the one owning the smallest
  /// element of the symmetric difference.
  friend constexpr bool lex_less(VertexSet a, VertexSet b) {
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    const std::uint64_t low = diff & (~diff + 1);
    // A proper prefix is lexicographically smaller.
    if ((a.bits_ & low) == 0 && (a.bits_ & ~(low - 1)) == 0) return true;
    if ((b.bits_ & low) == 0 && (b.bits_ & ~(low - 1)) == 0) return false;
    return (a.bits_ & low) != 0;
  }

  friend constexpr std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    return lex_less(a, b) ? std::strong_ordering::less
                          : std::strong_ordering::greater;
  }

  /// "012" when all labels are single digits, "{0,1,12}" otherwise, "∅" when
  /// empty.
  std::string to_string() const {
    if (empty()) return "∅";
    std::string out;
    if (max() < 10) {
      for (int v : *this) out.push_back(static_cast<char>('0' + v));
      return out;
    }
    out = "{";
    bool first = true;
    for (int v : *this) {
      if (!first) out += ",";
      out += std::to_string(v);
      first = false;
    }
    return out + "}";
  }

 private:
  static constexpr std::uint64_t bit_of(int v) {
    if (v < 0 || v > kMaxVertex) {
      throw std::out_of_range("vertex label outside [0, 62]: " +
                              std::to_string(v));
    }
    return std::uint64_t{1} << v;
  }

  std::uint64_t bits_ = 0;
};

struct VertexSetHash {
  std::size_t operator()(VertexSet s) const noexcept {
    std::uint64_t x = s.bits() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

/// Order-preserving relabelling of `s` along [0,n] \ removed -> [0, n-|removed|].
constexpr VertexSet compress(VertexSet s, VertexSet removed) {
  std::uint64_t out = 0;
  int target = 0;
  for (int v = 0; v <= kMaxVertex; ++v) {
    if (removed.contains(v)) continue;
    if (s.contains(v)) out |= std::uint64_t{1} << target;
    ++target;
  }
  return VertexSet::from_bits(out);
}

/// Relabels `s` (a subset of [0, |support|-1]) onto the elements of `support`.
constexpr VertexSet expand(VertexSet s, VertexSet support) {
  std::uint64_t out = 0;
  int j = 0;
  for (int v : support) {
    if (s.contains(j)) out |= std::uint64_t{1} << v;
    ++j;
  }
  return VertexSet::from_bits(out);
}

/// All k-element subsets of `ground`, in lexicographic order.
inline std::vector<VertexSet> subsets_of_size(VertexSet ground, int k) {
  std::vector<VertexSet> out;
  const std::vector<int> g = ground.elements();
  const int m = static_cast<int>(g.size());
  if (k < 0 || k > m) return out;
  std::vector<int> idx(k);
  for (int j = 0; j < k; ++j) idx[j] = j;
  while (true) {
    VertexSet s;
    for (int j : idx) s = s.with(g[j]);
    out.push_back(s);
    int j = k - 1;
    while (j >= 0 && idx[j] == m - k + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

/// All nonempty subsets of `ground`, in canonical (size, lex) order.
inline std::vector<VertexSet> nonempty_subsets(VertexSet ground) {
  std::vector<VertexSet> out;
  for (int k = 1; k <= ground.size(); ++k) {
    auto layer = subsets_of_size(ground, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// The packet of K: the |K| subsets K \ k, lexicographically ordered.
struct Packet {
  VertexSet parent;
  std::vector<VertexSet> members;
};

inline Packet packet(VertexSet k) {
  if (k.empty()) throw std::invalid_argument("packet of the empty set");
  Packet p{k, {}};
  const std::vector<int> elems = k.elements();
  // Removing a larger element gives a lexicographically smaller subset.
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    p.members.push_back(k.without(*it));
  }
  return p;
}

/// Position of `member` in packet(parent), or -1.
constexpr int packet_position(VertexSet parent, VertexSet member) {
  if (!member.is_subset_of(parent) || member.size() + 1 != parent.size()) {
    return -1;
  }
  const int removed = (parent - member).min();
  return parent.count_greater(removed);
}

enum class Segment { kBeginning, kEnding, kNeither };

/// Classifies a set of packet positions (bit j = members[j]) of a packet with
/// `length` members. The empty and the full selection count as beginning.
constexpr Segment classify_segment(std::uint64_t positions, int length) {
  const int c = std::popcount(positions);
  const std::uint64_t prefix = c >= 64 ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << c) - 1;
  if (positions == prefix) return Segment::kBeginning;
  if (positions == (prefix << (length - c))) return Segment::kEnding;
  return Segment::kNeither;
}

/// Classifies subset ∩ packet.members.
inline Segment is_segment(const std::vector<VertexSet>& subset,
                          const Packet& p) {
  std::uint64_t positions = 0;
  for (VertexSet s : subset) {
    const int pos = packet_position(p.parent, s);
    if (pos >= 0) positions |= std::uint64_t{1} << pos;
  }
  return classify_segment(positions, static_cast<int>(p.members.size()));
}

}  // namespace bruhat
