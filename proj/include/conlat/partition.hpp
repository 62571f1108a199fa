#ifndef CONLAT_PARTITION_HPP
#define CONLAT_PARTITION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "conlat/errors.hpp"

namespace conlat {

using Idx = int;

// A partition of {0,...,n-1} in canonical form: rep[i] is the least element
// of the block containing i.  Two partitions are equal iff their rep vectors
// are equal.
class Partition {
 public:
  Partition() = default;

  explicit Partition(int n) : rep_(n) {
    std::iota(rep_.begin(), rep_.end(), 0);
  }

  static Partition identity(int n) { return Partition(n); }

  static Partition total(int n) {
    Partition p(n);
    std::fill(p.rep_.begin(), p.rep_.end(), 0);
    return p;
  }

  static Partition from_blocks(int n, const std::vector<std::vector<Idx>>& blocks) {
    Partition p(n);
    for (const auto& blk : blocks)
      for (size_t i = 1; i < blk.size(); ++i) p.merge_raw(blk[0], blk[i]);
    p.canonicalize();
    return p;
  }

  int size() const { return static_cast<int>(rep_.size()); }

  Idx rep(Idx i) const { return rep_[i]; }

  bool related(Idx a, Idx b) const { return rep_[a] == rep_[b]; }

  bool is_identity() const {
    for (Idx i = 0; i < size(); ++i)
      if (rep_[i] != i) return false;
    return true;
  }

  bool is_total() const {
    for (Idx i = 0; i < size(); ++i)
      if (rep_[i] != 0) return false;
    return true;
  }

  int block_count() const {
    int c = 0;
    for (Idx i = 0; i < size(); ++i)
      if (rep_[i] == i) ++c;
    return c;
  }

  // Blocks ordered by least element, elements ascending.
  std::vector<std::vector<Idx>> blocks() const {
    std::map<Idx, std::vector<Idx>> by_rep;
    for (Idx i = 0; i < size(); ++i) by_rep[rep_[i]].push_back(i);
    std::vector<std::vector<Idx>> out;
    out.reserve(by_rep.size());
    for (auto& [r, blk] : by_rep) out.push_back(std::move(blk));
    return out;
  }

  // Mutation used while building; call canonicalize() before comparisons.
  void merge_raw(Idx a, Idx b) {
    Idx ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (ra > rb) std::swap(ra, rb);
    rep_[rb] = ra;
  }

  void canonicalize() {
    for (Idx i = 0; i < size(); ++i) rep_[i] = find(i);
  }

  // p refines q (p <= q in the congruence order) iff every p-block lies
  // inside a q-block.
  bool refines(const Partition& q) const {
    for (Idx i = 0; i < size(); ++i)
      if (q.rep_[rep_[i]] != q.rep_[i]) return false;
    return true;
  }

  // Common refinement: blocks are the nonempty intersections.
  Partition meet(const Partition& other) const {
    Partition out(size());
    std::map<std::pair<Idx, Idx>, Idx> seen;
    for (Idx i = 0; i < size(); ++i) {
      auto key = std::make_pair(rep_[i], other.rep_[i]);
      auto it = seen.find(key);
      if (it == seen.end())
        seen.emplace(key, i);
      else
        out.merge_raw(it->second, i);
    }
    out.canonicalize();
    return out;
  }

  // Join in the partition lattice: transitive closure of the union.
  Partition join(const Partition& other) const {
    Partition out(size());
    for (Idx i = 0; i < size(); ++i) {
      out.merge_raw(i, rep_[i]);
      out.merge_raw(i, other.rep_[i]);
    }
    out.canonicalize();
    return out;
  }

  bool operator==(const Partition& other) const { return rep_ == other.rep_; }
  bool operator!=(const Partition& other) const { return rep_ != other.rep_; }
  bool operator<(const Partition& other) const { return rep_ < other.rep_; }

  const std::vector<Idx>& reps() const { return rep_; }

  // Canonical block string, e.g. "(0 x y z)(u v w)(t)(1)".
  std::string to_string(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    for (const auto& blk : blocks()) {
      os << '(';
      for (size_t i = 0; i < blk.size(); ++i) {
        if (i) os << ' ';
        os << labels[blk[i]];
      }
      os << ')';
    }
    return os.str();
  }

  static Partition parse(const std::string& text, const std::vector<std::string>& labels) {
    std::map<std::string, Idx> index;
    for (Idx i = 0; i < static_cast<Idx>(labels.size()); ++i) index[labels[i]] = i;
    Partition p(static_cast<int>(labels.size()));
    size_t pos = 0;
    std::vector<bool> seen(labels.size(), false);
    while (pos < text.size()) {
      if (text[pos] != '(') throw validation_error("partition string: expected '('");
      size_t close = text.find(')', pos);
      if (close == std::string::npos) throw validation_error("partition string: missing ')'");
      std::istringstream is(text.substr(pos + 1, close - pos - 1));
      std::string tok;
      Idx first = -1;
      while (is >> tok) {
        auto it = index.find(tok);
        if (it == index.end()) throw validation_error("partition string: unknown label " + tok);
        if (seen[it->second]) throw validation_error("partition string: repeated label " + tok);
        seen[it->second] = true;
        if (first < 0)
          first = it->second;
        else
          p.merge_raw(first, it->second);
      }
      pos = close + 1;
    }
    for (size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw validation_error("partition string: label " + labels[i] + " missing");
    p.canonicalize();
    return p;
  }

 private:
  Idx find(Idx i) {
    while (rep_[i] != i) {
      rep_[i] = rep_[rep_[i]];
      i = rep_[i];
    }
    return i;
  }

  std::vector<Idx> rep_;
};

// All partitions of an n-set, in a deterministic order (restricted growth
// strings).  Used by brute-force oracles; n should stay small.
inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<Idx> rgs(n, 0);
  // rgs[i] = block number of i; rgs[0] = 0; rgs[i] <= max(rgs[0..i-1]) + 1.
  auto emit = [&]() {
    Partition p(n);
    std::map<Idx, Idx> first_of_block;
    for (Idx i = 0; i < n; ++i) {
      auto it = first_of_block.find(rgs[i]);
      if (it == first_of_block.end())
        first_of_block.emplace(rgs[i], i);
      else
        p.merge_raw(it->second, i);
    }
    p.canonicalize();
    out.push_back(std::move(p));
  };
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) {
      emit();
      return;
    }
    for (int b = 0; b <= mx + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(mx, b));
    }
  };
  if (n == 0) return out;
  rec(1, 0);
  return out;
}

}  // namespace conlat

#endif  // CONLAT_PARTITION_HPP
