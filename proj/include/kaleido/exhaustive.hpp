#pragma once

// Exhaustive search for kaleidoscopic difference families over Z_v, small v.
//
// Normalizations (each is a symmetry of the family predicate):
//   * every block is translated so that its position 0 holds 0;
//   * the family is scaled by a unit so that the first block has 1 at position 1;
//   * blocks after the first are listed in increasing lexicographic order.
// Positions are filled block by block; a partial assignment is rejected as soon
// as some color class would repeat a difference.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kaleido/algebra.hpp"
#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/schema.hpp"

namespace kaleido {

struct ExhaustiveOptions {
  bool existence_only = false;  // stop at the first solution
  unsigned jobs = 1;
  unsigned split_depth = 3;
};

struct ExhaustionCertificate {
  std::uint32_t v = 0;
  std::string schema;
  std::vector<std::string> normalizations;
  unsigned split_depth = 0;
  std::uint64_t subtrees = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t solutions = 0;
  bool exhausted = false;  // false only when stopped early in existence mode
  std::optional<std::vector<Block>> witness;
};

namespace detail {

class KdfEnumerator {
 public:
  static constexpr std::uint32_t kMaxV = 19;

  KdfEnumerator(std::uint32_t v, const Schema& s, std::size_t t) : v_(v), k_(s.k), t_(t), b_(s.b()) {
    pair_line_ = s.pair_line();
    for (std::size_t blk = 0; blk < t; ++blk)
      for (unsigned pos = 0; pos < k_; ++pos) {
        int fixed = -1;
        if (pos == 0) fixed = 0;
        if (blk == 0 && pos == 1) fixed = 1;
        slots_.push_back({blk, pos, fixed});
      }
  }

  struct State {
    std::vector<std::uint8_t> vals;     // t*k
    std::vector<std::uint32_t> used;    // per color, bit d set when difference d is taken
    std::vector<std::uint8_t> eq_prev;  // block equals previous block on the prefix so far
  };

  State initial_state() const {
    return {std::vector<std::uint8_t>(t_ * k_, 0), std::vector<std::uint32_t>(b_, 0), std::vector<std::uint8_t>(t_, 1)};
  }

  // Applies value x at slot s. Returns false (leaving `st.used` unspecified) on conflict.
  bool place(State& st, std::size_t s, std::uint32_t x) const {
    const auto& sl = slots_[s];
    const auto base = sl.block * k_;
    for (unsigned p = 0; p < sl.pos; ++p) {
      std::uint32_t d = (x + v_ - st.vals[base + p]) % v_;
      if (d == 0) return false;
      auto c = pair_line_[p][sl.pos];
      std::uint32_t bits = (1u << d) | (1u << (v_ - d));
      if (st.used[c] & bits) return false;
      st.used[c] |= bits;
    }
    st.vals[base + sl.pos] = static_cast<std::uint8_t>(x);
    return true;
  }

  // Candidate range for slot s given lexicographic ordering of blocks 1..t-1.
  std::pair<std::uint32_t, std::uint32_t> range(const State& st, std::size_t s) const {
    const auto& sl = slots_[s];
    if (sl.fixed >= 0) return {static_cast<std::uint32_t>(sl.fixed), static_cast<std::uint32_t>(sl.fixed) + 1};
    std::uint32_t lo = 1;
    if (sl.block >= 2 && st.eq_prev[sl.block]) lo = st.vals[(sl.block - 1) * k_ + sl.pos];
    return {lo, v_};
  }

  void update_eq(State& st, std::size_t s) const {
    const auto& sl = slots_[s];
    if (sl.block >= 2 && sl.pos > 0)
      st.eq_prev[sl.block] = st.eq_prev[sl.block] && st.vals[sl.block * k_ + sl.pos] == st.vals[(sl.block - 1) * k_ + sl.pos];
  }

  std::size_t slot_count() const { return slots_.size(); }
  std::size_t first_free() const {
    std::size_t s = 0;
    while (s < slots_.size() && slots_[s].fixed >= 0) ++s;
    return s;
  }
  bool is_fixed(std::size_t s) const { return slots_[s].fixed >= 0; }

  std::vector<Block> to_blocks(const State& st) const {
    std::vector<Block> out(t_);
    for (std::size_t blk = 0; blk < t_; ++blk)
      for (unsigned pos = 0; pos < k_; ++pos) out[blk].push_back(Element{st.vals[blk * k_ + pos]});
    return out;
  }

 private:
  struct Slot {
    std::size_t block;
    unsigned pos;
    int fixed;
  };
  std::uint32_t v_;
  unsigned k_;
  std::size_t t_;
  std::size_t b_;
  std::vector<std::vector<unsigned>> pair_line_;
  std::vector<Slot> slots_;
};

}  // namespace detail

inline ExhaustionCertificate exhaustive_nonexistence(std::uint32_t v, SchemaPtr schema, const ExhaustiveOptions& opt = {}) {
  if (v < 7 || v > detail::KdfEnumerator::kMaxV || !numth::is_prime(v))
    throw Error(Errc::UnsupportedOrder, "exhaustive search supports primes 7 <= v <= 19, got " + std::to_string(v));
  auto t = schema->blocks_for_order(v);
  if (!t || *t == 0) throw Error(Errc::UnsupportedOrder, "no integral block count for v = " + std::to_string(v));
  if (schema->k > v) throw Error(Errc::UnsupportedOrder, "block larger than the point set");

  const detail::KdfEnumerator en(v, *schema, *t);
  using State = detail::KdfEnumerator::State;

  ExhaustionCertificate cert;
  cert.v = v;
  cert.schema = schema->name;
  cert.split_depth = opt.split_depth;
  cert.normalizations = {"translate each block so position 0 holds 0",
                         "scale by a unit so the first block holds 1 at position 1",
                         "blocks after the first in increasing lexicographic order"};

  // Phase 1: enumerate subtree roots after `split_depth` free assignments.
  struct Root {
    State st;
    std::size_t slot;
  };
  std::vector<Root> roots;
  std::uint64_t prefix_nodes = 0;
  {
    std::function<void(State&, std::size_t, unsigned)> expand = [&](State& st, std::size_t s, unsigned depth) {
      ++prefix_nodes;
      if (s == en.slot_count() || (depth == opt.split_depth && !en.is_fixed(s))) {
        roots.push_back({st, s});
        return;
      }
      auto [lo, hi] = en.range(st, s);
      for (auto x = lo; x < hi; ++x) {
        State next = st;
        if (!en.place(next, s, x)) continue;
        en.update_eq(next, s);
        expand(next, s + 1, depth + (en.is_fixed(s) ? 0 : 1));
      }
    };
    State st = en.initial_state();
    expand(st, 0, 0);
  }
  cert.subtrees = roots.size();

  // Phase 2: independent depth-first searches.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::vector<std::uint64_t> nodes(roots.size(), 0), sols(roots.size(), 0);
  std::vector<std::optional<std::vector<Block>>> wit(roots.size());
  std::atomic<bool> stopped_early{false};

  auto worker = [&] {
    for (;;) {
      auto r = next.fetch_add(1);
      if (r >= roots.size()) return;
      if (opt.existence_only && r > best.load()) {
        stopped_early = true;
        continue;
      }
      std::uint64_t n = 0, found = 0;
      bool abort = false;
      std::function<void(State&, std::size_t)> dfs = [&](State& st, std::size_t s) {
        ++n;
        if (abort) return;
        if (s == en.slot_count()) {
          ++found;
          if (!wit[r]) wit[r] = en.to_blocks(st);
          if (opt.existence_only) abort = true;
          return;
        }
        if (opt.existence_only && (n & 0xFFFF) == 0 && r > best.load()) {
          abort = true;
          stopped_early = true;
          return;
        }
        auto [lo, hi] = en.range(st, s);
        auto saved_used = st.used;
        auto saved_eq = st.eq_prev;
        for (auto x = lo; x < hi && !abort; ++x) {
          if (en.place(st, s, x)) {
            en.update_eq(st, s);
            dfs(st, s + 1);
          }
          st.used = saved_used;
          st.eq_prev = saved_eq;
        }
      };
      State st = roots[r].st;
      dfs(st, roots[r].slot);
      nodes[r] = n;
      sols[r] = found;
      if (found > 0) {
        auto cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };
  if (opt.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < opt.jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  cert.nodes_visited = prefix_nodes;
  for (auto n : nodes) cert.nodes_visited += n;
  for (auto s : sols) cert.solutions += s;
  for (auto& w : wit)
    if (w) {
      cert.witness = w;
      break;
    }
  cert.exhausted = !(opt.existence_only && (stopped_early || cert.solutions > 0));
  return cert;
}

}  // namespace kaleido
