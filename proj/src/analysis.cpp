#include "nsbox/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nsbox/analysis_util.hpp"

namespace nsbox {

bool OutputPermutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image[i] != i) return false;
  return true;
}

OutputPermutation extract_permutation(const RoundBlock& blk) {
  const int n = blk.a_total();
  const int m = blk.b_total();
  if (n != m) {
    throw Error(Errc::not_permutation, "block is not square: " + std::to_string(n) + " rows, " +
                                           std::to_string(m) + " columns");
  }
  OutputPermutation perm;
  perm.image.assign(n, -1);
  std::vector<int> col_hits(n, 0);
  const Rational* weight = nullptr;
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < m; ++b) {
      if (blk.at(a, b).is_zero()) continue;
      if (found >= 0) {
        throw Error(Errc::not_permutation,
                    "row " + std::to_string(a) + " has more than one nonzero entry");
      }
      found = b;
    }
    if (found < 0) {
      throw Error(Errc::not_permutation, "row " + std::to_string(a) + " is all zero");
    }
    if (weight == nullptr) {
      weight = &blk.at(a, found);
    } else if (blk.at(a, found) != *weight) {
      throw Error(Errc::not_permutation, "row " + std::to_string(a) +
                                             " carries weight " + blk.at(a, found).str() +
                                             ", others carry " + weight->str());
    }
    perm.image[a] = found;
    col_hits[found]++;
  }
  for (int b = 0; b < m; ++b) {
    if (col_hits[b] != 1) {
      throw Error(Errc::not_permutation,
                  "column " + std::to_string(b) + " is hit " + std::to_string(col_hits[b]) +
                      " times");
    }
  }
  return perm;
}

std::vector<std::vector<int>> cycles(const OutputPermutation& p) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(p.size(), false);
  for (int start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    int cur = start;
    do {
      seen[cur] = true;
      cyc.push_back(cur);
      cur = p.image[cur];
    } while (cur != start);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> cycle_structure(const OutputPermutation& p) {
  std::vector<int> lengths;
  for (const auto& c : cycles(p)) lengths.push_back(int(c.size()));
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<int> derive_cycle_labeling(const OutputPermutation& p, int pair_width) {
  if (pair_width < 1) throw Error(Errc::invalid_argument, "pair_width must be positive");
  std::vector<int> labels(p.size(), -1);
  int cycle_len = -1;
  for (const auto& cyc : cycles(p)) {
    if (cyc.size() == 1) continue;
    if (cycle_len < 0) {
      cycle_len = int(cyc.size());
    } else if (int(cyc.size()) != cycle_len) {
      throw Error(Errc::validation, "non-trivial cycles have different lengths (" +
                                        std::to_string(cycle_len) + " and " +
                                        std::to_string(cyc.size()) + ")");
    }
    // cyc starts at its smallest element; prefer the smallest element whose
    // leading digit is 0.
    int start = cyc.front();
    for (int e : cyc) {
      if (e / pair_width == 0) {
        start = e;
        break;
      }
    }
    int cur = start;
    for (size_t k = 0; k < cyc.size(); ++k) {
      labels[cur] = int(k);
      cur = p.image[cur];
    }
  }
  return labels;
}

namespace {

bool columns_match(const NsBox& cand, const NsBox& tgt, const std::vector<int>& ga, int b,
                   int bp) {
  for (int x = 0; x < cand.x_size(); ++x)
    for (int y = 0; y < cand.y_size(); ++y)
      for (int a = 0; a < cand.a_size(); ++a)
        if (cand.at(x, y, a, b) != tgt.at(x, y, ga[a], bp)) return false;
  return true;
}

bool assign_columns(const NsBox& cand, const NsBox& tgt, const std::vector<int>& ga, int b,
                    std::vector<int>& gb, std::vector<bool>& used) {
  if (b == cand.b_size()) return true;
  for (int bp = 0; bp < tgt.b_size(); ++bp) {
    if (used[bp] || !columns_match(cand, tgt, ga, b, bp)) continue;
    used[bp] = true;
    gb[b] = bp;
    if (assign_columns(cand, tgt, ga, b + 1, gb, used)) return true;
    used[bp] = false;
  }
  return false;
}

}  // namespace

std::optional<OutputRelabeling> derive_relabeling(const NsBox& candidate, const NsBox& target,
                                                  long long budget) {
  if (candidate.x_size() != target.x_size() || candidate.y_size() != target.y_size() ||
      candidate.a_size() != target.a_size() || candidate.b_size() != target.b_size()) {
    throw Error(Errc::shape_mismatch, "relabeling needs identical alphabets on both boxes");
  }
  const int n = candidate.a_size();
  long long perms = 1;
  for (int i = 2; i <= n; ++i) {
    perms *= i;
    if (perms > budget) {
      throw Error(Errc::budget_exceeded, "relabeling search over " + std::to_string(n) +
                                             "! output bijections exceeds budget " +
                                             std::to_string(budget));
    }
  }
  std::vector<int> ga(n);
  std::iota(ga.begin(), ga.end(), 0);
  do {
    std::vector<int> gb(candidate.b_size(), -1);
    std::vector<bool> used(target.b_size(), false);
    if (assign_columns(candidate, target, ga, 0, gb, used)) {
      return OutputRelabeling{ga, gb};
    }
  } while (std::next_permutation(ga.begin(), ga.end()));
  return std::nullopt;
}

NsBox transpose_parties(const NsBox& box) {
  BoxBuilder bld(box.y_size(), box.x_size(), box.b_size(), box.a_size());
  for (int x = 0; x < box.x_size(); ++x)
    for (int y = 0; y < box.y_size(); ++y)
      for (int a = 0; a < box.a_size(); ++a)
        for (int b = 0; b < box.b_size(); ++b) bld.set(y, x, b, a, box.at(x, y, a, b));
  return std::move(bld).build();
}

ReducedBox delete_deterministic_inputs(const NsBox& box) {
  auto deterministic = [](const std::vector<Rational>& dist) {
    for (const Rational& v : dist)
      if (!v.is_zero() && v != 1) return false;
    return true;
  };
  std::vector<int> kept_x, kept_y;
  for (int x = 0; x < box.x_size(); ++x)
    if (!deterministic(marginal(box, Party::alice, x))) kept_x.push_back(x);
  for (int y = 0; y < box.y_size(); ++y)
    if (!deterministic(marginal(box, Party::bob, y))) kept_y.push_back(y);
  if (kept_x.empty()) kept_x.push_back(0);
  if (kept_y.empty()) kept_y.push_back(0);
  BoxBuilder bld(int(kept_x.size()), int(kept_y.size()), box.a_size(), box.b_size());
  for (size_t xi = 0; xi < kept_x.size(); ++xi)
    for (size_t yi = 0; yi < kept_y.size(); ++yi)
      for (int a = 0; a < box.a_size(); ++a)
        for (int b = 0; b < box.b_size(); ++b)
          bld.set(int(xi), int(yi), a, b, box.at(kept_x[xi], kept_y[yi], a, b));
  return ReducedBox{std::move(bld).build(), std::move(kept_x), std::move(kept_y)};
}

namespace {

// One party's per-input output maps for the equivalence search: an odometer
// over tuples of permutations, lex order.
class PermTuple {
 public:
  PermTuple(int count, int size) : perms_(count) {
    for (auto& p : perms_) {
      p.resize(size);
      std::iota(p.begin(), p.end(), 0);
    }
  }
  const std::vector<std::vector<int>>& get() const { return perms_; }
  bool advance() {
    for (int i = int(perms_.size()) - 1; i >= 0; --i) {
      if (std::next_permutation(perms_[i].begin(), perms_[i].end())) return true;
    }
    return false;
  }

 private:
  std::vector<std::vector<int>> perms_;
};

}  // namespace

std::optional<BoxEquivalence> boxes_equivalent(const NsBox& box1, const NsBox& box2,
                                               long long budget) {
  ReducedBox r1 = delete_deterministic_inputs(box1);
  ReducedBox r2 = delete_deterministic_inputs(box2);

  long long spent = 0;
  for (int swap = 0; swap < 2; ++swap) {
    const NsBox t1 = swap ? transpose_parties(r1.box) : r1.box;
    const NsBox& t2 = r2.box;
    if (t1.x_size() != t2.x_size() || t1.y_size() != t2.y_size() ||
        t1.a_size() != t2.a_size() || t1.b_size() != t2.b_size()) {
      continue;
    }
    const int X = t1.x_size(), Y = t1.y_size(), A = t1.a_size(), B = t1.b_size();

    std::vector<int> sigma(X);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      std::vector<int> tau(Y);
      std::iota(tau.begin(), tau.end(), 0);
      do {
        PermTuple ga(X, A);
        bool more = true;
        while (more) {
          if (++spent > budget) {
            throw Error(Errc::budget_exceeded,
                        "equivalence search exceeds budget " + std::to_string(budget));
          }
          // For this (swap, sigma, tau, ga) find per-input Bob maps by
          // column matching, one y at a time, backtracking inside each y.
          std::vector<std::vector<int>> gb(Y);
          bool ok = true;
          for (int y = 0; y < Y && ok; ++y) {
            std::vector<int> map(B, -1);
            std::vector<bool> used(B, false);
            // lex-first matching over columns of input y
            auto match = [&](auto&& self, int b) -> bool {
              if (b == B) return true;
              for (int bp = 0; bp < B; ++bp) {
                if (used[bp]) continue;
                bool fits = true;
                for (int x = 0; x < X && fits; ++x)
                  for (int a = 0; a < A && fits; ++a)
                    fits = t1.at(x, y, a, b) ==
                           t2.at(sigma[x], tau[y], ga.get()[x][a], bp);
                if (!fits) continue;
                used[bp] = true;
                map[b] = bp;
                if (self(self, b + 1)) return true;
                used[bp] = false;
              }
              return false;
            };
            ok = match(match, 0);
            if (ok) gb[y] = std::move(map);
          }
          if (ok) {
            BoxEquivalence eq;
            eq.party_swap = swap != 0;
            eq.alice_kept_inputs_1 = swap ? r1.kept_y : r1.kept_x;
            eq.bob_kept_inputs_1 = swap ? r1.kept_x : r1.kept_y;
            eq.alice_kept_inputs_2 = r2.kept_x;
            eq.bob_kept_inputs_2 = r2.kept_y;
            eq.alice_input_perm = sigma;
            eq.bob_input_perm = tau;
            eq.alice_output_maps = ga.get();
            eq.bob_output_maps = std::move(gb);
            return eq;
          }
          more = ga.advance();
        }
      } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return std::nullopt;
}

Rational total_variation(const NsBox& box1, const NsBox& box2) {
  if (box1.x_size() != box2.x_size() || box1.y_size() != box2.y_size() ||
      box1.a_size() != box2.a_size() || box1.b_size() != box2.b_size()) {
    throw Error(Errc::shape_mismatch, "total variation needs identical alphabets");
  }
  Rational worst = 0;
  for (int x = 0; x < box1.x_size(); ++x) {
    for (int y = 0; y < box1.y_size(); ++y) {
      Rational sum = 0;
      for (int a = 0; a < box1.a_size(); ++a)
        for (int b = 0; b < box1.b_size(); ++b)
          sum += (box1.at(x, y, a, b) - box2.at(x, y, a, b)).abs();
      sum /= 2;
      if (sum > worst) worst = sum;
    }
  }
  return worst;
}

Rational game_win_probability(const NsBox& box) {
  if (box.x_size() != 2 || box.y_size() != 2) {
    throw Error(Errc::invalid_argument, "game requires binary inputs");
  }
  if (box.a_size() != box.b_size()) {
    throw Error(Errc::invalid_argument, "game requires equal output alphabets");
  }
  const int d = box.a_size();
  Rational worst = 1;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Rational win = 0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          if ((b - a + d) % d == (x * y) % d) win += box.at(x, y, a, b);
      if (win < worst) worst = win;
    }
  }
  return worst;
}

}  // namespace nsbox
