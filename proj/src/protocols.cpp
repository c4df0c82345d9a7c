#include "nsbox/protocols.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "nsbox/analysis.hpp"

namespace nsbox {

namespace {

bool is_d_box(const NsBox& box) {
  return box.x_size() == 2 && box.y_size() == 2 && box.a_size() == box.b_size() &&
         box == make_d_box(box.a_size());
}

void require_d_box(const NsBox& box, const char* role) {
  if (!is_d_box(box)) {
    throw Error(Errc::invalid_argument, std::string(role) + " is not a d-box");
  }
}

// Identity rule: feed the external input straight through.
InputMap passthrough_map(int external) {
  InputMap m;
  m.table.resize(external);
  for (int v = 0; v < external; ++v) m.table[v] = v;
  return m;
}

// Second-stage rule: 0 while the first output is below `threshold`, the
// external input otherwise.
InputMap gated_map(int external, int first_out_size, int threshold) {
  InputMap m;
  m.reads = {0};
  m.table.resize(size_t(external) * first_out_size);
  for (int v = 0; v < external; ++v)
    for (int o = 0; o < first_out_size; ++o)
      m.table[size_t(v) * first_out_size + o] = o < threshold ? 0 : v;
  return m;
}

OutputMap raw_pair_output(int external, int tuple_total) {
  OutputMap m;
  m.out_size = tuple_total;
  m.table.resize(size_t(external) * tuple_total);
  for (int v = 0; v < external; ++v)
    for (int t = 0; t < tuple_total; ++t) m.table[size_t(v) * tuple_total + t] = t;
  return m;
}

Wiring crossed_round_wiring(int d, int alice_threshold, int bob_threshold) {
  Wiring w;
  w.x_size = w.y_size = 2;
  w.boxes = {make_d_box(d), make_d_box(d)};
  w.alice_order = {0, 1};
  w.bob_order = {1, 0};
  w.alice_inputs = {passthrough_map(2), gated_map(2, d, alice_threshold)};
  w.bob_inputs = {passthrough_map(2), gated_map(2, d, bob_threshold)};
  w.alice_output = raw_pair_output(2, d * d);
  w.bob_output = raw_pair_output(2, d * d);
  return w;
}

NsBox reduce_outputs_mod(const NsBox& box, int m) {
  BoxBuilder bld(box.x_size(), box.y_size(), m, m);
  for (int x = 0; x < box.x_size(); ++x)
    for (int y = 0; y < box.y_size(); ++y)
      for (int a = 0; a < box.a_size(); ++a)
        for (int b = 0; b < box.b_size(); ++b) {
          const Rational& v = box.at(x, y, a, b);
          if (!v.is_zero()) bld.add(x, y, a % m, b % m, v);
        }
  return std::move(bld).build();
}

}  // namespace

Wiring protocol1_wiring(const NsBox& box1, const NsBox& box2) {
  require_d_box(box1, "p1 first component");
  require_d_box(box2, "p1 second component");
  const int d1 = box1.a_size();
  const int d2 = box2.a_size();
  Wiring w;
  w.x_size = w.y_size = 2;
  w.boxes = {box1, box2};
  w.alice_order = {0, 1};
  w.bob_order = {0, 1};
  // Alice carries x into box 1 only when box 0 produced its top output.
  w.alice_inputs = {passthrough_map(2), gated_map(2, d1, d1 - 1)};
  w.bob_inputs = {passthrough_map(2), passthrough_map(2)};
  // Composite output a1*d1 + a0 ranges over [0, d1*d2).
  OutputMap out;
  out.out_size = d1 * d2;
  out.table.resize(size_t(2) * d1 * d2);
  for (int v = 0; v < 2; ++v)
    for (int t = 0; t < d1 * d2; ++t) {
      const int o0 = t / d2, o1 = t % d2;
      out.table[size_t(v) * d1 * d2 + t] = o1 * d1 + o0;
    }
  w.alice_output = out;
  w.bob_output = out;
  return w;
}

NsBox protocol2_box(const NsBox& box, int d1) {
  require_d_box(box, "p2 input");
  if (d1 < 1 || box.a_size() % d1 != 0) {
    throw Error(Errc::invalid_argument, "p2 target size " + std::to_string(d1) +
                                            " does not divide box size " +
                                            std::to_string(box.a_size()));
  }
  return reduce_outputs_mod(box, d1);
}

Protocol3Result protocol3_box(int d1, int n, int d2) {
  if (d1 < 1 || n < 1) throw Error(Errc::invalid_argument, "p3 needs d1 >= 1 and n >= 1");
  long long pow = 1;
  for (int i = 0; i < n; ++i) {
    pow *= d1;
    if (pow > 4096) {
      throw Error(Errc::invalid_argument, "p3 intermediate alphabet d1^n exceeds 4096");
    }
  }
  if (d2 < 1 || d2 > pow) {
    throw Error(Errc::invalid_argument, "p3 needs 1 <= d2 <= d1^n");
  }
  NsBox cur = make_d_box(d1);
  for (int i = 1; i < n; ++i) {
    cur = effective_box(protocol1_wiring(cur, make_d_box(d1)));
  }
  NsBox reduced = reduce_outputs_mod(cur, d2);
  Rational tv = total_variation(reduced, make_d_box(d2));
  return Protocol3Result{std::move(reduced), std::move(tv)};
}

Wiring protocol4_round_wiring(int d) {
  if (d < 2) throw Error(Errc::invalid_argument, "p4 needs d >= 2");
  return crossed_round_wiring(d, 1, 1);
}

Wiring variant_threshold_wiring(int d, int s) {
  if (d < 2) throw Error(Errc::invalid_argument, "threshold variant needs d >= 2");
  if (s < 1 || s >= d) {
    throw Error(Errc::invalid_argument,
                "threshold variant needs 1 <= s < d, got s = " + std::to_string(s));
  }
  return crossed_round_wiring(d, s, s);
}

Wiring variant_two_zero_wiring(int d) {
  if (d < 2) throw Error(Errc::invalid_argument, "two-zero variant needs d >= 2");
  return crossed_round_wiring(d, 1, 2);
}

int protocol4_output_value(int o1, int o2, int d) {
  if (d < 2 || o1 < 0 || o1 >= d || o2 < 0 || o2 >= d) {
    throw Error(Errc::invalid_argument, "p4 output rule: outputs must lie in [0,d)");
  }
  return o1 <= o2 ? o1 : o1 + 1;
}

Wiring round_wiring_by_name(const std::string& name, int d, int s) {
  if (name == "p4") return protocol4_round_wiring(d);
  if (name == "two-zero") return variant_two_zero_wiring(d);
  if (name == "threshold") return variant_threshold_wiring(d, s);
  throw Error(Errc::invalid_argument, "unknown round protocol '" + name +
                                          "' (want p4, two-zero, or threshold)");
}

namespace {

std::vector<int> failure_indices(const std::vector<FailurePair>& failures,
                                 const std::vector<int>& a_sizes,
                                 const std::vector<int>& b_sizes) {
  std::set<int> idx;
  for (const FailurePair& f : failures) {
    if (f.alice.size() != a_sizes.size() || f.bob.size() != b_sizes.size()) {
      throw Error(Errc::validation, "failure outcome arity does not match the box count");
    }
    for (size_t i = 0; i < f.alice.size(); ++i) {
      if (f.alice[i] < 0 || f.alice[i] >= a_sizes[i] || f.bob[i] < 0 || f.bob[i] >= b_sizes[i]) {
        throw Error(Errc::validation, "failure outcome digit out of range");
      }
    }
    const int ai = radix_encode(f.alice, a_sizes);
    const int bi = radix_encode(f.bob, b_sizes);
    if (ai != bi) {
      throw Error(Errc::validation,
                  "failure outcomes must name the same tuple for both parties");
    }
    idx.insert(ai);
  }
  return std::vector<int>(idx.begin(), idx.end());
}

}  // namespace

ConditionedRound condition_on_success(const Wiring& w,
                                      const std::vector<FailurePair>& failures) {
  if (w.x_size != 2 || w.y_size != 2) {
    throw Error(Errc::validation, "conditioning requires binary external inputs");
  }
  RoundTable rt = evaluate_exact(w);
  const RoundBlock& first = rt.blocks.front();
  const int a_total = first.a_total();
  const int b_total = first.b_total();
  if (a_total != b_total) {
    throw Error(Errc::validation, "conditioning requires equal tuple spaces");
  }
  const std::vector<int> fail = failure_indices(failures, first.a_sizes, first.b_sizes);
  std::vector<bool> is_fail(a_total, false);
  for (int t : fail) is_fail[t] = true;

  // The two local failure flags must agree with certainty, and the failure
  // mass must not depend on the external inputs.
  Rational failure_mass;
  bool have_mass = false;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const RoundBlock& blk = rt.block(x, y);
      Rational both = 0, split = 0;
      for (int ai = 0; ai < a_total; ++ai) {
        for (int bi = 0; bi < b_total; ++bi) {
          const Rational& v = blk.at(ai, bi);
          if (v.is_zero()) continue;
          if (is_fail[ai] && is_fail[bi]) both += v;
          else if (is_fail[ai] != is_fail[bi]) split += v;
        }
      }
      if (!split.is_zero()) {
        std::ostringstream os;
        os << "failure flags disagree with probability " << split << " at (x=" << x
           << ",y=" << y << "): the parties cannot halt without communicating";
        throw Error(Errc::validation, os.str());
      }
      if (!have_mass) {
        failure_mass = both;
        have_mass = true;
      } else if (both != failure_mass) {
        std::ostringstream os;
        os << "failure probability is " << both << " at (x=" << x << ",y=" << y << ") but "
           << failure_mass << " elsewhere";
        throw Error(Errc::validation, os.str());
      }
    }
  }
  if (failure_mass == 1) throw Error(Errc::validation, "failure is certain; nothing survives");
  const Rational success = Rational(1) - failure_mass;

  std::vector<int> surviving;
  for (int t = 0; t < a_total; ++t)
    if (!is_fail[t]) surviving.push_back(t);
  std::vector<int> compact(a_total, -1);
  for (size_t i = 0; i < surviving.size(); ++i) compact[surviving[i]] = int(i);

  // Relabel along the cycles of the (1,1) block, which must permute the
  // surviving tuples among themselves in cycles of one common length.
  OutputPermutation perm = extract_permutation(rt.block(1, 1));
  std::vector<int> labels(a_total, -1);
  {
    for (int t : surviving) {
      if (is_fail[perm.image[t]]) {
        throw Error(Errc::validation,
                    "surviving tuple " + std::to_string(t) + " maps into the failure set");
      }
    }
    int pair_width = 1;
    for (size_t i = 1; i < first.a_sizes.size(); ++i) pair_width *= first.a_sizes[i];
    std::vector<bool> seen(a_total, false);
    int cycle_len = -1;
    for (int start0 : surviving) {
      if (seen[start0]) continue;
      std::vector<int> cyc;
      int cur = start0;
      do {
        seen[cur] = true;
        cyc.push_back(cur);
        cur = perm.image[cur];
      } while (cur != start0);
      if (cycle_len < 0) {
        cycle_len = int(cyc.size());
      } else if (int(cyc.size()) != cycle_len) {
        throw Error(Errc::validation, "surviving cycles have lengths " +
                                          std::to_string(cycle_len) + " and " +
                                          std::to_string(cyc.size()) +
                                          "; a uniform relabeling needs one length");
      }
      int begin = cyc.front();
      for (int e : cyc) {
        if (e / pair_width == 0) {
          begin = e;
          break;
        }
      }
      int t = begin;
      for (size_t k = 0; k < cyc.size(); ++k) {
        labels[t] = int(k);
        t = perm.image[t];
      }
    }
    if (cycle_len < 0) throw Error(Errc::validation, "no surviving tuples");
  }
  const int out_size = *std::max_element(labels.begin(), labels.end()) + 1;

  const int n_surv = int(surviving.size());
  BoxBuilder raw_bld(2, 2, n_surv, n_surv);
  BoxBuilder final_bld(2, 2, out_size, out_size);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const RoundBlock& blk = rt.block(x, y);
      for (int ai : surviving) {
        for (int bi : surviving) {
          const Rational& v = blk.at(ai, bi);
          if (v.is_zero()) continue;
          const Rational cond = v / success;
          raw_bld.add(x, y, compact[ai], compact[bi], cond);
          final_bld.add(x, y, labels[ai], labels[bi], cond);
        }
      }
    }
  }

  return ConditionedRound{std::move(final_bld).build(), std::move(raw_bld).build(),
                          success, std::move(labels), std::move(surviving),
                          int(w.boxes.size())};
}

ConditionedRound condition_on_success(const Wiring& w) {
  RoundTable rt = evaluate_exact(w);
  OutputPermutation perm = extract_permutation(rt.block(1, 1));
  const std::vector<int>& a_sizes = rt.blocks.front().a_sizes;
  std::vector<FailurePair> failures;
  std::vector<int> digits;
  for (int t = 0; t < perm.size(); ++t) {
    if (perm.image[t] == t) {
      radix_decode(t, a_sizes, digits);
      failures.push_back(FailurePair{digits, digits});
    }
  }
  return condition_on_success(w, failures);
}

Rational expected_boxes_step_up(int d) {
  if (d < 2) throw Error(Errc::invalid_argument, "step-up cost needs d >= 2");
  return Rational(2LL * d * d, 1LL * d * d - 1);
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::p1: return "p1";
    case StepKind::p2: return "p2";
    case StepKind::p4: return "p4";
    case StepKind::threshold: return "threshold";
    case StepKind::two_zero: return "two-zero";
  }
  return "?";
}

namespace {

Rational step_factor(const ConversionStep& st) {
  return Rational(st.boxes_per_round) / st.success;
}

ConversionStep make_step(StepKind kind, int in, int out, int s) {
  ConversionStep st;
  st.kind = kind;
  st.in_size = in;
  st.out_size = out;
  st.s = s;
  switch (kind) {
    case StepKind::p1:
      st.boxes_per_round = 2;
      st.success = 1;
      break;
    case StepKind::p2:
      st.boxes_per_round = 1;
      st.success = 1;
      break;
    case StepKind::p4:
      st.boxes_per_round = 2;
      st.success = Rational(1LL * in * in - 1, 1LL * in * in);
      break;
    case StepKind::threshold:
      st.boxes_per_round = 2;
      st.success = Rational(1LL * in * in - 1LL * s * s, 1LL * in * in);
      break;
    case StepKind::two_zero:
      st.boxes_per_round = 2;
      st.success = Rational(1LL * in * in - 2, 1LL * in * in);
      break;
  }
  return st;
}

}  // namespace

ConversionPlan plan_conversion(int d_from, int d_to) {
  if (d_from < 1 || d_to < 1) {
    throw Error(Errc::invalid_argument, "conversion sizes must be >= 1");
  }
  ConversionPlan plan;
  plan.from = d_from;
  plan.to = d_to;
  plan.expected_consumption = 1;
  if (d_from == d_to) return plan;

  const long long cap = std::max({4LL, 1LL * d_from * d_from, 1LL * d_to * d_to});
  std::vector<ConversionStep> via(cap + 1);  // step that first reached each size
  std::vector<bool> seen(cap + 1, false);
  seen[d_from] = true;
  std::deque<int> queue{d_from};
  auto offer = [&](ConversionStep st) {
    if (st.out_size < 1 || st.out_size > cap || seen[st.out_size]) return;
    seen[st.out_size] = true;
    via[st.out_size] = st;
    queue.push_back(st.out_size);
  };
  while (!queue.empty() && !seen[d_to]) {
    const int c = queue.front();
    queue.pop_front();
    for (int e = 1; e < c; ++e)
      if (c % e == 0) offer(make_step(StepKind::p2, c, e, 0));
    if (c >= 2) {
      offer(make_step(StepKind::p4, c, c + 1, 0));
      for (int s = 2; s < c; ++s) offer(make_step(StepKind::threshold, c, c + s, s));
      if (1LL * c * c - 2 > c) offer(make_step(StepKind::two_zero, c, c * c - 2, 0));
      offer(make_step(StepKind::p1, c, c * c, 0));
    }
  }
  if (!seen[d_to]) {
    throw Error(Errc::no_plan, "no conversion chain from " + std::to_string(d_from) + " to " +
                                   std::to_string(d_to));
  }
  std::vector<ConversionStep> rev;
  for (int c = d_to; c != d_from;) {
    rev.push_back(via[c]);
    c = via[c].in_size;
  }
  plan.steps.assign(rev.rbegin(), rev.rend());
  for (const ConversionStep& st : plan.steps) {
    plan.expected_consumption *= step_factor(st);
  }
  return plan;
}

PlanExecution execute_plan(const ConversionPlan& plan) {
  NsBox cur = make_d_box(plan.from);
  for (const ConversionStep& st : plan.steps) {
    if (cur != make_d_box(st.in_size)) return PlanExecution{std::move(cur), false};
    switch (st.kind) {
      case StepKind::p1:
        cur = effective_box(protocol1_wiring(cur, cur));
        break;
      case StepKind::p2:
        cur = protocol2_box(cur, st.out_size);
        break;
      case StepKind::p4:
        cur = condition_on_success(protocol4_round_wiring(st.in_size)).box;
        break;
      case StepKind::threshold:
        cur = condition_on_success(variant_threshold_wiring(st.in_size, st.s)).box;
        break;
      case StepKind::two_zero:
        cur = condition_on_success(variant_two_zero_wiring(st.in_size)).box;
        break;
    }
    if (cur != make_d_box(st.out_size)) return PlanExecution{std::move(cur), false};
  }
  const bool exact = cur == make_d_box(plan.to);
  return PlanExecution{std::move(cur), exact};
}

}  // namespace nsbox
