#include "nsbox/wiring.hpp"

#include <algorithm>
#include <sstream>

namespace nsbox {

int radix_total(const std::vector<int>& sizes) {
  int t = 1;
  for (int s : sizes) t *= s;
  return t;
}

void radix_decode(int idx, const std::vector<int>& sizes, std::vector<int>& digits) {
  digits.resize(sizes.size());
  for (int i = int(sizes.size()) - 1; i >= 0; --i) {
    digits[i] = idx % sizes[i];
    idx /= sizes[i];
  }
}

int radix_encode(const std::vector<int>& digits, const std::vector<int>& sizes) {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + digits[i];
  return idx;
}

namespace {

void validation_error(const std::string& msg) { throw Error(Errc::validation, msg); }

void check_order(const std::vector<int>& order, size_t n, const char* who) {
  if (order.size() != n) {
    validation_error(std::string(who) + " order has " + std::to_string(order.size()) +
                     " entries for " + std::to_string(n) + " boxes");
  }
  std::vector<bool> seen(n, false);
  for (int i : order) {
    if (i < 0 || size_t(i) >= n || seen[i]) {
      validation_error(std::string(who) + " order is not a permutation of the box indices");
    }
    seen[i] = true;
  }
}

// Output alphabet of the box queried at `stage` of `order`, as seen by the
// party (Alice sees a_size, Bob b_size).
int stage_out_size(const Wiring& w, const std::vector<int>& order, int stage, bool alice) {
  const NsBox& box = w.boxes[order[stage]];
  return alice ? box.a_size() : box.b_size();
}

void check_input_maps(const Wiring& w, bool alice) {
  const char* who = alice ? "alice" : "bob";
  const auto& order = alice ? w.alice_order : w.bob_order;
  const auto& maps = alice ? w.alice_inputs : w.bob_inputs;
  const int external = alice ? w.x_size : w.y_size;
  if (maps.size() != w.boxes.size()) {
    validation_error(std::string(who) + " has " + std::to_string(maps.size()) +
                     " input maps for " + std::to_string(w.boxes.size()) + " stages");
  }
  for (size_t stage = 0; stage < maps.size(); ++stage) {
    const InputMap& m = maps[stage];
    int table_size = external;
    int prev = -1;
    for (int r : m.reads) {
      if (r < 0 || size_t(r) >= stage) {
        validation_error(std::string(who) + " stage " + std::to_string(stage) +
                         " reads stage " + std::to_string(r) + ", which is not earlier");
      }
      if (r <= prev) {
        validation_error(std::string(who) + " stage " + std::to_string(stage) +
                         " reads must be strictly increasing");
      }
      prev = r;
      table_size *= stage_out_size(w, order, r, alice);
    }
    if (int(m.table.size()) != table_size) {
      validation_error(std::string(who) + " stage " + std::to_string(stage) + " table has " +
                       std::to_string(m.table.size()) + " entries, want " +
                       std::to_string(table_size));
    }
    const NsBox& box = w.boxes[order[stage]];
    const int box_inputs = alice ? box.x_size() : box.y_size();
    for (int v : m.table) {
      if (v < 0 || v >= box_inputs) {
        validation_error(std::string(who) + " stage " + std::to_string(stage) +
                         " table value " + std::to_string(v) + " outside box input range [0," +
                         std::to_string(box_inputs) + ")");
      }
    }
  }
}

void check_output_map(const Wiring& w, bool alice) {
  const char* who = alice ? "alice" : "bob";
  const OutputMap& m = alice ? w.alice_output : w.bob_output;
  const int external = alice ? w.x_size : w.y_size;
  int tuple_total = 1;
  for (const NsBox& b : w.boxes) tuple_total *= alice ? b.a_size() : b.b_size();
  if (m.out_size < 1) validation_error(std::string(who) + " output size must be positive");
  if (int(m.table.size()) != external * tuple_total) {
    validation_error(std::string(who) + " output table has " + std::to_string(m.table.size()) +
                     " entries, want " + std::to_string(external * tuple_total));
  }
  for (int v : m.table) {
    if (v < 0 || v >= m.out_size) {
      validation_error(std::string(who) + " output table value " + std::to_string(v) +
                       " outside [0," + std::to_string(m.out_size) + ")");
    }
  }
}

// Inputs each party feeds its boxes for a fixed external input and a fixed
// full output tuple, resolved by walking the party's causal order.
void resolve_inputs(const Wiring& w, bool alice, int external, const std::vector<int>& outs,
                    std::vector<int>& box_inputs) {
  const auto& order = alice ? w.alice_order : w.bob_order;
  const auto& maps = alice ? w.alice_inputs : w.bob_inputs;
  box_inputs.resize(w.boxes.size());
  for (size_t stage = 0; stage < order.size(); ++stage) {
    const InputMap& m = maps[stage];
    int idx = external;
    for (int r : m.reads) {
      const int out = outs[order[r]];
      idx = idx * stage_out_size(w, order, r, alice) + out;
    }
    box_inputs[order[stage]] = m.table[idx];
  }
}

}  // namespace

void validate_wiring(const Wiring& w) {
  if (w.boxes.empty()) validation_error("wiring has no boxes");
  if (w.x_size < 1 || w.y_size < 1) validation_error("external input sizes must be positive");
  check_order(w.alice_order, w.boxes.size(), "alice");
  check_order(w.bob_order, w.boxes.size(), "bob");
  check_input_maps(w, true);
  check_input_maps(w, false);
  check_output_map(w, true);
  check_output_map(w, false);
}

RoundTable evaluate_exact(const Wiring& w) {
  validate_wiring(w);
  for (size_t i = 0; i < w.boxes.size(); ++i) {
    NsReport rep = check_no_signaling(w.boxes[i]);
    if (!rep.pass) {
      throw Error(Errc::signaling, "component box " + std::to_string(i) +
                                       " signals: " + rep.violations.front().describe());
    }
  }
  const size_t n = w.boxes.size();
  std::vector<int> a_sizes(n), b_sizes(n);
  for (size_t i = 0; i < n; ++i) {
    a_sizes[i] = w.boxes[i].a_size();
    b_sizes[i] = w.boxes[i].b_size();
  }
  const int a_total = radix_total(a_sizes);
  const int b_total = radix_total(b_sizes);

  RoundTable rt;
  rt.x_size = w.x_size;
  rt.y_size = w.y_size;
  rt.blocks.reserve(size_t(w.x_size) * w.y_size);
  std::vector<int> a(n), b(n), xin(n), yin(n);
  for (int x = 0; x < w.x_size; ++x) {
    for (int y = 0; y < w.y_size; ++y) {
      RoundBlock blk;
      blk.a_sizes = a_sizes;
      blk.b_sizes = b_sizes;
      blk.p.assign(size_t(a_total) * b_total, Rational(0));
      for (int ai = 0; ai < a_total; ++ai) {
        radix_decode(ai, a_sizes, a);
        resolve_inputs(w, true, x, a, xin);
        for (int bi = 0; bi < b_total; ++bi) {
          radix_decode(bi, b_sizes, b);
          resolve_inputs(w, false, y, b, yin);
          Rational prob = 1;
          for (size_t i = 0; i < n && !prob.is_zero(); ++i) {
            prob *= w.boxes[i].at(xin[i], yin[i], a[i], b[i]);
          }
          blk.p[size_t(ai) * b_total + bi] = prob;
        }
      }
      rt.blocks.push_back(std::move(blk));
    }
  }
  return rt;
}

NsBox effective_box(const Wiring& w) {
  RoundTable rt = evaluate_exact(w);
  const int a_total = rt.blocks.front().a_total();
  const int b_total = rt.blocks.front().b_total();
  BoxBuilder bld(w.x_size, w.y_size, w.alice_output.out_size, w.bob_output.out_size);
  for (int x = 0; x < w.x_size; ++x) {
    for (int y = 0; y < w.y_size; ++y) {
      const RoundBlock& blk = rt.block(x, y);
      for (int ai = 0; ai < a_total; ++ai) {
        const int a_final = w.alice_output.table[size_t(x) * a_total + ai];
        for (int bi = 0; bi < b_total; ++bi) {
          const Rational& v = blk.at(ai, bi);
          if (v.is_zero()) continue;
          const int b_final = w.bob_output.table[size_t(y) * b_total + bi];
          bld.add(x, y, a_final, b_final, v);
        }
      }
    }
  }
  return std::move(bld).build();
}

}  // namespace nsbox
