#include "nsbox/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "nsbox/analysis.hpp"

namespace nsbox {

namespace {

std::string tuple_str(int idx, const std::vector<int>& sizes, bool machine) {
  std::vector<int> digits;
  radix_decode(idx, sizes, digits);
  std::ostringstream os;
  bool compact = !machine;
  for (int s : sizes) compact = compact && s <= 10;
  if (compact) {
    for (int d : digits) os << d;
  } else {
    for (size_t i = 0; i < digits.size(); ++i) {
      if (i) os << ",";
      os << digits[i];
    }
  }
  return os.str();
}

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

void render_one_block(std::ostringstream& os, const RoundBlock& blk, int x, int y, bool machine) {
  const int at = blk.a_total(), bt = blk.b_total();
  if (machine) {
    for (int a = 0; a < at; ++a)
      for (int b = 0; b < bt; ++b) {
        const Rational& v = blk.at(a, b);
        if (v.is_zero()) continue;
        os << "p " << x << " " << y << " " << tuple_str(a, blk.a_sizes, true) << " "
           << tuple_str(b, blk.b_sizes, true) << " " << v.str() << "\n";
      }
    return;
  }
  os << "block x=" << x << " y=" << y << "\n";
  std::vector<std::string> row_labels(at), col_labels(bt);
  for (int a = 0; a < at; ++a) row_labels[a] = tuple_str(a, blk.a_sizes, false);
  for (int b = 0; b < bt; ++b) col_labels[b] = tuple_str(b, blk.b_sizes, false);
  std::vector<size_t> width(bt);
  std::vector<std::vector<std::string>> cells(at, std::vector<std::string>(bt));
  for (int b = 0; b < bt; ++b) {
    width[b] = col_labels[b].size();
    for (int a = 0; a < at; ++a) {
      const Rational& v = blk.at(a, b);
      cells[a][b] = v.is_zero() ? "0" : v.str();
      width[b] = std::max(width[b], cells[a][b].size());
    }
  }
  size_t label_w = 0;
  for (const auto& l : row_labels) label_w = std::max(label_w, l.size());
  os << std::string(label_w, ' ');
  for (int b = 0; b < bt; ++b) os << "  " << std::setw(int(width[b])) << col_labels[b];
  os << "\n";
  for (int a = 0; a < at; ++a) {
    os << std::setw(int(label_w)) << row_labels[a];
    for (int b = 0; b < bt; ++b) os << "  " << std::setw(int(width[b])) << cells[a][b];
    os << "\n";
  }
}

}  // namespace

std::string render_round_table(const RoundTable& rt, int x, int y, bool machine) {
  if ((x < 0) != (y < 0)) {
    throw Error(Errc::invalid_argument, "give both of x,y or neither");
  }
  std::ostringstream os;
  if (x >= 0) {
    if (x >= rt.x_size || y >= rt.y_size) {
      throw Error(Errc::invalid_argument, "external input out of range");
    }
    render_one_block(os, rt.block(x, y), x, y, machine);
    return os.str();
  }
  bool first = true;
  for (int xi = 0; xi < rt.x_size; ++xi) {
    for (int yi = 0; yi < rt.y_size; ++yi) {
      if (!machine && !first) os << "\n";
      first = false;
      render_one_block(os, rt.block(xi, yi), xi, yi, machine);
    }
  }
  return os.str();
}

std::string render_cycles_report(const Wiring& w, bool machine) {
  RoundTable rt = evaluate_exact(w);
  if (rt.x_size != 2 || rt.y_size != 2) {
    throw Error(Errc::invalid_argument, "cycle report needs binary external inputs");
  }
  const RoundBlock& blk = rt.block(1, 1);
  OutputPermutation perm = extract_permutation(blk);
  const auto orbits = cycles(perm);
  const auto lengths = cycle_structure(perm);
  std::ostringstream os;
  if (machine) {
    os << "lengths:";
    for (size_t i = 0; i < lengths.size(); ++i) os << (i ? "," : " ") << lengths[i];
    os << "\n";
    for (const auto& orbit : orbits) {
      for (int e : orbit) {
        os << "arrow " << tuple_str(e, blk.a_sizes, true) << " "
           << tuple_str(perm.image[e], blk.b_sizes, true) << "\n";
      }
    }
  } else {
    os << "cycle lengths:";
    for (size_t i = 0; i < lengths.size(); ++i) os << (i ? ", " : " ") << lengths[i];
    os << "\n";
    for (const auto& orbit : orbits) {
      for (int e : orbit) {
        os << tuple_str(e, blk.a_sizes, false) << " -> "
           << tuple_str(perm.image[e], blk.b_sizes, false) << "\n";
      }
    }
  }
  return os.str();
}

std::string render_verify(const VerifyReport& rep, bool machine) {
  std::ostringstream os;
  if (machine) {
    os << "normalization " << (rep.normalization ? "pass" : "fail") << "\n";
    for (const auto& p : rep.normalization_problems) os << "problem " << p << "\n";
    if (rep.normalization) {
      bool alice_ok = true, bob_ok = true;
      for (const auto& v : rep.ns.violations) {
        (v.signaling_party == Party::alice ? alice_ok : bob_ok) = false;
      }
      os << "alice-no-signaling " << (alice_ok ? "pass" : "fail") << "\n";
      os << "bob-no-signaling " << (bob_ok ? "pass" : "fail") << "\n";
      for (const auto& v : rep.ns.violations) os << "violation " << v.describe() << "\n";
    }
    os << "result " << (rep.pass() ? "pass" : "fail") << "\n";
    return os.str();
  }
  os << "normalization: " << (rep.normalization ? "pass" : "fail") << "\n";
  for (const auto& p : rep.normalization_problems) os << "  " << p << "\n";
  if (rep.normalization) {
    bool alice_ok = true, bob_ok = true;
    for (const auto& v : rep.ns.violations) {
      (v.signaling_party == Party::alice ? alice_ok : bob_ok) = false;
    }
    os << "alice no-signaling: " << (alice_ok ? "pass" : "fail") << "\n";
    os << "bob no-signaling: " << (bob_ok ? "pass" : "fail") << "\n";
    for (const auto& v : rep.ns.violations) os << "  " << v.describe() << "\n";
  }
  os << "result: " << (rep.pass() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string render_plan(const ConversionPlan& plan, bool machine) {
  std::ostringstream os;
  if (machine) {
    os << "plan " << plan.from << " " << plan.to << "\n";
    for (size_t i = 0; i < plan.steps.size(); ++i) {
      const ConversionStep& st = plan.steps[i];
      os << "step " << i + 1 << " " << step_kind_name(st.kind) << " " << st.in_size << " "
         << st.out_size << " " << st.s << " " << st.success.str() << " " << st.boxes_per_round
         << "\n";
    }
    os << "expected-consumption " << plan.expected_consumption.str() << "\n";
    return os.str();
  }
  os << "plan: " << plan.from << " -> " << plan.to << ", " << plan.steps.size() << " step"
     << (plan.steps.size() == 1 ? "" : "s") << ", expected consumption "
     << plan.expected_consumption << " source boxes per target\n";
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    const ConversionStep& st = plan.steps[i];
    os << "step " << i + 1 << ": " << step_kind_name(st.kind);
    if (st.kind == StepKind::threshold) os << " s=" << st.s;
    os << " " << st.in_size << " -> " << st.out_size << ", success " << st.success << ", "
       << st.boxes_per_round << " box" << (st.boxes_per_round == 1 ? "" : "es") << " per round\n";
  }
  return os.str();
}

RusSimulation simulate_rus(const Wiring& w, int x, int y, long long trials, uint64_t master_seed,
                           SchedulePattern pattern, int max_rounds) {
  if (trials < 1) throw Error(Errc::invalid_argument, "need at least one trial");
  RepeatUntilSuccess rus(w);
  const Schedule sched = make_schedule(int(w.boxes.size()), pattern);
  std::vector<std::pair<int, int>> outcomes;
  outcomes.reserve(size_t(trials));
  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    RandomSource rng(master_seed, uint64_t(t));
    const TrialRecord rec = rus.run(x, y, sched, rng, max_rounds);
    outcomes.emplace_back(rec.a, rec.b);
    const double v = double(rec.boxes_consumed);
    sum += v;
    sum_sq += v * v;
  }
  size_t next = 0;
  EmpiricalReport empirical = empirical_vs_exact(
      rus.step().box, x, y, [&]() { return outcomes[next++]; }, trials);
  const double mean = sum / double(trials);
  double std_error = 0.0;
  if (trials > 1) {
    const double var = (sum_sq - sum * sum / double(trials)) / double(trials - 1);
    std_error = std::sqrt(std::max(0.0, var) / double(trials));
  }
  return RusSimulation{rus.step(), std::move(empirical), mean, std_error, trials, x, y};
}

std::string render_simulation(const RusSimulation& sim, bool machine) {
  const Rational expected_boxes =
      Rational(sim.step.boxes_per_round) / sim.step.success;
  const double quantile = chi_square_quantile(std::max(1, sim.empirical.dof), 0.999);
  std::ostringstream os;
  if (machine) {
    os << "trials " << sim.trials << "\n";
    os << "x " << sim.x << "\n";
    os << "y " << sim.y << "\n";
    os << "success " << sim.step.success.str() << "\n";
    os << "expected-boxes " << expected_boxes.str() << "\n";
    os << "mean-boxes " << fixed6(sim.mean_boxes) << "\n";
    os << "std-error " << fixed6(sim.mean_boxes_std_error) << "\n";
    for (const auto& c : sim.empirical.cells) {
      os << "cell " << c.a << " " << c.b << " " << c.count << " " << c.exact.str() << "\n";
    }
    os << "chi-square " << fixed6(sim.empirical.chi_square) << "\n";
    os << "dof " << sim.empirical.dof << "\n";
    os << "quantile-999 " << fixed6(quantile) << "\n";
    return os.str();
  }
  os << "trials: " << sim.trials << " at x=" << sim.x << " y=" << sim.y << "\n";
  os << "success probability: " << sim.step.success << " per round\n";
  os << "expected boxes per target: " << expected_boxes << " = "
     << fixed6(expected_boxes.to_double()) << "\n";
  os << "mean boxes consumed: " << fixed6(sim.mean_boxes) << " +/- "
     << fixed6(sim.mean_boxes_std_error) << "\n";
  os << "conditioned distribution, observed vs exact:\n";
  for (const auto& c : sim.empirical.cells) {
    os << "  a=" << c.a << " b=" << c.b << ": " << c.count << "  exact " << c.exact << " ("
       << fixed6(c.exact.to_double() * double(sim.trials)) << ")\n";
  }
  os << "chi-square: " << fixed6(sim.empirical.chi_square) << ", dof " << sim.empirical.dof
     << ", 99.9% quantile " << fixed6(quantile) << "\n";
  return os.str();
}

}  // namespace nsbox
