#include "nsbox/simulate.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>

namespace nsbox {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource(uint64_t master_seed, uint64_t stream) {
  uint64_t state = master_seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  splitmix64(state);
  engine_.seed(splitmix64(state));
}

uint64_t RandomSource::below(uint64_t bound) {
  if (bound == 0) throw Error(Errc::invalid_argument, "uniform draw over empty range");
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t u;
  do {
    u = engine_();
  } while (u >= limit);
  return u % bound;
}

Schedule make_schedule(int stages, SchedulePattern pattern) {
  if (stages < 1) throw Error(Errc::invalid_argument, "schedule needs at least one stage");
  Schedule s;
  s.reserve(size_t(stages) * 2);
  switch (pattern) {
    case SchedulePattern::alternating:
      for (int i = 0; i < stages; ++i) {
        s.push_back(Party::alice);
        s.push_back(Party::bob);
      }
      break;
    case SchedulePattern::alice_first:
      s.assign(stages, Party::alice);
      s.insert(s.end(), stages, Party::bob);
      break;
    case SchedulePattern::bob_first:
      s.assign(stages, Party::bob);
      s.insert(s.end(), stages, Party::alice);
      break;
  }
  return s;
}

RoundSampler::RoundSampler(Wiring w) : w_(std::move(w)) {
  validate_wiring(w_);
  for (size_t i = 0; i < w_.boxes.size(); ++i) {
    NsReport rep = check_no_signaling(w_.boxes[i]);
    if (!rep.pass) {
      throw Error(Errc::signaling, "component box " + std::to_string(i) +
                                       " signals: " + rep.violations.front().describe());
    }
  }
}

namespace {

// Integer thresholds for an exact distribution: cum[k] = D * sum(p[0..k]).
void build_thresholds(const std::vector<Rational>& probs, std::vector<uint64_t>& cum,
                      uint64_t& denom) {
  BigInt d = 1;
  for (const Rational& p : probs) d = boost::multiprecision::lcm(d, p.den());
  if (d > std::numeric_limits<int64_t>::max()) {
    throw Error(Errc::invalid_argument, "sampling denominator exceeds 2^63");
  }
  denom = d.convert_to<uint64_t>();
  cum.clear();
  cum.reserve(probs.size());
  BigInt acc = 0;
  for (const Rational& p : probs) {
    acc += p.num() * (d / p.den());
    cum.push_back(acc.convert_to<uint64_t>());
  }
  if (cum.empty() || cum.back() != denom) {
    throw Error(Errc::invalid_argument, "sampling distribution does not sum to 1");
  }
}

int draw_index(const std::vector<uint64_t>& cum, uint64_t denom, RandomSource& rng) {
  const uint64_t u = rng.below(denom);
  return int(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

}  // namespace

const RoundSampler::Dist& RoundSampler::marginal_dist(int box, Party party, int own_input) {
  const std::array<int, 5> key{box, party == Party::alice ? 0 : 1, own_input, -1, -1};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    Dist d;
    build_thresholds(marginal(w_.boxes[box], party, own_input), d.cum, d.denom);
    it = cache_.emplace(key, std::move(d)).first;
  }
  return it->second;
}

const RoundSampler::Dist& RoundSampler::conditional_dist(int box, Party party, int own_input,
                                                         int partner_input, int partner_output) {
  const std::array<int, 5> key{box, party == Party::alice ? 0 : 1, own_input, partner_input,
                               partner_output};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    Dist d;
    build_thresholds(
        conditional_on_partner(w_.boxes[box], party, own_input, partner_input, partner_output),
        d.cum, d.denom);
    it = cache_.emplace(key, std::move(d)).first;
  }
  return it->second;
}

RoundSample RoundSampler::sample(int x, int y, const Schedule& schedule, RandomSource& rng) {
  const size_t n = w_.boxes.size();
  if (x < 0 || x >= w_.x_size || y < 0 || y >= w_.y_size) {
    throw Error(Errc::invalid_argument, "external input out of range");
  }
  size_t alice_count = 0, bob_count = 0;
  for (Party p : schedule) (p == Party::alice ? alice_count : bob_count)++;
  if (alice_count != n || bob_count != n) {
    throw Error(Errc::validation, "schedule must list each party once per stage (" +
                                      std::to_string(n) + " stages)");
  }

  RoundSample rs;
  rs.a_outputs.assign(n, -1);
  rs.b_outputs.assign(n, -1);
  std::vector<int> a_inputs(n, -1), b_inputs(n, -1);
  std::vector<bool> a_queried(n, false), b_queried(n, false);
  size_t a_stage = 0, b_stage = 0;
  for (Party p : schedule) {
    const bool alice = p == Party::alice;
    const auto& order = alice ? w_.alice_order : w_.bob_order;
    const auto& maps = alice ? w_.alice_inputs : w_.bob_inputs;
    const size_t stage = alice ? a_stage++ : b_stage++;
    const int box = order[stage];
    std::vector<bool>& queried = alice ? a_queried : b_queried;
    if (queried[box]) {
      throw Error(Errc::validation, std::string(party_name(p)) + " queried box " +
                                        std::to_string(box) + " twice in one round");
    }
    queried[box] = true;

    const InputMap& m = maps[stage];
    int idx = alice ? x : y;
    for (int r : m.reads) {
      const int rbox = order[r];
      const NsBox& rb = w_.boxes[rbox];
      const int out = alice ? rs.a_outputs[rbox] : rs.b_outputs[rbox];
      idx = idx * (alice ? rb.a_size() : rb.b_size()) + out;
    }
    const int own_input = m.table[idx];
    (alice ? a_inputs : b_inputs)[box] = own_input;

    const bool partner_done = alice ? b_queried[box] : a_queried[box];
    const Dist* dist;
    if (!partner_done) {
      dist = &marginal_dist(box, p, own_input);
    } else {
      const int pin = alice ? b_inputs[box] : a_inputs[box];
      const int pout = alice ? rs.b_outputs[box] : rs.a_outputs[box];
      dist = &conditional_dist(box, p, own_input, pin, pout);
    }
    const int out = draw_index(dist->cum, dist->denom, rng);
    (alice ? rs.a_outputs : rs.b_outputs)[box] = out;
  }

  int a_idx = 0, b_idx = 0;
  for (size_t i = 0; i < n; ++i) {
    a_idx = a_idx * w_.boxes[i].a_size() + rs.a_outputs[i];
    b_idx = b_idx * w_.boxes[i].b_size() + rs.b_outputs[i];
  }
  int a_tot = 1, b_tot = 1;
  for (const NsBox& b : w_.boxes) {
    a_tot *= b.a_size();
    b_tot *= b.b_size();
  }
  rs.a_final = w_.alice_output.table[size_t(x) * a_tot + a_idx];
  rs.b_final = w_.bob_output.table[size_t(y) * b_tot + b_idx];
  return rs;
}

RoundSample sample_round(const Wiring& w, int x, int y, const Schedule& schedule,
                         RandomSource& rng) {
  RoundSampler sampler(w);
  return sampler.sample(x, y, schedule, rng);
}

RepeatUntilSuccess::RepeatUntilSuccess(const Wiring& w, const std::vector<FailurePair>& failures)
    : step_(condition_on_success(w, failures)), sampler_(w) {}

RepeatUntilSuccess::RepeatUntilSuccess(const Wiring& w)
    : step_(condition_on_success(w)), sampler_(w) {}

TrialRecord RepeatUntilSuccess::run(int x, int y, const Schedule& schedule, RandomSource& rng,
                                    int max_rounds) {
  const Wiring& w = sampler_.wiring();
  const size_t n = w.boxes.size();
  TrialRecord rec;
  for (int round = 0; round < max_rounds; ++round) {
    RoundSample rs = sampler_.sample(x, y, schedule, rng);
    rec.rounds++;
    rec.boxes_consumed += n;
    int a_idx = 0, b_idx = 0;
    for (size_t i = 0; i < n; ++i) {
      a_idx = a_idx * w.boxes[i].a_size() + rs.a_outputs[i];
      b_idx = b_idx * w.boxes[i].b_size() + rs.b_outputs[i];
    }
    const bool a_fail = step_.labels[a_idx] < 0;
    const bool b_fail = step_.labels[b_idx] < 0;
    if (a_fail != b_fail) {
      throw Error(Errc::validation, "local failure flags disagreed in a sampled round");
    }
    if (!a_fail) {
      rec.a = step_.labels[a_idx];
      rec.b = step_.labels[b_idx];
      return rec;
    }
  }
  throw TruncatedError(rec, max_rounds);
}

EmpiricalReport empirical_vs_exact(const NsBox& box, int x, int y,
                                   const std::function<std::pair<int, int>()>& draw,
                                   long long trials) {
  if (trials < 1) throw Error(Errc::invalid_argument, "need at least one trial");
  EmpiricalReport rep;
  rep.trials = trials;
  std::vector<long long> counts(size_t(box.a_size()) * box.b_size(), 0);
  for (long long t = 0; t < trials; ++t) {
    auto [a, b] = draw();
    if (a < 0 || a >= box.a_size() || b < 0 || b >= box.b_size()) {
      throw Error(Errc::invalid_argument, "drawn outcome out of range");
    }
    counts[size_t(a) * box.b_size() + b]++;
  }
  double chi = 0.0;
  for (int a = 0; a < box.a_size(); ++a) {
    for (int b = 0; b < box.b_size(); ++b) {
      const Rational& p = box.at(x, y, a, b);
      const long long c = counts[size_t(a) * box.b_size() + b];
      if (p.is_zero()) {
        if (c > 0) rep.support_violation = true;
        continue;
      }
      rep.cells.push_back(EmpiricalCell{a, b, c, p});
      const double expect = p.to_double() * double(trials);
      const double diff = double(c) - expect;
      chi += diff * diff / expect;
    }
  }
  rep.chi_square = rep.support_violation ? std::numeric_limits<double>::infinity() : chi;
  rep.dof = int(rep.cells.size()) - 1;
  return rep;
}

double chi_square_quantile(int dof, double prob) {
  if (dof < 1 || prob <= 0.0 || prob >= 1.0) {
    throw Error(Errc::invalid_argument, "chi-square quantile needs dof >= 1, 0 < prob < 1");
  }
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::quantile(dist, prob);
}

ExpectedBoxesEstimate estimate_expected_boxes(int d, long long trials, uint64_t master_seed,
                                              int max_rounds) {
  if (trials < 1) throw Error(Errc::invalid_argument, "need at least one trial");
  RepeatUntilSuccess rus(protocol4_round_wiring(d));
  const Schedule sched = make_schedule(2, SchedulePattern::alternating);
  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    RandomSource rng(master_seed, uint64_t(t));
    const int x = int(rng.below(2));
    const int y = int(rng.below(2));
    const TrialRecord rec = rus.run(x, y, sched, rng, max_rounds);
    const double v = double(rec.boxes_consumed);
    sum += v;
    sum_sq += v * v;
  }
  ExpectedBoxesEstimate est;
  est.trials = trials;
  est.mean = sum / double(trials);
  const double var = (sum_sq - sum * sum / double(trials)) / double(trials - 1);
  est.std_error = std::sqrt(std::max(0.0, var) / double(trials));
  return est;
}

}  // namespace nsbox
