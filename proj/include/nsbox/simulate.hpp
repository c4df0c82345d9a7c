// Sampled execution of wirings. Every draw is exact: distributions are
// rationals brought to a common denominator D and resolved by one uniform
// integer in [0, D). The generator is mt19937_64; independent streams come
// from splitmix64-mixing (master_seed, stream), stream = trial index.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>

#include "nsbox/protocols.hpp"

namespace nsbox {

class RandomSource {
 public:
  explicit RandomSource(uint64_t master_seed, uint64_t stream = 0);
  uint64_t next_u64() { return engine_(); }
  // Uniform in [0, bound) by rejection; unbiased for every bound >= 1.
  uint64_t below(uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

enum class SchedulePattern { alternating, alice_first, bob_first };

// Interleaving of the two parties' stage sequences; entry k of a party's
// occurrences is that party's stage k, so any interleaving with the right
// multiplicities respects both causal orders.
using Schedule = std::vector<Party>;

Schedule make_schedule(int stages, SchedulePattern pattern);

struct RoundSample {
  std::vector<int> a_outputs, b_outputs;  // per box index
  int a_final = -1, b_final = -1;         // through the output maps
  friend bool operator==(const RoundSample&, const RoundSample&) = default;
};

// Caches the marginal and partner-conditioned distributions of a wiring's
// component boxes as integer thresholds. The first party to reach a box
// samples its marginal; the second samples conditioned on the first's
// input and output. One query per (party, box) per round, enforced.
class RoundSampler {
 public:
  explicit RoundSampler(Wiring w);
  const Wiring& wiring() const { return w_; }
  RoundSample sample(int x, int y, const Schedule& schedule, RandomSource& rng);

 private:
  struct Dist {
    std::vector<uint64_t> cum;
    uint64_t denom = 0;
  };
  const Dist& marginal_dist(int box, Party party, int own_input);
  const Dist& conditional_dist(int box, Party party, int own_input, int partner_input,
                               int partner_output);

  Wiring w_;
  std::map<std::array<int, 5>, Dist> cache_;
};

RoundSample sample_round(const Wiring& w, int x, int y, const Schedule& schedule,
                         RandomSource& rng);

struct TrialRecord {
  int rounds = 0;
  long long boxes_consumed = 0;
  int a = -1, b = -1;  // relabeled outputs of the successful round
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

class TruncatedError : public Error {
 public:
  TruncatedError(TrialRecord partial, int max_rounds)
      : Error(Errc::truncated,
              "no success within " + std::to_string(max_rounds) + " rounds"),
        partial_(partial) {}
  const TrialRecord& partial() const { return partial_; }

 private:
  TrialRecord partial_;
};

// Draws fresh rounds until neither party sees a failure tuple, then applies
// the conditioned relabeling. Statistically each round uses fresh boxes;
// the sampler enforces one query per (party, box) within a round.
class RepeatUntilSuccess {
 public:
  RepeatUntilSuccess(const Wiring& w, const std::vector<FailurePair>& failures);
  explicit RepeatUntilSuccess(const Wiring& w);  // failure = fixed points of (1,1)
  const ConditionedRound& step() const { return step_; }
  TrialRecord run(int x, int y, const Schedule& schedule, RandomSource& rng,
                  int max_rounds = 1'000'000);

 private:
  ConditionedRound step_;
  RoundSampler sampler_;
};

struct EmpiricalCell {
  int a = 0, b = 0;
  long long count = 0;
  Rational exact;
};

struct EmpiricalReport {
  long long trials = 0;
  std::vector<EmpiricalCell> cells;  // support of the exact block, sorted by (a,b)
  double chi_square = 0.0;
  int dof = 0;
  bool support_violation = false;  // an observed outcome has exact probability zero
};

// Tallies `trials` outcomes from `draw` against the (x,y) block of `box`:
// Pearson chi-square over the exact support, dof = support size - 1. An
// outcome outside the support sets support_violation and an infinite
// statistic.
EmpiricalReport empirical_vs_exact(const NsBox& box, int x, int y,
                                   const std::function<std::pair<int, int>()>& draw,
                                   long long trials);

double chi_square_quantile(int dof, double prob);

struct ExpectedBoxesEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

// Mean boxes consumed by the p4 repeat-until-success step at size d, with
// (x,y) drawn uniformly per trial; trial t uses stream t of master_seed.
ExpectedBoxesEstimate estimate_expected_boxes(int d, long long trials, uint64_t master_seed,
                                              int max_rounds = 1'000'000);

}  // namespace nsbox
