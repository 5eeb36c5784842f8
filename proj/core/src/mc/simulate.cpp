#include "diqss/mc/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "diqss/heralding/loading.hpp"
#include "diqss/mc/rng.hpp"
#include "diqss/quantum/correlations.hpp"
#include "diqss/quantum/ghz.hpp"
#include "diqss/support/parallel.hpp"

namespace diqss::mc {

namespace {

constexpr long long kBlockTrials = 1 << 14;

int num_blocks_for(long long trials) {
  return static_cast<int>((trials + kBlockTrials - 1) / kBlockTrials);
}

long long block_span(long long trials, int block) {
  const long long lo = static_cast<long long>(block) * kBlockTrials;
  return std::min(kBlockTrials, trials - lo);
}

}  // namespace

void SimConfig::validate() const {
  channel.validate();
  noise.validate();
  proto.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (p_success_override &&
      !(*p_success_override >= 0.0 && *p_success_override <= 1.0)) {
    throw std::invalid_argument("p_success_override must be in [0,1]");
  }
}

SimReport simulate_loading(const SimConfig& config) {
  config.validate();
  const double p_s = config.p_success_override
                         ? *config.p_success_override
                         : heralding::p_success(config.channel);
  const double eta_m = config.channel.memory_efficiency;
  const int window = config.channel.max_storage_intervals + 1;  // pulses 1..N+1

  struct Partial {
    long long successes = 0;
    long long pulses = 0;
    double pulses_sq = 0.0;
    double cross = 0.0;  // sum of success * pulses
  };

  const int nblocks = num_blocks_for(config.trials);
  auto run_block = [&](int b) {
    Partial part;
    RngStream rng(config.seed, 2 * static_cast<uint64_t>(b));
    const long long n = block_span(config.trials, b);
    for (long long t = 0; t < n; ++t) {
      int latest[2] = {0, 0};  // waiting users' latest success pulse, 0 = none
      bool success = false;
      int consumed = window;
      for (int k = 1; k <= window; ++k) {
        const bool s0 = rng.bernoulli(p_s);
        const bool s1 = rng.bernoulli(p_s);
        const bool trigger = rng.bernoulli(p_s);  // designated user
        if (s0) latest[0] = k;
        if (s1) latest[1] = k;
        if (trigger) {
          if (latest[0] > 0 && latest[1] > 0) {
            const int gap = (k - latest[0]) + (k - latest[1]);
            const double survival = std::pow(eta_m, 2.0 * gap);
            if (rng.bernoulli(survival)) {
              success = true;
              if (k < window) consumed = k;
            }
          }
          break;  // designated user's first success ends the trial
        }
      }
      part.successes += success ? 1 : 0;
      part.pulses += consumed;
      part.pulses_sq += static_cast<double>(consumed) * consumed;
      if (success) part.cross += consumed;
    }
    return part;
  };

  const auto parts = support::parallel_blocks<Partial>(nblocks, run_block);
  Partial total;
  for (const auto& p : parts) {  // merged in block order
    total.successes += p.successes;
    total.pulses += p.pulses;
    total.pulses_sq += p.pulses_sq;
    total.cross += p.cross;
  }

  SimReport report;
  report.trials_run = config.trials;
  report.seed = config.seed;
  report.loading_successes = total.successes;
  report.pulses_consumed = total.pulses;

  const double n = static_cast<double>(config.trials);
  const double s_mean = total.successes / n;
  const double w_mean = total.pulses / n;
  const double ratio = s_mean / w_mean;
  // Delta-method error of the ratio estimator successes/pulses.
  const double var_s = s_mean - s_mean * s_mean;  // Bernoulli
  const double var_w = total.pulses_sq / n - w_mean * w_mean;
  const double cov_sw = total.cross / n - s_mean * w_mean;
  const double var_ratio =
      (var_s - 2.0 * ratio * cov_sw + ratio * ratio * var_w) / (n * w_mean * w_mean);
  report.loading_efficiency = {ratio, std::sqrt(std::max(0.0, var_ratio))};
  return report;
}

namespace {

using quantum::GhzLabel;
using quantum::Observable;
using quantum::ObservableName;

// Joint +/-1 outcome distribution of three single-qubit observables on a
// 3-qubit pure state: p(a,b,c) = <psi| P_a (x) P_b (x) P_c |psi>.
std::array<double, 8> outcome_distribution(const quantum::PureState& psi,
                                           const Observable& a, const Observable& b,
                                           const Observable& c) {
  std::array<double, 8> dist{};
  for (int out = 0; out < 8; ++out) {
    const double sa = (out & 4) ? -1.0 : +1.0;
    const double sb = (out & 2) ? -1.0 : +1.0;
    const double sc = (out & 1) ? -1.0 : +1.0;
    auto proj = [](const Observable& m, double sign, int r, int c2) {
      const quantum::Complex id = (r == c2) ? 1.0 : 0.0;
      return 0.5 * (id + sign * m.matrix[r * 2 + c2]);
    };
    quantum::Complex p{0.0, 0.0};
    for (int r = 0; r < 8; ++r) {
      for (int col = 0; col < 8; ++col) {
        const quantum::Complex m = proj(a, sa, (r >> 2) & 1, (col >> 2) & 1) *
                                   proj(b, sb, (r >> 1) & 1, (col >> 1) & 1) *
                                   proj(c, sc, r & 1, col & 1);
        p += std::conj(psi.amplitude(r)) * m * psi.amplitude(col);
      }
    }
    dist[out] = std::max(0.0, p.real());
  }
  return dist;
}

struct CombIndex {
  // Alice 0..1 (A1, A2), Bob 0..2 (B1, B2, B3), Charlie 0..1 (C1, C2)
  static int flat(int ai, int bj, int ck) { return (ai * 3 + bj) * 2 + ck; }
};

ObservableName alice_name(int i) { return i == 0 ? ObservableName::A1 : ObservableName::A2; }
ObservableName bob_name(int j) {
  return j == 0 ? ObservableName::B1 : (j == 1 ? ObservableName::B2 : ObservableName::B3);
}
ObservableName charlie_name(int k) { return k == 0 ? ObservableName::C1 : ObservableName::C2; }

int alice_index(ObservableName n) { return n == ObservableName::A1 ? 0 : 1; }
int bob_index(ObservableName n) {
  return n == ObservableName::B1 ? 0 : (n == ObservableName::B2 ? 1 : 2);
}
int charlie_index(ObservableName n) { return n == ObservableName::C1 ? 0 : 1; }

struct RoundPartial {
  std::array<long long, 8> swap_histogram{};
  long long gsm_successes = 0;
  long long key_rounds = 0;
  long long key_errors = 0;
  long long test_rounds = 0;
  long long discard_rounds = 0;
  // Per test-basis combination: count, sum of products, sum of |product|.
  std::array<long long, 12> comb_count{};
  std::array<long long, 12> comb_sum{};
  std::array<long long, 12> comb_abs{};
};

}  // namespace

SimReport simulate_rounds(const SimConfig& config) {
  config.validate();
  const double fidelity = config.noise.fidelity;
  const double eta_l = config.noise.local_efficiency;
  const double p = config.proto.first_basis_prob;
  const double p_c = config.proto.test_basis_prob;
  const double q = config.proto.noise_preprocessing;
  const auto strategy = config.proto.strategy;

  // Swap-outcome distribution from the state-level projection (uniform over
  // the eight labels for the heralded pair input).
  const auto outcomes =
      quantum::entanglement_swap(quantum::loaded_pairs_state(), {3, 4, 5});
  if (outcomes.size() != 8) {
    throw std::logic_error("unexpected swap outcome count");
  }
  std::array<double, 8> swap_cdf{};
  {
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
      acc += outcomes[i].probability;
      swap_cdf[i] = acc;
    }
    swap_cdf[7] = 1.0;
  }

  // Joint outcome tables: 8 noise states x 12 basis combinations x 8 outcomes.
  const auto labels = quantum::all_ghz_labels();
  std::vector<std::array<double, 8>> cdf(8 * 12);
  for (int st = 0; st < 8; ++st) {
    const auto psi = quantum::ghz_state(labels[st]);
    for (int ai = 0; ai < 2; ++ai) {
      for (int bj = 0; bj < 3; ++bj) {
        for (int ck = 0; ck < 2; ++ck) {
          auto dist = outcome_distribution(psi, Observable::named(alice_name(ai)),
                                           Observable::named(bob_name(bj)),
                                           Observable::named(charlie_name(ck)));
          auto& c = cdf[st * 12 + CombIndex::flat(ai, bj, ck)];
          double acc = 0.0;
          for (int o = 0; o < 8; ++o) {
            acc += dist[o];
            c[o] = acc;
          }
          c[7] = 1.0;
        }
      }
    }
  }

  auto draw_from_cdf = [](RngStream& rng, const std::array<double, 8>& c) {
    const double u = rng.next_double();
    for (int i = 0; i < 8; ++i) {
      if (u < c[i]) return i;
    }
    return 7;
  };

  const int nblocks = num_blocks_for(config.trials);
  auto run_block = [&](int b) {
    RoundPartial part;
    RngStream rng(config.seed, 2 * static_cast<uint64_t>(b) + 1);
    const long long n = block_span(config.trials, b);
    for (long long t = 0; t < n; ++t) {
      // GHZ-basis swap outcome and linear-optical classification.
      const double u = rng.next_double();
      int outcome = 7;
      for (int i = 0; i < 8; ++i) {
        if (u < swap_cdf[i]) {
          outcome = i;
          break;
        }
      }
      part.swap_histogram[outcome]++;
      if (quantum::gsm_classify(outcomes[outcome].label) !=
          quantum::GsmResult::success) {
        continue;
      }
      part.gsm_successes++;

      // Phase-flip correction at swap time leaves |GHZ_1^+>; white noise then
      // replaces it with a uniformly random GHZ state with probability 1-F.
      int state = 0;  // (1,+)
      if (!rng.bernoulli(fidelity)) {
        state = static_cast<int>(rng.next_below(8));
      }

      const int ai = rng.bernoulli(p) ? 0 : 1;
      const int ck = rng.bernoulli(p) ? 0 : 1;
      int bj = 0;
      if (rng.bernoulli(p_c)) bj = rng.bernoulli(0.5) ? 1 : 2;

      const bool is_test = bj != 0;
      const bool is_key =
          !is_test && ((ai == 0 && ck == 0) ||
                       (strategy == quantum::Strategy::advanced && ai == 1 && ck == 1));

      if (is_test) {
        part.test_rounds++;
        const int comb = CombIndex::flat(ai, bj, ck);
        const int out = draw_from_cdf(rng, cdf[state * 12 + comb]);
        const bool click_a = rng.bernoulli(eta_l);
        const bool click_b = rng.bernoulli(eta_l);
        const bool click_c = rng.bernoulli(eta_l);
        part.comb_count[comb]++;
        if (click_a && click_b && click_c) {
          const int product = ((out & 4) ? -1 : 1) * ((out & 2) ? -1 : 1) *
                              ((out & 1) ? -1 : 1);
          part.comb_sum[comb] += product;
          part.comb_abs[comb] += 1;
        }
      } else if (is_key) {
        part.key_rounds++;
        const int comb = CombIndex::flat(ai, bj, ck);
        const int out = draw_from_cdf(rng, cdf[state * 12 + comb]);
        int a = (out & 4) ? -1 : 1;
        int bo = (out & 2) ? -1 : 1;
        int co = (out & 1) ? -1 : 1;
        const bool click_a = rng.bernoulli(eta_l);
        const bool click_b = rng.bernoulli(eta_l);
        const bool click_c = rng.bernoulli(eta_l);
        bool error;
        if (strategy == quantum::Strategy::base) {
          error = !(click_a && click_b && click_c) || (a * bo * co == -1);
        } else {
          if (!click_a) a = rng.bernoulli(0.5) ? 1 : -1;
          if (!click_b) bo = rng.bernoulli(0.5) ? 1 : -1;
          if (!click_c) co = rng.bernoulli(0.5) ? 1 : -1;
          if (strategy == quantum::Strategy::advanced && rng.bernoulli(q)) a = -a;
          error = a * bo * co == -1;
        }
        if (error) part.key_errors++;
      } else {
        part.discard_rounds++;
      }
    }
    return part;
  };

  const auto parts = support::parallel_blocks<RoundPartial>(nblocks, run_block);
  RoundPartial total;
  for (const auto& pt : parts) {
    for (int i = 0; i < 8; ++i) total.swap_histogram[i] += pt.swap_histogram[i];
    total.gsm_successes += pt.gsm_successes;
    total.key_rounds += pt.key_rounds;
    total.key_errors += pt.key_errors;
    total.test_rounds += pt.test_rounds;
    total.discard_rounds += pt.discard_rounds;
    for (int i = 0; i < 12; ++i) {
      total.comb_count[i] += pt.comb_count[i];
      total.comb_sum[i] += pt.comb_sum[i];
      total.comb_abs[i] += pt.comb_abs[i];
    }
  }

  SimReport report;
  report.trials_run = config.trials;
  report.seed = config.seed;
  report.swap_histogram = total.swap_histogram;

  const double trials = static_cast<double>(config.trials);
  const double gsm_rate = total.gsm_successes / trials;
  report.gsm_success_rate = {gsm_rate,
                             std::sqrt(gsm_rate * (1.0 - gsm_rate) / trials)};

  const long long classified =
      total.key_rounds + total.test_rounds + total.discard_rounds;
  report.rounds_classified = classified;
  report.key_rounds = total.key_rounds;
  if (classified > 0) {
    report.sift_key = static_cast<double>(total.key_rounds) / classified;
    report.sift_test = static_cast<double>(total.test_rounds) / classified;
    report.sift_discard = static_cast<double>(total.discard_rounds) / classified;
  }

  if (total.key_rounds > 0) {
    const double nk = static_cast<double>(total.key_rounds);
    const double e = total.key_errors / nk;
    report.qber = {e, std::sqrt(e * (1.0 - e) / nk)};
  }

  // Correlator estimates and the two polynomial sums, using the same constant
  // tables as the analytic module.
  auto estimate_polynomial = [&](std::span<const quantum::CorrelatorTerm> terms) {
    double value = 0.0;
    double var = 0.0;
    for (const auto& term : terms) {
      const int comb = CombIndex::flat(alice_index(term.a), bob_index(term.b),
                                       charlie_index(term.c));
      const double cnt = static_cast<double>(total.comb_count[comb]);
      if (cnt == 0.0) continue;
      const double mean = total.comb_sum[comb] / cnt;
      const double second = total.comb_abs[comb] / cnt;  // E[x^2], x in {-1,0,1}
      value += term.sign * mean;
      var += std::max(0.0, second - mean * mean) / cnt;
    }
    return Estimate{value, std::sqrt(var)};
  };
  report.chsh = estimate_polynomial(quantum::chsh_terms());
  report.svetlichny = estimate_polynomial(quantum::svetlichny_terms());
  return report;
}

}  // namespace diqss::mc
