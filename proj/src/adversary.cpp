#include "roboline/adversary.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <utility>

namespace roboline {

namespace {

class PullDemon final : public Demon {
 public:
  PullDemon(PullAdversaryConfig config, IdentSpace space)
      : config_(std::move(config)), space_(space) {
    if (space_.byz_count < space_.good_count) {
      throw std::invalid_argument("adversary_pull: requires byz >= good");
    }
    if (config_.delta.sign() <= 0) {
      throw std::invalid_argument("adversary_pull: delta must be positive");
    }
    if (config_.scale.is_zero()) {
      throw std::invalid_argument("adversary_pull: zero frame scale");
    }
  }

  DemonicAction step(const GoodPositions& gp) override {
    if (gp.empty()) throw std::invalid_argument("adversary_pull: no good robots");
    Location m = *std::min_element(gp.begin(), gp.end());
    Location M = *std::max_element(gp.begin(), gp.end());
    Location target;
    if (config_.mode == PullMode::ChaseEscape) {
      target = M * 2 - m + config_.delta;
    } else {
      target = (phase_ % 2 == 0) ? M + config_.delta : m - config_.delta;
      ++phase_;
    }
    DemonicAction da;
    da.byz.assign(space_.byz_count, target);
    da.frames.assign(gp.size(), config_.scale);
    return da;
  }

  std::string state_key() const override {
    if (config_.mode == PullMode::ChaseEscape) return "";
    return std::to_string(phase_ % 2);
  }

  void reset() override { phase_ = 0; }

  std::string describe() const override {
    return "pull:delta=" + config_.delta.str() +
           ",mode=" + (config_.mode == PullMode::ChaseEscape ? "chase" : "alt") +
           ",scale=" + config_.scale.str();
  }

  bool structurally_fair() const override { return true; }
  bool fully_synchronous() const override { return true; }
  // All choices are made relative to min/max of the current good positions.
  bool translation_equivariant() const override { return true; }
  std::optional<std::uint64_t> activation_gap_bound() const override { return 0; }
  std::optional<std::uint64_t> k_bound() const override { return 1; }

 private:
  PullAdversaryConfig config_;
  IdentSpace space_;
  std::uint64_t phase_ = 0;
};

class SplitDemon final : public Demon {
 public:
  SplitDemon(SplitAdversaryConfig config, IdentSpace space)
      : config_(std::move(config)), space_(space) {
    std::size_t n = space_.total();
    std::size_t f = space_.byz_count;
    if (!(2 * f < n && n <= 3 * f)) {
      throw std::invalid_argument("adversary_split: requires 2f < n <= 3f");
    }
    if (config_.k_bound == 0) {
      throw std::invalid_argument("adversary_split: k bound must be at least 1");
    }
    if (config_.delta.sign() <= 0) {
      throw std::invalid_argument("adversary_split: delta must be positive");
    }
    if (config_.scale.is_zero()) {
      throw std::invalid_argument("adversary_split: zero frame scale");
    }
  }

  DemonicAction step(const GoodPositions& gp) override {
    if (gp.size() != space_.good_count) {
      throw std::invalid_argument("adversary_split: good robot count changed mid-run");
    }
    // Rank robots by (location, index); the low half is the first
    // ceil(g / 2) of that order.
    std::vector<std::size_t> order(gp.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return gp[a] != gp[b] ? gp[a] < gp[b] : a < b;
    });
    std::size_t low_size = (gp.size() + 1) / 2;

    bool low_phase = (tick_ / config_.k_bound) % 2 == 0;
    ++tick_;

    Location m = gp[order.front()];
    Location M = gp[order.back()];
    // Stack the byzantine robots beyond the activated half's own extreme so
    // every activated robot is the median of what it observes and stays put.
    Location target = low_phase ? m - config_.delta : M + config_.delta;

    DemonicAction da;
    da.byz.assign(space_.byz_count, target);
    da.frames.assign(gp.size(), 0);
    std::size_t begin = low_phase ? 0 : low_size;
    std::size_t end = low_phase ? low_size : gp.size();
    for (std::size_t r = begin; r < end; ++r) da.frames[order[r]] = config_.scale;
    return da;
  }

  std::string state_key() const override {
    return std::to_string(tick_ % (2 * config_.k_bound));
  }

  void reset() override { tick_ = 0; }

  std::string describe() const override {
    return "split:delta=" + config_.delta.str() + ",k=" + std::to_string(config_.k_bound) +
           ",scale=" + config_.scale.str();
  }

  bool translation_equivariant() const override { return true; }
  // Half the robots rest for k rounds while the other half runs.
  std::optional<std::uint64_t> activation_gap_bound() const override {
    return config_.k_bound;
  }
  std::optional<std::uint64_t> k_bound() const override { return config_.k_bound; }

 private:
  SplitAdversaryConfig config_;
  IdentSpace space_;
  std::uint64_t tick_ = 0;
};

}  // namespace

std::unique_ptr<Demon> adversary_pull(const PullAdversaryConfig& config,
                                      const IdentSpace& space) {
  return std::make_unique<PullDemon>(config, space);
}

std::unique_ptr<Demon> adversary_split(const SplitAdversaryConfig& config,
                                       const IdentSpace& space) {
  return std::make_unique<SplitDemon>(config, space);
}

std::vector<DemonGridPoint> pull_grid(const IdentSpace& space,
                                      const std::vector<Rational>& deltas,
                                      const std::vector<PullMode>& modes,
                                      const Rational& scale) {
  std::vector<DemonGridPoint> grid;
  for (const Rational& delta : deltas) {
    for (PullMode mode : modes) {
      PullAdversaryConfig config{delta, mode, scale};
      std::string label = "pull:delta=" + delta.str() +
                          ",mode=" + (mode == PullMode::ChaseEscape ? "chase" : "alt");
      grid.push_back({std::move(label),
                      [config, space]() { return adversary_pull(config, space); }});
    }
  }
  return grid;
}

std::vector<DemonGridPoint> split_grid(const IdentSpace& space,
                                       const std::vector<Rational>& deltas,
                                       std::uint64_t k_bound, const Rational& scale) {
  std::vector<DemonGridPoint> grid;
  for (const Rational& delta : deltas) {
    SplitAdversaryConfig config{k_bound, delta, scale};
    std::string label = "split:delta=" + delta.str() + ",k=" + std::to_string(k_bound);
    grid.push_back({std::move(label),
                    [config, space]() { return adversary_split(config, space); }});
  }
  return grid;
}

namespace {

struct PointResult {
  FalsifyAttempt attempt;
  std::optional<ScenarioCheck> check;
};

PointResult run_point(const Robogram& r, const GoodPositions& gp0,
                      const DemonGridPoint& point, const ConvergenceQuery& q) {
  PointResult out;
  out.attempt.label = point.label;
  std::unique_ptr<Demon> demon;
  try {
    demon = point.make();
  } catch (const std::exception& e) {
    out.attempt.outcome = FalsifyAttempt::Outcome::Rejected;
    out.attempt.detail = e.what();
    return out;
  }
  ScenarioCheck check = check_solution_scenario(r, *demon, gp0, q);
  out.attempt.detail = verdict_summary(check.verdict);
  if (check.theorem_relevant) {
    // Replay the recurrence on a fresh demon before trusting the search.
    const auto& w = std::get<NonConvergenceWitness>(check.verdict);
    auto fresh = point.make();
    if (revalidate_recurrence(r, *fresh, gp0, w.recurrence)) {
      out.attempt.outcome = FalsifyAttempt::Outcome::Witness;
      out.check = std::move(check);
    } else {
      out.attempt.outcome = FalsifyAttempt::Outcome::Inconclusive;
      out.attempt.detail += " (witness failed replay; discarded)";
    }
  } else if (check.witness_void) {
    out.attempt.outcome = FalsifyAttempt::Outcome::WitnessVoid;
    out.attempt.detail += " (demon not fair; witness void)";
  } else if (std::holds_alternative<Attracted>(check.verdict)) {
    out.attempt.outcome = FalsifyAttempt::Outcome::Attracted;
  } else {
    out.attempt.outcome = FalsifyAttempt::Outcome::Inconclusive;
  }
  return out;
}

}  // namespace

FalsifyResult falsify(const Robogram& r, const GoodPositions& gp0,
                      const std::vector<DemonGridPoint>& grid, const ConvergenceQuery& q,
                      unsigned jobs) {
  if (grid.empty()) throw std::invalid_argument("falsify: empty demon grid");

  std::vector<PointResult> results(grid.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      results[i] = run_point(r, gp0, grid[i], q);
    }
  } else {
    // Every point is evaluated regardless of jobs, and the winner is picked
    // by grid order afterwards, so the result cannot depend on scheduling.
    std::vector<std::future<PointResult>> futures;
    futures.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      futures.push_back(std::async(std::launch::async, [&, i] {
        return run_point(r, gp0, grid[i], q);
      }));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) results[i] = futures[i].get();
  }

  FalsifyResult out;
  for (PointResult& pr : results) {
    if (!out.found() && pr.check) {
      out.witness = std::move(pr.check);
      out.witness_label = pr.attempt.label;
    }
    out.attempts.push_back(std::move(pr.attempt));
  }
  return out;
}

}  // namespace roboline
