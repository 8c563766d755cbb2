#include "roboline/demon.hpp"

#include "roboline/execution.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace roboline {

namespace {

void require_scales(const std::vector<Rational>& scales) {
  if (scales.empty()) throw std::invalid_argument("demon: empty scale schedule");
  for (const Rational& s : scales) {
    if (s.is_zero()) throw std::invalid_argument("demon: zero frame scale");
  }
}

std::string describe_scales(const std::vector<Rational>& scales) {
  std::string out;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (i) out += ';';
    out += scales[i].str();
  }
  return out;
}

/// Activates every good robot every round; byzantine placements are pinned at
/// absolute coordinates, frame ratios cycle through a fixed schedule.
class FsyncDemon final : public Demon {
 public:
  FsyncDemon(std::vector<Location> byz, std::vector<Rational> scales)
      : byz_(std::move(byz)), scales_(std::move(scales)) {
    require_scales(scales_);
  }

  DemonicAction step(const GoodPositions& gp) override {
    DemonicAction da;
    da.byz = byz_;
    da.frames.assign(gp.size(), scales_[tick_ % scales_.size()]);
    ++tick_;
    return da;
  }

  // Constant-schedule demons are stateless: the round number must not leak
  // into the key or no two rounds would ever look alike to the recurrence
  // detector.
  std::string state_key() const override {
    if (scales_.size() == 1) return "";
    return std::to_string(tick_ % scales_.size());
  }

  void reset() override { tick_ = 0; }

  std::string describe() const override {
    return "fsync:scale=" + describe_scales(scales_);
  }

  bool structurally_fair() const override { return true; }
  bool fully_synchronous() const override { return true; }
  std::optional<std::uint64_t> activation_gap_bound() const override { return 0; }
  std::optional<std::uint64_t> k_bound() const override { return 1; }

 private:
  std::vector<Location> byz_;
  std::vector<Rational> scales_;
  std::uint64_t tick_ = 0;
};

/// Activates good robots one at a time, k consecutive rounds each, in index
/// order, forever.  Byzantine placements pinned, scales cycled.
class RoundRobinDemon final : public Demon {
 public:
  RoundRobinDemon(std::size_t good_count, std::uint64_t k, std::vector<Location> byz,
                  std::vector<Rational> scales)
      : good_count_(good_count), k_(k), byz_(std::move(byz)), scales_(std::move(scales)) {
    if (good_count_ == 0) throw std::invalid_argument("roundrobin: no good robots");
    if (k_ == 0) throw std::invalid_argument("roundrobin: k must be at least 1");
    require_scales(scales_);
  }

  DemonicAction step(const GoodPositions& gp) override {
    if (gp.size() != good_count_) {
      throw std::invalid_argument("roundrobin: good robot count changed mid-run");
    }
    DemonicAction da;
    da.byz = byz_;
    da.frames.assign(gp.size(), 0);
    std::size_t active = static_cast<std::size_t>((tick_ / k_) % good_count_);
    da.frames[active] = scales_[tick_ % scales_.size()];
    ++tick_;
    return da;
  }

  std::string state_key() const override {
    std::uint64_t cycle = k_ * static_cast<std::uint64_t>(good_count_);
    std::string key = std::to_string(tick_ % cycle);
    if (scales_.size() > 1) {
      key += '|';
      key += std::to_string(tick_ % scales_.size());
    }
    return key;
  }

  void reset() override { tick_ = 0; }

  std::string describe() const override {
    return "roundrobin:k=" + std::to_string(k_) + ",scale=" + describe_scales(scales_);
  }

  // Fair by construction, but carries no certificate: the audit path is the
  // point of this demon, so it reports its declared bounds and lets the
  // checker verify them against the run.
  std::optional<std::uint64_t> activation_gap_bound() const override {
    // Each robot rests exactly while the other good_count - 1 run their k
    // consecutive rounds.
    return (static_cast<std::uint64_t>(good_count_) - 1) * k_;
  }
  std::optional<std::uint64_t> k_bound() const override { return k_; }

 private:
  std::size_t good_count_;
  std::uint64_t k_;
  std::vector<Location> byz_;
  std::vector<Rational> scales_;
  std::uint64_t tick_ = 0;
};

}  // namespace

std::unique_ptr<Demon> fsync_demon(std::vector<Location> byz, std::vector<Rational> scales) {
  return std::make_unique<FsyncDemon>(std::move(byz), std::move(scales));
}

std::unique_ptr<Demon> fsync_demon(std::vector<Location> byz, Rational scale) {
  return fsync_demon(std::move(byz), std::vector<Rational>{std::move(scale)});
}

std::unique_ptr<Demon> round_robin_demon(std::size_t good_count, std::uint64_t k,
                                         std::vector<Location> byz,
                                         std::vector<Rational> scales) {
  return std::make_unique<RoundRobinDemon>(good_count, k, std::move(byz), std::move(scales));
}

std::unique_ptr<Demon> round_robin_demon(std::size_t good_count, std::uint64_t k,
                                         std::vector<Location> byz, Rational scale) {
  return round_robin_demon(good_count, k, std::move(byz),
                           std::vector<Rational>{std::move(scale)});
}

FairnessReport audit_fairness(const Trace& trace, const Demon& demon) {
  FairnessReport report;
  report.horizon = trace.rounds();
  std::size_t n = trace.positions.empty() ? 0 : trace.positions.front().size();
  report.max_gap.assign(n, 0);

  std::vector<std::uint64_t> run(n, 0);
  bool violated = false;
  // Without a declared bound, the only audit a finite prefix supports is
  // "nobody starved for the entire horizon".
  std::uint64_t bound = demon.activation_gap_bound().value_or(
      trace.rounds() == 0 ? 0 : trace.rounds() - 1);

  for (std::uint64_t i = 0; i < trace.rounds(); ++i) {
    const DemonicAction& da = trace.actions[i];
    for (std::size_t g = 0; g < n; ++g) {
      if (da.frames[g].is_zero()) {
        ++run[g];
        if (run[g] > report.max_gap[g]) report.max_gap[g] = run[g];
        if (!violated && run[g] > bound) {
          violated = true;
          report.kind = FairnessReport::Kind::ViolationAt;
          report.violation_round = i + 1;  // rounds simulated so far
          report.robot = g;
        }
      } else {
        run[g] = 0;
      }
    }
  }
  if (violated) return report;
  report.kind = demon.structurally_fair() ? FairnessReport::Kind::StructurallyFair
                                          : FairnessReport::Kind::FairUpToHorizon;
  return report;
}

bool audit_fsync(const Trace& trace) {
  for (const DemonicAction& da : trace.actions) {
    for (const Rational& k : da.frames) {
      if (k.is_zero()) return false;
    }
  }
  return true;
}

FairnessReport check_fair(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                          std::uint64_t horizon) {
  Trace t = simulate(r, demon, gp0, horizon);
  return audit_fairness(t, demon);
}

bool check_fsync(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                 std::uint64_t horizon) {
  Trace t = simulate(r, demon, gp0, horizon);
  return audit_fsync(t);
}

KBoundReport audit_k_bounded(const Trace& trace, std::uint64_t k) {
  KBoundReport report;
  report.k = k;
  report.horizon = trace.rounds();
  std::size_t n = trace.positions.empty() ? 0 : trace.positions.front().size();

  std::vector<std::vector<std::uint64_t>> fired(n);
  for (std::uint64_t i = 0; i < trace.rounds(); ++i) {
    for (std::size_t g = 0; g < n; ++g) {
      if (!trace.actions[i].frames[g].is_zero()) fired[g].push_back(i);
    }
  }

  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t a = 0; a + 1 < fired[g].size(); ++a) {
      std::uint64_t lo = fired[g][a];
      std::uint64_t hi = fired[g][a + 1];
      for (std::size_t o = 0; o < n; ++o) {
        if (o == g) continue;
        std::uint64_t count = 0;
        for (std::uint64_t t : fired[o]) {
          if (t > lo && t < hi) ++count;
        }
        if (count > k) {
          report.pass = false;
          report.violation = KBoundViolation{g, o, count, hi};
          return report;
        }
      }
    }
  }
  report.pass = true;
  return report;
}

KBoundReport check_k_bounded(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                             std::uint64_t k, std::uint64_t horizon) {
  Trace t = simulate(r, demon, gp0, horizon);
  return audit_k_bounded(t, k);
}

}  // namespace roboline
