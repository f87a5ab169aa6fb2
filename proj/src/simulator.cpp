#include "rejuv/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "rejuv/error.hpp"

namespace rejuv {

std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t replication) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

struct Replicate {
  double value = 0.0;
  double down = 0.0;
  std::uint64_t events = 0;
  bool censored = false;
};

template <class Body>
std::vector<Replicate> run_replications(const SimConfig& cfg, Body body) {
  if (cfg.replications < 1) throw Error(ErrorKind::InvalidParameter, "replications must be >= 1");
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
    throw Error(ErrorKind::InvalidParameter, "confidence must lie in (0,1)");
  std::vector<Replicate> out(cfg.replications);
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.replications));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r; (r = next++) < cfg.replications;) {
      auto g = replication_stream(cfg.seed, r);
      out[r] = body(g);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

void require_simulable(const SmpModel& model) {
  require_valid(model, false);
  const auto seen = reachable_from(model, model.initial);
  for (StateId i = 0; i < model.size(); ++i)
    if (seen[i] && model[i].absorbing())
      throw Error(ErrorKind::InvalidModel,
                  "state " + std::to_string(i) + " ('" + model[i].name + "') is absorbing and reachable");
}

}  // namespace

Estimate summarize(const std::vector<double>& samples, double confidence) {
  const std::size_t n = samples.size();
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "no samples");
  const double mean = pairwise_sum(samples.data(), n) / static_cast<double>(n);
  if (n == 1) return {mean, mean, mean};
  std::vector<double> sq(n);
  std::transform(samples.begin(), samples.end(), sq.begin(), [&](double x) { return (x - mean) * (x - mean); });
  const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2);
  const double hw = z * std::sqrt(var / static_cast<double>(n));
  return {mean, mean - hw, mean + hw};
}

SimResult simulate_availability(const SmpModel& model, const SimConfig& cfg) {
  require_simulable(model);
  if (!(cfg.horizon > 0.0 && std::isfinite(cfg.horizon)))
    throw Error(ErrorKind::InvalidParameter, "horizon must be positive and finite");
  const Walker walker(model);
  auto reps = run_replications(cfg, [&](std::mt19937_64& g) {
    Replicate r;
    double clock = 0.0, up = 0.0, down = 0.0;
    StateId s = model.initial;
    while (clock < cfg.horizon) {
      if (model[s].absorbing())
        throw Error(ErrorKind::AbsorbingReached, "entered absorbing state '" + model[s].name + "'");
      const auto step = walker.step(s, g);
      const double dt = std::min(step.sojourn, cfg.horizon - clock);
      (model[s].up ? up : down) += dt;
      clock += step.sojourn;
      s = step.next;
      ++r.events;
    }
    r.value = up / cfg.horizon;
    r.down = down / cfg.horizon;
    return r;
  });
  std::vector<double> a(reps.size()), u(reps.size());
  SimResult res;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    a[i] = reps[i].value;
    u[i] = reps[i].down;
    res.events_simulated += reps[i].events;
  }
  static_cast<Estimate&>(res) = summarize(a, cfg.confidence);
  res.complement = summarize(u, cfg.confidence);
  res.replications_used = reps.size();
  return res;
}

SimResult simulate_mttf(const SmpModel& model, const std::vector<StateId>& absorbing, const SimConfig& cfg) {
  require_valid(model, false);
  if (absorbing.empty()) throw Error(ErrorKind::EmptyAbsorbingSet, "absorbing set is empty");
  std::vector<bool> stop(model.size(), false);
  for (StateId a : absorbing) {
    if (a >= model.size()) throw Error(ErrorKind::InvalidModel, "absorbing state " + std::to_string(a) + " out of range");
    stop[a] = true;
  }
  if (stop[model.initial]) throw Error(ErrorKind::InitialAbsorbing, "initial state is in the absorbing set");
  const Walker walker(model);
  auto reps = run_replications(cfg, [&](std::mt19937_64& g) {
    Replicate r;
    double clock = 0.0;
    StateId s = model.initial;
    while (!stop[s]) {
      if (model[s].absorbing())
        throw Error(ErrorKind::AbsorbingReached, "entered absorbing state '" + model[s].name + "' outside the set");
      const auto step = walker.step(s, g);
      clock += step.sojourn;
      s = step.next;
      ++r.events;
      if (!stop[s] && clock > cfg.guard) {
        r.censored = true;
        break;
      }
    }
    r.value = clock;
    return r;
  });
  std::vector<double> t(reps.size());
  SimResult res;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    t[i] = reps[i].value;
    res.events_simulated += reps[i].events;
    res.censored += reps[i].censored;
  }
  static_cast<Estimate&>(res) = summarize(t, cfg.confidence);
  res.replications_used = reps.size();
  return res;
}

}  // namespace rejuv
