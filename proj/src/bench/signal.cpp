#include <cmath>
#include <numbers>
#include <random>

#include "tsview/bench.hpp"

namespace tsview::bench {

std::string_view to_string(SignalKind kind) noexcept {
  switch (kind) {
    case SignalKind::NoisySine: return "noisy-sine";
    case SignalKind::RandomWalk: return "random-walk";
    case SignalKind::CategoricalSteps: return "categorical-steps";
    case SignalKind::BooleanBursts: return "boolean-bursts";
  }
  return "unknown";
}

std::optional<SignalKind> parse_signal_kind(std::string_view name) noexcept {
  for (auto k : {SignalKind::NoisySine, SignalKind::RandomWalk, SignalKind::CategoricalSteps,
                 SignalKind::BooleanBursts}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

store::Trace generate_signal(std::size_t n, std::uint64_t seed, SignalKind kind, std::string id) {
  store::Trace trace;
  trace.name = id;
  trace.id = std::move(id);
  trace.xs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace.xs[i] = kSignalEpochNs + static_cast<store::Timestamp>(i) * kSignalPeriodNs;
  }

  std::mt19937_64 rng(seed);
  switch (kind) {
    case SignalKind::NoisySine: {
      std::normal_distribution<double> noise(0.0, 0.1);
      std::vector<double> ys(n);
      const double w = 2.0 * std::numbers::pi / static_cast<double>(kSinePeriod);
      for (std::size_t i = 0; i < n; ++i) {
        ys[i] = std::sin(w * static_cast<double>(i % kSinePeriod)) + noise(rng);
      }
      trace.values = store::ValueArray::numeric(std::move(ys));
      break;
    }
    case SignalKind::RandomWalk: {
      std::normal_distribution<double> step(0.0, 1.0);
      std::vector<double> ys(n);
      double level = 0.0;
      for (auto& y : ys) {
        level += step(rng);
        y = level;
      }
      trace.values = store::ValueArray::numeric(std::move(ys));
      break;
    }
    case SignalKind::CategoricalSteps: {
      // hypnogram-like: a handful of stages held for random stretches
      std::vector<std::string> labels{"W", "N1", "N2", "N3", "REM"};
      std::uniform_int_distribution<std::int32_t> stage(0, static_cast<std::int32_t>(labels.size()) - 1);
      std::geometric_distribution<std::size_t> hold(0.01);
      std::vector<std::int32_t> codes(n);
      std::size_t i = 0;
      while (i < n) {
        const auto code = stage(rng);
        const std::size_t len = 1 + hold(rng);
        for (std::size_t k = 0; k < len && i < n; ++k, ++i) codes[i] = code;
      }
      trace.values = store::ValueArray::categorical(std::move(codes), std::move(labels));
      break;
    }
    case SignalKind::BooleanBursts: {
      std::bernoulli_distribution start_burst(0.002);
      std::geometric_distribution<std::size_t> burst_len(0.05);
      std::vector<bool> bits(n, false);
      std::size_t i = 0;
      while (i < n) {
        if (start_burst(rng)) {
          const std::size_t len = 1 + burst_len(rng);
          for (std::size_t k = 0; k < len && i < n; ++k, ++i) bits[i] = true;
        } else {
          ++i;
        }
      }
      trace.values = store::ValueArray::boolean(std::move(bits));
      break;
    }
  }
  return trace;
}

}  // namespace tsview::bench
