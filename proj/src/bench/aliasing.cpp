#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "tsview/aggregation.hpp"
#include "tsview/bench.hpp"
#include "tsview/error.hpp"

namespace tsview::bench {
namespace {

AliasingSeries select(std::string name, const aggregation::AggregationResult& r,
                      std::span<const store::Timestamp> xs, std::span<const double> ys,
                      double input_p2p) {
  AliasingSeries s;
  s.algorithm = std::move(name);
  for (auto i : r.indices) {
    s.xs.push_back(xs[i]);
    s.ys.push_back(ys[i]);
  }
  s.retention = input_p2p > 0.0 ? peak_to_peak(s.ys) / input_p2p : 0.0;
  return s;
}

void write_series(const std::filesystem::path& path, const AliasingSeries& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out.precision(17);
  out << "x,y\n";
  for (std::size_t i = 0; i < s.xs.size(); ++i) out << s.xs[i] << ',' << s.ys[i] << '\n';
}

}  // namespace

double peak_to_peak(std::span<const double> ys) noexcept {
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (double y : ys) {
    if (std::isnan(y)) continue;
    if (!any) {
      lo = hi = y;
      any = true;
    }
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return hi - lo;
}

AliasingSummary run_aliasing(std::size_t n_in, std::size_t n_out) {
  std::vector<store::Timestamp> xs(n_in);
  std::vector<double> ys(n_in);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(kSinePeriod);
  for (std::size_t i = 0; i < n_in; ++i) {
    xs[i] = static_cast<store::Timestamp>(i);
    ys[i] = std::sin(w * static_cast<double>(i));
  }

  AliasingSummary summary;
  summary.n_in = n_in;
  summary.n_out = n_out;
  summary.input_peak_to_peak = peak_to_peak(ys);

  const aggregation::SeriesSlice slice{xs, ys};
  summary.every_nth = select("everynth", aggregation::every_nth(n_in, n_out), xs, ys,
                             summary.input_peak_to_peak);
  summary.minmax_lttb = select("minmaxlttb", aggregation::minmax_lttb(slice, n_out, 4), xs, ys,
                               summary.input_peak_to_peak);
  return summary;
}

AliasingSummary aliasing_demo(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto summary = run_aliasing();
  write_series(out_dir / "everynth.csv", summary.every_nth);
  write_series(out_dir / "minmaxlttb.csv", summary.minmax_lttb);

  nlohmann::ordered_json j;
  j["n_in"] = summary.n_in;
  j["n_out"] = summary.n_out;
  j["input_peak_to_peak"] = summary.input_peak_to_peak;
  for (const auto* s : {&summary.every_nth, &summary.minmax_lttb}) {
    j[s->algorithm] = {{"points", s->xs.size()}, {"retention", s->retention}};
  }
  std::ofstream out(out_dir / "summary.json");
  if (!out) throw Error("cannot write summary.json");
  out << j.dump(2) << '\n';
  return summary;
}

}  // namespace tsview::bench
