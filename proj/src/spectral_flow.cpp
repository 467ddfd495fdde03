#include "specflow/spectral_flow.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "specflow/error.hpp"
#include "specflow/fredholm.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

namespace {

// Eigenvalues this close to +-1 are treated as part of the essential
// spectrum when the curves are recorded.
constexpr double kEdge = 1e-12;

std::optional<double> gap_midpoint(std::vector<double> points, double delta) {
  std::sort(points.begin(), points.end());
  double best = -1.0;
  double mid = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double width = points[i] - points[i - 1];
    if (width > best) {
      best = width;
      mid = 0.5 * (points[i] + points[i - 1]);
    }
  }
  if (best / 2.0 <= delta) return std::nullopt;
  return mid;
}

int count_in(const std::vector<double>& values, double lo, double hi) {
  return static_cast<int>(
      std::count_if(values.begin(), values.end(), [&](double x) { return x > lo && x <= hi; }));
}

class FlowEngine {
 public:
  FlowEngine(const OperatorPath& path, const FlowOptions& options)
      : path_(path), options_(options) {}

  FlowReport run(const std::vector<double>& initial) {
    FlowReport report;
    report.diagnostics.lipschitz = path_.lipschitz;
    for (std::size_t i = 1; i < initial.size(); ++i) {
      segment(initial[i - 1], initial[i], 0, report);
    }
    report.partition.push_back(initial.front());
    for (const FlowSegment& seg : report.segments) report.partition.push_back(seg.s1);
    for (double s : report.partition) report.curves.push_back({s, node(s)});
    for (const FlowSegment& seg : report.segments) report.flow += seg.count0 - seg.count1;
    report.diagnostics.max_window_sites = max_sites_;
    return report;
  }

 private:
  const std::vector<double>& node(double s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    const LatticeOperator fs = path_.at(s);
    if (!has_involutive_background(fs)) {
      throw Error(ErrorCode::InvalidArgument,
                  "flow nodes need essential spectrum in {-1, 1} (diagonal +-1 backgrounds)");
    }
    const DiscreteSpectrum spec = discrete_spectrum(fs, -1.0, 1.0);
    max_sites_ = std::max(max_sites_, spec.sites.size());
    std::vector<double> values;
    for (double x : spec.values()) {
      if (std::abs(x) < 1.0 - kEdge) values.push_back(x);
    }
    return cache_.emplace(s, std::move(values)).first->second;
  }

  void segment(double s0, double s1, int depth, FlowReport& report) {
    const std::vector<double> v0 = node(s0);
    const std::vector<double> v1 = node(s1);
    const double delta = path_.lipschitz * (s1 - s0) * (1.0 + 1e-6) + 1e-12;
    std::vector<double> below{-1.0, 0.0};
    std::vector<double> above{0.0, 1.0};
    for (const std::vector<double>* v : {&v0, &v1}) {
      for (double x : *v) (x < 0.0 ? below : above).push_back(x);
    }
    const std::optional<double> a = gap_midpoint(below, delta);
    const std::optional<double> b = gap_midpoint(above, delta);
    const bool consistent =
        a && b && count_in(v0, *a, *b) == count_in(v1, *a, *b);
    if (!consistent) {
      if (depth >= options_.max_refine) {
        std::ostringstream msg;
        msg << "no admissible bins on [" << s0 << ", " << s1 << "] after " << depth
            << " bisections";
        throw Error(ErrorCode::UnresolvedCollision, msg.str());
      }
      ++report.diagnostics.refinements;
      const double mid = 0.5 * (s0 + s1);
      segment(s0, mid, depth + 1, report);
      segment(mid, s1, depth + 1, report);
      return;
    }
    report.diagnostics.max_depth = std::max(report.diagnostics.max_depth, depth);
    FlowSegment seg;
    seg.s0 = s0;
    seg.s1 = s1;
    seg.a = *a;
    seg.b = *b;
    seg.count0 = count_in(v0, *a, options_.zero_tol);
    seg.count1 = count_in(v1, *a, options_.zero_tol);
    report.segments.push_back(seg);
  }

  const OperatorPath& path_;
  FlowOptions options_;
  std::map<double, std::vector<double>> cache_;
  long max_sites_ = 0;
};

std::vector<double> initial_partition(const OperatorPath& path, double lo, double hi) {
  std::vector<double> out{lo};
  for (double s : path.grid) {
    if (s > lo && s < hi) out.push_back(s);
  }
  out.push_back(hi);
  return out;
}

std::vector<double> doubled(const std::vector<double>& grid) {
  std::vector<double> out{grid.front()};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    out.push_back(0.5 * (grid[i - 1] + grid[i]));
    out.push_back(grid[i]);
  }
  return out;
}

}  // namespace

int max_refine_from_env(int fallback) {
  if (const char* env = std::getenv("SPECFLOW_MAX_REFINE")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 0 && value <= 40) return static_cast<int>(value);
  }
  return fallback;
}

FlowReport spectral_flow(const OperatorPath& path, const FlowOptions& options) {
  if (!(options.s_begin < options.s_end)) {
    throw Error(ErrorCode::InvalidArgument, "empty parameter range");
  }
  FlowOptions opts = options;
  opts.max_refine = max_refine_from_env(options.max_refine);
  const std::vector<double> initial = initial_partition(path, opts.s_begin, opts.s_end);
  FlowReport report = FlowEngine(path, opts).run(initial);
  if (opts.verify_doubling) {
    const FlowReport fine = FlowEngine(path, opts).run(doubled(initial));
    report.diagnostics.doubled_flow = fine.flow;
    if (fine.flow != report.flow) {
      std::ostringstream msg;
      msg << "flow " << report.flow << " changes to " << fine.flow << " on the doubled grid";
      throw Error(ErrorCode::UnresolvedCollision, msg.str());
    }
  }
  return report;
}

int sf_pair(const LatticeOperator& f, const LatticeOperator& u) {
  return spectral_flow(canonical_path(f, u)).flow;
}

int sf_via_pair_index(const OperatorPath& path) {
  const double inf = std::numeric_limits<double>::infinity();
  const LatticeOperator p0 = spectral_projection(path.at(0.0), -inf, tol::kEigenvalue);
  const LatticeOperator p1 = spectral_projection(path.at(1.0), -inf, tol::kEigenvalue);
  return pair_index(p0, p1).index;
}

FlowReport z2_flow_of_path(const OperatorPath& path, const FlowOptions& options) {
  if (path.tag != PathTag::Odd) {
    throw Error(ErrorCode::SymmetryViolation, "Z2 flow needs an odd-tag path");
  }
  FlowOptions half = options;
  half.s_begin = 0.0;
  half.s_end = 0.5;
  FlowReport report = spectral_flow(path, half);
  report.flow_mod2 = ((report.flow % 2) + 2) % 2;
  return report;
}

FlowReport z2_spectral_flow(const LatticeOperator& f, const LatticeOperator& u,
                            const SymmetryContext& ctx) {
  return z2_flow_of_path(canonical_path(f, u, 0, PathTag::Odd, ctx));
}

}  // namespace specflow
