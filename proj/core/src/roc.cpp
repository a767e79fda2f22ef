#include "stsense/roc.hpp"

#include <algorithm>
#include <stdexcept>

namespace stsense {

const char* roc_source_name(RocSource source) {
  return source == RocSource::Analytic ? "analytic" : "empirical";
}

double pd_at_pfa(const RocCurve& curve, double pfa) {
  if (curve.points.empty()) throw std::invalid_argument("pd_at_pfa: empty curve");
  // Upper envelope: one point per distinct pfa, keeping the best pd.
  std::vector<RocPoint> env;
  env.reserve(curve.points.size());
  for (const RocPoint& pt : curve.points) {
    if (!env.empty() && env.back().pfa == pt.pfa) {
      env.back().pd = std::max(env.back().pd, pt.pd);
    } else {
      env.push_back(pt);
    }
  }
  if (pfa <= env.front().pfa) return env.front().pd;
  if (pfa >= env.back().pfa) return env.back().pd;
  const auto hi = std::lower_bound(env.begin(), env.end(), pfa,
                                   [](const RocPoint& pt, double v) { return pt.pfa < v; });
  const auto lo = hi - 1;
  const double span = hi->pfa - lo->pfa;
  if (span <= 0.0) return std::max(lo->pd, hi->pd);
  const double t = (pfa - lo->pfa) / span;
  return lo->pd + t * (hi->pd - lo->pd);
}

}  // namespace stsense
