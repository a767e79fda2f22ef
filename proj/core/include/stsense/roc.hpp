#pragma once

#include <vector>

#include "stsense/detectors.hpp"

namespace stsense {

enum class Hypothesis { H0, H1 };

enum class RocSource { Analytic, Empirical };

struct RocPoint {
  double pfa;
  double pd;
};

/// Operating curve for one detector; points ordered by nondecreasing pfa.
struct RocCurve {
  DetectorKind detector = DetectorKind::ST;
  RocSource source = RocSource::Empirical;
  std::vector<RocPoint> points;
};

const char* roc_source_name(RocSource source);

/// Pd at a target pfa, linearly interpolated along the curve.
double pd_at_pfa(const RocCurve& curve, double pfa);

}  // namespace stsense
