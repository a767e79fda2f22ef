#include "stsense/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include <json.hpp>

namespace stsense {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_roc_csv(std::ostream& out, const std::vector<RocCurve>& curves) {
  std::vector<const RocCurve*> order;
  order.reserve(curves.size());
  for (const auto& c : curves) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const RocCurve* a, const RocCurve* b) {
    const int name = std::strcmp(detector_name(a->detector), detector_name(b->detector));
    if (name != 0) return name < 0;
    return std::strcmp(roc_source_name(a->source), roc_source_name(b->source)) < 0;
  });
  out << "detector,source,pfa,pd\n";
  for (const RocCurve* curve : order) {
    std::vector<RocPoint> points = curve->points;
    std::stable_sort(points.begin(), points.end(),
                     [](const RocPoint& a, const RocPoint& b) { return a.pfa < b.pfa; });
    for (const RocPoint& pt : points) {
      out << detector_name(curve->detector) << ',' << roc_source_name(curve->source) << ','
          << format_number(pt.pfa) << ',' << format_number(pt.pd) << '\n';
    }
  }
}

void write_pd_table_csv(std::ostream& out, const std::vector<PdVsSnrRow>& rows) {
  out << "snr1_db,pd_st,pd_john\n";
  for (const PdVsSnrRow& r : rows) {
    out << format_number(r.snr1_db) << ',' << format_number(r.pd_st) << ','
        << format_number(r.pd_john) << '\n';
  }
}

std::string roc_json(const std::vector<RocCurve>& curves) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RocCurve& curve : curves) {
    for (const RocPoint& pt : curve.points) {
      arr.push_back({{"detector", detector_name(curve.detector)},
                     {"source", roc_source_name(curve.source)},
                     {"pfa", pt.pfa},
                     {"pd", pt.pd}});
    }
  }
  return arr.dump(2);
}

std::string pd_table_json(const std::vector<PdVsSnrRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PdVsSnrRow& r : rows) {
    arr.push_back({{"snr1_db", r.snr1_db}, {"pd_st", r.pd_st}, {"pd_john", r.pd_john}});
  }
  return arr.dump(2);
}

}  // namespace stsense
