#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "stsense/roc.hpp"
#include "stsense/simulate.hpp"

namespace stsense {

/// Formats with 10 significant digits, '.' decimal separator.
std::string format_number(double v);

/// Schema: detector,source,pfa,pd with a header row; rows sorted by
/// (detector name, source name, pfa). LF line endings.
void write_roc_csv(std::ostream& out, const std::vector<RocCurve>& curves);

/// Schema: snr1_db,pd_st,pd_john with a header row.
void write_pd_table_csv(std::ostream& out, const std::vector<PdVsSnrRow>& rows);

std::string roc_json(const std::vector<RocCurve>& curves);
std::string pd_table_json(const std::vector<PdVsSnrRow>& rows);

}  // namespace stsense
