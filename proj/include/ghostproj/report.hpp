#pragma once

#include <string>

#include "json.hpp"

#include "ghostproj/bounds.hpp"
#include "ghostproj/experiments.hpp"
#include "ghostproj/oracle.hpp"

namespace ghostproj::report {

using nlohmann::json;

json to_json(const BoundReport& r);
json to_json(const JlReport& r);
json to_json(const KernelGapReport& r);
json to_json(const ClassificationReport& r);
json to_json(const oracle::MomentTable& t);
json to_json(const oracle::GiStatistics& s);
json to_json(const oracle::GcStatistics& s);
json to_json(const ExperimentConfig& c);

/// eps,delta,violations,rate[,wide_rate], one row per ε.
std::string band_csv(const JlReport& r);

/// M,beta,median_gap, one row per pattern count.
std::string kernel_gap_csv(const KernelGapReport& r);

}  // namespace ghostproj::report
