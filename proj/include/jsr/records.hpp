#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "jsr/bounds.hpp"
#include "jsr/certificates.hpp"
#include "jsr/limit_semigroup.hpp"
#include "jsr/stability.hpp"

namespace jsr {

inline constexpr const char* kToolVersion = "0.1.0";

/// Line-delimited record stream: a schema-versioned header line followed by
/// one JSON object per result row.  Doubles are rendered as shortest
/// round-trip decimals, so payloads are lossless and reproducible.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, const std::string& schema, const std::string& command,
               const nlohmann::json& params);
  void row(const nlohmann::json& j);

 private:
  std::ostream& out_;
};

nlohmann::json word_to_json(const Word& w);  // 1-based index array
nlohmann::json matrix_to_json(const Matrix& m);

nlohmann::json depth_entry_to_json(const DepthEntry& e);
nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json decision_to_json(const Decision& d);
nlohmann::json limit_point_to_json(const LimitPoint& p, int cluster_id);
nlohmann::json trajectory_point_to_json(const TrajectoryPoint& p);

void write_bounds_records(std::ostream& out, const std::string& command,
                          const nlohmann::json& params, const BoundsTable& t);
void write_certificate_records(std::ostream& out, const std::string& command,
                               const nlohmann::json& params, const Certificate& c);
void write_decision_records(std::ostream& out, const std::string& command,
                            const nlohmann::json& params, const Decision& d);
void write_limit_records(std::ostream& out, const std::string& command,
                         const nlohmann::json& params, const LimitPointSet& lps,
                         const LimitCertificate& cert);
void write_trajectory_records(std::ostream& out, const std::string& command,
                              const nlohmann::json& params,
                              const std::vector<TrajectoryPoint>& series, double exponent);

}  // namespace jsr
