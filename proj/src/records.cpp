#include "jsr/records.hpp"

#include <cmath>

namespace jsr {

using nlohmann::json;

namespace {

// JSON has no infinities; trajectories that hit the origin carry null.
json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

RecordWriter::RecordWriter(std::ostream& out, const std::string& schema,
                           const std::string& command, const json& params)
    : out_(out) {
  json h = {{"record", "header"},
            {"schema", schema},
            {"tool", "jsr"},
            {"version", kToolVersion},
            {"command", command},
            {"params", params}};
  out_ << h.dump() << "\n";
}

void RecordWriter::row(const json& j) { out_ << j.dump() << "\n"; }

json word_to_json(const Word& w) {
  json a = json::array();
  for (int v : w.idx) a.push_back(v + 1);
  return a;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      if (m.field() == Field::Real)
        row.push_back(m(i, j).real());
      else
        row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json depth_entry_to_json(const DepthEntry& e) {
  return {{"record", "depth"},   {"n", e.n},
          {"lo", e.lo},          {"lo_word", word_to_json(e.lo_word)},
          {"lo_kappa", e.lo_kappa},
          {"hi", e.hi},          {"hi_word", word_to_json(e.hi_word)},
          {"best_lo", e.best_lo}, {"best_hi", e.best_hi}};
}

json certificate_to_json(const Certificate& c) {
  json words = json::array();
  json values = json::array();
  json residuals = json::array();
  for (const PeripheralReport& r : c.reports) {
    words.push_back(word_to_json(r.word));
    values.push_back(r.value);
    residuals.push_back({{"word", word_to_json(r.word)},
                         {"kappa", r.kappa},
                         {"det_root", finite_or_null(r.det_root)},
                         {"gap_low", finite_or_null(r.gap_low)},
                         {"gap_high", finite_or_null(r.gap_high)}});
  }
  json j = {{"record", "certificate"},
            {"status", c.status == Certificate::Status::Certified ? "certified" : "rejected"},
            {"kappa_floor", c.kappa_floor},
            {"words", words},
            {"values", values},
            {"tol", c.tol},
            {"limit_surrogate", Certificate::kLimitSurrogate},
            {"sandwich_residuals", residuals}};
  if (c.status == Certificate::Status::Certified)
    j["certified_value"] = c.certified_value;
  else
    j["rejection_reason"] = c.rejection_reason;
  return j;
}

json decision_to_json(const Decision& d) {
  json j = {{"record", "decision"},
            {"outcome", d.outcome == Decision::Outcome::Stable     ? "stable"
                        : d.outcome == Decision::Outcome::Unstable ? "unstable"
                                                                   : "unknown"},
            {"witness_depth", d.witness_depth},
            {"norm", to_string(d.norm)},
            {"certificate_value", d.certificate_value}};
  if (d.witness) j["witness"] = word_to_json(*d.witness);
  return j;
}

json limit_point_to_json(const LimitPoint& p, int cluster_id) {
  return {{"record", "limit_point"},
          {"cluster", cluster_id},
          {"representative", matrix_to_json(p.representative)},
          {"abs_det", p.abs_det},
          {"rank", p.rank},
          {"word_length", p.word_length},
          {"cluster_radius", p.cluster_radius},
          {"multiplicity", p.multiplicity}};
}

json trajectory_point_to_json(const TrajectoryPoint& p) {
  return {{"record", "step"}, {"t", p.t}, {"log_norm", finite_or_null(p.log_norm)}};
}

void write_bounds_records(std::ostream& out, const std::string& command, const json& params,
                          const BoundsTable& t) {
  RecordWriter w(out, "jsr.bounds/1", command, params);
  for (const DepthEntry& e : t.rows) w.row(depth_entry_to_json(e));
}

void write_certificate_records(std::ostream& out, const std::string& command, const json& params,
                               const Certificate& c) {
  RecordWriter w(out, "jsr.certificate/1", command, params);
  w.row(certificate_to_json(c));
}

void write_decision_records(std::ostream& out, const std::string& command, const json& params,
                            const Decision& d) {
  RecordWriter w(out, "jsr.decision/1", command, params);
  w.row(decision_to_json(d));
}

void write_limit_records(std::ostream& out, const std::string& command, const json& params,
                         const LimitPointSet& lps, const LimitCertificate& cert) {
  RecordWriter w(out, "jsr.limits/1", command, params);
  int id = 0;
  for (const LimitPoint& p : lps.points) w.row(limit_point_to_json(p, id++));
  w.row({{"record", "limit_certificate"},
         {"certified", cert.certified},
         {"message", cert.message}});
}

void write_trajectory_records(std::ostream& out, const std::string& command, const json& params,
                              const std::vector<TrajectoryPoint>& series, double exponent) {
  RecordWriter w(out, "jsr.trajectory/1", command, params);
  for (const TrajectoryPoint& p : series) w.row(trajectory_point_to_json(p));
  w.row({{"record", "growth_exponent"}, {"value", finite_or_null(exponent)}});
}

}  // namespace jsr
