#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicstab/bounds.hpp"
#include "padicstab/sequence.hpp"

namespace padicstab {

using Json = nlohmann::ordered_json;

/// One checked statement at a grid point. `expected` is empty for rows that
/// are informational only; those never count as unexpected.
struct ReportRow {
  std::string check;
  std::string verdict;
  std::optional<std::string> expected;
  std::string detail;
  std::string regime;  // set for bound comparisons
  std::optional<std::size_t> horizon;

  bool unexpected() const { return expected && *expected != verdict; }
};

struct PointRecord {
  std::string point;
  std::vector<ReportRow> rows;
  Json data = Json::object();
};

struct StabilityReport {
  Json config;
  std::string mode;
  std::string generated_at;
  std::vector<PointRecord> records;
  std::vector<std::string> notes;

  std::size_t row_count() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.rows.size();
    return n;
  }

  std::size_t unexpected_count() const {
    std::size_t n = 0;
    for (const auto& r : records) {
      for (const auto& row : r.rows) n += row.unexpected() ? 1 : 0;
    }
    return n;
  }

  std::map<std::string, std::size_t> verdict_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : records) {
      for (const auto& row : r.rows) ++counts[row.verdict];
    }
    return counts;
  }

  void add_note(const std::string& note) {
    for (const auto& n : notes) {
      if (n == note) return;
    }
    notes.push_back(note);
  }

  /// 0 when every row with an expectation met it, 1 otherwise.
  int exit_code() const { return unexpected_count() == 0 ? 0 : 1; }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// JSON renderings of the exact types.

inline Json to_json(const BigRational& q) { return to_string(q); }

inline Json to_json(const LogMagnitude& m, std::uint64_t p) {
  if (m.is_zero()) return "zero";
  Json j = Json::object();
  j["p"] = p;
  j["exponent"] = to_string(m.exponent());
  return j;
}

inline Json to_json(const Magnitude& m) {
  Json j = Json::object();
  if (m.is_rational()) {
    j["exact"] = to_string(m.rational());
  } else if (m.is_exact()) {
    j["coefficient"] = to_string(m.coefficient());
    j["p"] = m.prime();
    j["exponent"] = to_string(m.fractional_exponent());
  } else {
    j["lower"] = m.lower();
    j["upper"] = m.upper();
  }
  return j;
}

inline Json to_json(const TargetVector& v) {
  Json j = Json::array();
  for (std::size_t i = 0; i < v.dimension(); ++i) j.push_back(to_string(v[i]));
  return j;
}

inline Json to_json(const SequenceTrace& t, std::uint64_t p) {
  Json j = Json::object();
  j["verdict"] = to_string(t.verdict);
  j["horizon"] = t.terms.empty() ? 0 : t.terms.size() - 1;
  j["window"] = t.policy.window;
  j["threshold_exponent"] = t.policy.threshold_exponent;
  Json diffs = Json::array();
  for (const auto& d : t.diff_norms) diffs.push_back(to_json(d, p));
  j["diff_norms"] = std::move(diffs);
  j["limit"] = t.limit ? to_json(*t.limit) : Json(nullptr);
  j["limit_exact"] = t.limit_exact;
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

inline Json to_json(const BoundCheck& b, std::uint64_t p) {
  Json j = Json::object();
  j["label"] = b.label;
  j["verdict"] = to_string(b.verdict);
  j["left"] = to_json(b.left, p);
  j["right"] = to_json(b.right);
  j["left_upper"] = b.left_upper;
  j["right_lower"] = b.right_lower;
  j["regime"] = b.regime;
  j["horizon"] = b.horizon;
  return j;
}

inline Json to_json(const HypothesisVerdict& h) {
  Json j = Json::object();
  j["hypothesis"] = h.hypothesis;
  j["status"] = to_string(h.status);
  j["horizon"] = h.horizon;
  Json terms = Json::array();
  for (const auto& t : h.terms) terms.push_back(to_json(t));
  j["terms"] = std::move(terms);
  return j;
}

/// Short human rendering: the plain rational for moderate integer exponents.
inline std::string describe(const LogMagnitude& m, std::uint64_t p) {
  if (m.is_zero()) return "0";
  const BigRational& e = m.exponent();
  if (is_integer(e) && abs(e) <= 64) return to_string(pow(BigRational(p), -to_int64(e)));
  return std::to_string(p) + "^-(" + to_string(e) + ")";
}

inline ReportRow bound_row(const BoundCheck& b, std::uint64_t p) {
  ReportRow row;
  row.check = b.label;
  row.verdict = to_string(b.verdict);
  row.expected = to_string(BoundVerdict::holds);
  row.detail = describe(b.left, p) + " <= " + b.right.str() + " ?";
  row.regime = b.regime;
  row.horizon = b.horizon;
  return row;
}

inline Json to_json(const ReportRow& r) {
  Json j = Json::object();
  j["check"] = r.check;
  j["verdict"] = r.verdict;
  j["expected"] = r.expected ? Json(*r.expected) : Json(nullptr);
  j["detail"] = r.detail;
  if (!r.regime.empty()) j["regime"] = r.regime;
  if (r.horizon) j["horizon"] = *r.horizon;
  return j;
}

enum class ReportFormat { json, text };

inline std::string emit_json(const StabilityReport& report) {
  Json doc = Json::object();
  doc["mode"] = report.mode;
  doc["generated_at"] = report.generated_at;
  doc["config"] = report.config;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec = Json::object();
    rec["point"] = r.point;
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    rec["rows"] = std::move(rows);
    rec["data"] = r.data;
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  Json summary = Json::object();
  summary["points"] = report.records.size();
  summary["rows"] = report.row_count();
  summary["unexpected"] = report.unexpected_count();
  Json counts = Json::object();
  for (const auto& [verdict, n] : report.verdict_counts()) counts[verdict] = n;
  summary["verdicts"] = std::move(counts);
  doc["summary"] = std::move(summary);
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

inline std::string emit_text(const StabilityReport& report) {
  constexpr int kCheck = 52;
  constexpr int kVerdict = 27;
  constexpr int kExpected = 27;
  std::ostringstream out;
  out << "mode: " << report.mode << "\n";
  out << "generated_at: " << report.generated_at << "\n";
  out << "config: " << report.config.dump() << "\n";
  for (const auto& r : report.records) {
    out << "\n== " << r.point << " ==\n";
    out << std::left << std::setw(kCheck) << "check" << std::setw(kVerdict) << "verdict" << std::setw(kExpected)
        << "expected"
        << "detail\n";
    out << std::string(kCheck + kVerdict + kExpected + 6, '-') << "\n";
    for (const auto& row : r.rows) {
      std::string detail = row.detail;
      if (!row.regime.empty()) detail += " [" + row.regime + ", J=" + std::to_string(row.horizon.value_or(0)) + "]";
      std::string verdict = row.verdict;
      if (row.unexpected()) verdict += " !";
      out << std::left << std::setw(kCheck) << row.check << std::setw(kVerdict) << verdict << std::setw(kExpected)
          << row.expected.value_or("-") << detail << "\n";
    }
  }
  out << "\nsummary: " << report.records.size() << " points, " << report.row_count() << " rows, "
      << report.unexpected_count() << " unexpected\n";
  for (const auto& [verdict, n] : report.verdict_counts()) out << "  " << verdict << ": " << n << "\n";
  if (!report.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& n : report.notes) out << "  - " << n << "\n";
  }
  return out.str();
}

inline std::string emit_report(const StabilityReport& report, ReportFormat format) {
  return format == ReportFormat::json ? emit_json(report) : emit_text(report);
}

}  // namespace padicstab
