#pragma once

#include <string>
#include <utility>
#include <vector>

namespace innerlip {

/// One named inequality or property with its measured value and the bound it is held to.
struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "==", "flag"
  bool pass = false;
  std::string note;
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string title = {}) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

  Check& add(Check c);
  Check& add_le(const std::string& name, double measured, double bound, const std::string& note = {});
  Check& add_ge(const std::string& name, double measured, double bound, const std::string& note = {});
  Check& add_flag(const std::string& name, bool ok, const std::string& note = {});
  void set_meta(const std::string& key, const std::string& value);
  /// Appends another report's checks, prefixing names with its title.
  void merge(const VerificationReport& other);

  bool passed() const;
  std::size_t failures() const;

  /// Columns: report,check,measured,bound,relation,pass,note (see docs/formats.md).
  std::string to_csv(bool header = true) const;
  std::string to_text() const;

 private:
  std::string title_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// Shortest round-trip decimal form of a double ("inf", "-inf", "nan" for specials).
std::string format_double(double v);
/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& s);

}  // namespace innerlip
