#include "innerlip/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace innerlip {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Check& VerificationReport::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& VerificationReport::add_le(const std::string& name, double measured, double bound, const std::string& note) {
  return add({name, measured, bound, "<=", measured <= bound, note});
}

Check& VerificationReport::add_ge(const std::string& name, double measured, double bound, const std::string& note) {
  return add({name, measured, bound, ">=", measured >= bound, note});
}

Check& VerificationReport::add_flag(const std::string& name, bool ok, const std::string& note) {
  return add({name, ok ? 1.0 : 0.0, 1.0, "flag", ok, note});
}

void VerificationReport::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : meta_)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  meta_.emplace_back(key, value);
}

void VerificationReport::merge(const VerificationReport& other) {
  for (Check c : other.checks_) {
    if (!other.title_.empty()) c.name = other.title_ + "/" + c.name;
    checks_.push_back(std::move(c));
  }
  for (const auto& kv : other.meta_) set_meta(other.title_.empty() ? kv.first : other.title_ + "/" + kv.first, kv.second);
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  std::size_t f = 0;
  for (const auto& c : checks_) f += !c.pass;
  return f;
}

std::string VerificationReport::to_csv(bool header) const {
  std::ostringstream os;
  if (header) os << "report,check,measured,bound,relation,pass,note\n";
  for (const auto& c : checks_) {
    os << csv_escape(title_) << ',' << csv_escape(c.name) << ',' << format_double(c.measured) << ','
       << format_double(c.bound) << ',' << c.relation << ',' << (c.pass ? 1 : 0) << ',' << csv_escape(c.note) << '\n';
  }
  return os.str();
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "== " << (title_.empty() ? "report" : title_) << " ==\n";
  for (const auto& kv : meta_) os << "  " << kv.first << ": " << kv.second << '\n';
  for (const auto& c : checks_) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
    if (c.relation == "flag") {
      os << '\n';
    } else {
      os << ": " << format_double(c.measured) << ' ' << c.relation << ' ' << format_double(c.bound);
      if (c.relation == "<=" && c.bound != 0.0) os << "  (margin " << format_double(1.0 - c.measured / c.bound) << ")";
      os << '\n';
    }
    if (!c.note.empty()) os << "         " << c.note << '\n';
  }
  os << "  " << checks_.size() - failures() << "/" << checks_.size() << " checks passed\n";
  return os.str();
}

}  // namespace innerlip
