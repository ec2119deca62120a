#pragma once
// Deterministic report emission: JSON documents with insertion-ordered keys,
// rationals as exact "p/q" strings, doubles in fixed scientific notation, and
// RFC 4180 CSV tables.  Identical inputs produce byte-identical files.

#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qal/scalar.hpp"

namespace qal {

using Json = nlohmann::ordered_json;

/// Fixed-precision scientific rendering; used for every double in a report so
/// serialization never depends on shortest-round-trip formatting.
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

inline std::string fmt_rat(const Rat& r) { return to_string(r); }

inline Json json_scalar(const Scalar& s) {
  return Json{{"re", fmt_rat(s.re)}, {"im", fmt_rat(s.im)}};
}

inline Json json_complex(const std::complex<double>& z) {
  return Json{{"re", fmt_double(z.real())}, {"im", fmt_double(z.imag())}};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

inline void write_json(const std::string& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

/// RFC 4180 CSV: CRLF record separators, quoting only where required.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
      throw std::invalid_argument("csv row width mismatch");
    rows_.push_back(std::move(row));
  }

  std::string render() const {
    std::string out;
    append_record(out, header_);
    for (const auto& r : rows_) append_record(out, r);
    return out;
  }

  void write(const std::string& path) const { write_text(path, render()); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;

  static void append_record(std::string& out, const std::vector<std::string>& rec) {
    for (size_t i = 0; i < rec.size(); ++i) {
      if (i) out.push_back(',');
      out += escape(rec[i]);
    }
    out += "\r\n";
  }

  static std::string escape(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += "\"\"";
      else q.push_back(c);
    }
    q += "\"";
    return q;
  }
};

}  // namespace qal
