#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"
#include "matchq/errors.hpp"

namespace matchq::cli {

using Json = nlohmann::ordered_json;

inline Json make_doc(const std::string& command, const std::string& model,
                     const std::string& provenance) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["command"] = command;
  doc["model"] = model;
  doc["provenance"] = provenance;
  doc["config"] = Json::object();
  doc["results"] = Json::object();
  return doc;
}

inline void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

// CSV cell for a double: 15 significant digits, '.' decimal point.
inline std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// Writes CSV to `path`, or to stdout when the path is empty.
class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

}  // namespace matchq::cli
