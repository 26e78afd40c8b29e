#include <cmath>
#include <cstdio>
#include <sstream>

#include "ttstokes/cli.hpp"

namespace ttstokes::cli {

namespace {

std::string format_float(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

bool is_flat(const nlohmann::json& j) {
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array())
      for (const auto& x : e)
        if (x.is_structured()) return false;
  }
  return true;
}

void write(const nlohmann::json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::number_float:
      os << format_float(j.get<double>());
      return;
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (is_flat(j)) {
        os << "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) os << ", ";
          first = false;
          write(e, os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write(e, os, indent + 2);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        write(it.value(), os, indent + 2);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  write(j, os, 0);
  os << "\n";
  return os.str();
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json complex_vector_json(const ComplexVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v[k]));
  return out;
}

nlohmann::json complex_matrix_json(const ComplexMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(complex_vector_json(m.row(i).transpose()));
  return out;
}

nlohmann::json real_matrix_json(const RealMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

}  // namespace ttstokes::cli
