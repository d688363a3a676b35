#include "gpe/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gpe::io {

using nlohmann::json;
using quat::Quaternion;
using quat::QuatMatrix;
using realization::QuatRealization;
using realization::Realization;

namespace {

json complex_entry(Complex z) { return json::array({z.real(), z.imag()}); }

json quat_entry(const Quaternion& q) {
  return json::array({q.w, q.x, q.y, q.z});
}

json complex_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json quat_matrix(const QuatMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(quat_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex parse_complex_entry(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw InputError("io: complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Quaternion parse_quat_entry(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw InputError("io: quaternion entry must be [w, x, y, z]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

ComplexMatrix parse_complex_matrix(const json& j, int rows, int cols,
                                   const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw InputError(std::string("io: matrix ") + name + " has wrong row count");
  }
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw InputError(std::string("io: matrix ") + name +
                       " has wrong column count");
    }
    for (int c = 0; c < cols; ++c) m(i, c) = parse_complex_entry(j[i][c]);
  }
  return m;
}

QuatMatrix parse_quat_matrix(const json& j, int rows, int cols, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw InputError(std::string("io: matrix ") + name + " has wrong row count");
  }
  QuatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw InputError(std::string("io: matrix ") + name +
                       " has wrong column count");
    }
    for (int c = 0; c < cols; ++c) m(i, c) = parse_quat_entry(j[i][c]);
  }
  return m;
}

std::string format_signed_term(double v, const char* unit, bool& first) {
  std::ostringstream os;
  if (first) {
    os << v << unit;
    first = false;
  } else {
    os << (v < 0 ? "-" : "+") << std::abs(v) << unit;
  }
  return os.str();
}

}  // namespace

json to_json(const Realization& r) {
  return json{{"field", "complex"},
              {"n_out", r.n_out()},
              {"n_in", r.n_in()},
              {"state_dim", r.state_dim()},
              {"A", complex_matrix(r.A)},
              {"B", complex_matrix(r.B)},
              {"C", complex_matrix(r.C)},
              {"D", complex_matrix(r.D)}};
}

json to_json(const QuatRealization& r) {
  return json{{"field", "quaternion"},
              {"n_out", r.n_out()},
              {"n_in", r.n_in()},
              {"state_dim", r.state_dim()},
              {"A", quat_matrix(r.A)},
              {"B", quat_matrix(r.B)},
              {"C", quat_matrix(r.C)},
              {"D", quat_matrix(r.D)}};
}

json to_json(const poly::MatrixPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(complex_matrix(c));
  return json{{"field", "complex"},
              {"n_out", p.rows()},
              {"n_in", p.cols()},
              {"poly", std::move(coeffs)}};
}

json to_json(const slicefun::SlicePolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(quat_matrix(c));
  return json{{"field", "quaternion"},
              {"n_out", p.rows()},
              {"n_in", p.cols()},
              {"poly", std::move(coeffs)}};
}

json to_json(const analysis::KernelInertiaReport& report) {
  json grids = json::array();
  for (const auto& inert : report.gram_inertia) {
    grids.push_back(json{{"n_plus", inert.n_plus},
                         {"n_zero", inert.n_zero},
                         {"n_minus", inert.n_minus}});
  }
  json grid = json::array();
  for (const Complex& z : report.grid_complex) grid.push_back(complex_entry(z));
  for (const Quaternion& q : report.grid_quat) grid.push_back(quat_entry(q));
  return json{{"grid", std::move(grid)},
              {"gram_inertia", std::move(grids)},
              {"kappa_estimate", report.kappa_estimate},
              {"stabilized", report.stabilized}};
}

FileObject parse_file_object(const json& j) {
  if (!j.is_object() || !j.contains("field")) {
    throw InputError("io: file object must carry a 'field' tag");
  }
  const std::string field = j.at("field").get<std::string>();
  const bool is_quat = field == "quaternion";
  if (!is_quat && field != "complex") {
    throw InputError("io: field must be 'complex' or 'quaternion'");
  }
  const int n_out = j.at("n_out").get<int>();
  const int n_in = j.at("n_in").get<int>();
  if (n_out <= 0 || n_in <= 0) {
    throw InputError("io: n_out and n_in must be positive");
  }

  if (j.contains("poly")) {
    const json& coeffs = j.at("poly");
    if (!coeffs.is_array()) throw InputError("io: 'poly' must be an array");
    if (is_quat) {
      std::vector<QuatMatrix> cs;
      for (const auto& c : coeffs) {
        cs.push_back(parse_quat_matrix(c, n_out, n_in, "poly"));
      }
      if (cs.empty()) cs.push_back(QuatMatrix::zero(n_out, n_in));
      return slicefun::SlicePolynomial(std::move(cs));
    }
    std::vector<ComplexMatrix> cs;
    for (const auto& c : coeffs) {
      cs.push_back(parse_complex_matrix(c, n_out, n_in, "poly"));
    }
    if (cs.empty()) cs.push_back(ComplexMatrix::Zero(n_out, n_in));
    return poly::MatrixPolynomial(std::move(cs));
  }

  const int state_dim = j.at("state_dim").get<int>();
  if (state_dim < 0) throw InputError("io: state_dim must be nonnegative");
  if (is_quat) {
    QuatRealization r;
    r.A = parse_quat_matrix(j.at("A"), state_dim, state_dim, "A");
    r.B = parse_quat_matrix(j.at("B"), state_dim, n_in, "B");
    r.C = parse_quat_matrix(j.at("C"), n_out, state_dim, "C");
    r.D = parse_quat_matrix(j.at("D"), n_out, n_in, "D");
    r.validate();
    return r;
  }
  Realization r;
  r.A = parse_complex_matrix(j.at("A"), state_dim, state_dim, "A");
  r.B = parse_complex_matrix(j.at("B"), state_dim, n_in, "B");
  r.C = parse_complex_matrix(j.at("C"), n_out, state_dim, "C");
  r.D = parse_complex_matrix(j.at("D"), n_out, n_in, "D");
  r.validate();
  return r;
}

FileObject load_file_object(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io: cannot open file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("io: malformed JSON in " + path + ": " + e.what());
  }
  return parse_file_object(j);
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("io: cannot write file " + path);
  out << j.dump(2) << "\n";
}

namespace {

/// Parses signed terms "<number>", "<number><unit>", "<unit>" with
/// unit in {i, j, k}; whitespace is ignored.
void parse_point_terms(const std::string& text, double& w, double& x, double& y,
                       double& z) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("io: empty point literal");
  w = x = y = z = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    double sign = 1.0;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    if (pos >= s.size()) throw InputError("io: dangling sign in point literal");
    double value = 1.0;
    const size_t digits_start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
            ((s[pos] == 'e' || s[pos] == 'E') && pos + 1 < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos + 1])) ||
              s[pos + 1] == '+' || s[pos + 1] == '-')))) {
      if (s[pos] == 'e' || s[pos] == 'E') {
        ++pos;  // consume the exponent sign too
        if (s[pos] == '+' || s[pos] == '-') ++pos;
        continue;
      }
      ++pos;
    }
    if (pos > digits_start) {
      value = std::stod(s.substr(digits_start, pos - digits_start));
    }
    char unit = 0;
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j' || s[pos] == 'k')) {
      unit = s[pos];
      ++pos;
    } else if (pos == digits_start) {
      throw InputError("io: cannot parse point literal '" + text + "'");
    }
    const double term = sign * value;
    switch (unit) {
      case 0: w += term; break;
      case 'i': x += term; break;
      case 'j': y += term; break;
      case 'k': z += term; break;
    }
  }
}

}  // namespace

Complex parse_complex_point(const std::string& text) {
  double w, x, y, z;
  parse_point_terms(text, w, x, y, z);
  if (y != 0 || z != 0) {
    throw InputError("io: complex point may not carry j or k parts");
  }
  return {w, x};
}

Quaternion parse_quat_point(const std::string& text) {
  double w, x, y, z;
  parse_point_terms(text, w, x, y, z);
  return {w, x, y, z};
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  if (z.real() != 0 || z.imag() == 0) {
    os << format_signed_term(z.real(), "", first);
  }
  if (z.imag() != 0) os << format_signed_term(z.imag(), "i", first);
  return os.str();
}

std::string format_quaternion(const Quaternion& q) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  if (q.w != 0 || (q.x == 0 && q.y == 0 && q.z == 0)) {
    os << format_signed_term(q.w, "", first);
  }
  if (q.x != 0) os << format_signed_term(q.x, "i", first);
  if (q.y != 0) os << format_signed_term(q.y, "j", first);
  if (q.z != 0) os << format_signed_term(q.z, "k", first);
  return os.str();
}

std::string format_matrix(const ComplexMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << "[ ";
    for (int j = 0; j < m.cols(); ++j) {
      os << format_complex(m(i, j)) << (j + 1 < m.cols() ? "  " : "");
    }
    os << " ]\n";
  }
  return os.str();
}

std::string format_matrix(const QuatMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << "[ ";
    for (int j = 0; j < m.cols(); ++j) {
      os << format_quaternion(m(i, j)) << (j + 1 < m.cols() ? "  " : "");
    }
    os << " ]\n";
  }
  return os.str();
}

InterpolationFile parse_interpolation_file(const json& j) {
  if (!j.is_object() || !j.contains("mode")) {
    throw InputError("io: interpolation file must carry a 'mode'");
  }
  const std::string mode = j.at("mode").get<std::string>();
  InterpolationFile out;
  if (mode == "directional") {
    out.mode = InterpolationFile::Mode::directional;
    for (const auto& e : j.at("nodes")) {
      out.directional.nodes.push_back(parse_complex_entry(e));
    }
    auto parse_vectors = [&](const char* key, std::vector<ComplexVector>& into) {
      for (const auto& vec : j.at(key)) {
        ComplexVector v(vec.size());
        for (size_t t = 0; t < vec.size(); ++t) v(t) = parse_complex_entry(vec[t]);
        into.push_back(std::move(v));
      }
    };
    parse_vectors("directions", out.directional.directions);
    parse_vectors("targets", out.directional.targets);
  } else if (mode == "even-polynomial") {
    out.mode = InterpolationFile::Mode::even_polynomial;
    for (const auto& e : j.at("nodes")) {
      out.scalar_nodes.push_back(parse_complex_entry(e));
    }
    for (const auto& e : j.at("values")) {
      out.scalar_values.push_back(parse_complex_entry(e));
    }
  } else if (mode == "full-value") {
    out.mode = InterpolationFile::Mode::full_value;
    for (const auto& e : j.at("nodes")) {
      out.full_value.nodes.push_back(parse_quat_entry(e));
    }
    for (const auto& v : j.at("values")) {
      const int rows = static_cast<int>(v.size());
      const int cols = rows > 0 ? static_cast<int>(v[0].size()) : 0;
      out.full_value.values.push_back(parse_quat_matrix(v, rows, cols, "values"));
    }
  } else {
    throw InputError("io: unknown interpolation mode '" + mode + "'");
  }
  return out;
}

InterpolationFile load_interpolation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io: cannot open file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("io: malformed JSON in " + path + ": " + e.what());
  }
  return parse_interpolation_file(j);
}

}  // namespace gpe::io
