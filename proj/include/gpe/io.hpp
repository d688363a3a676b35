#pragma once

#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "gpe/analysis.hpp"
#include "gpe/factorization.hpp"
#include "gpe/interp.hpp"
#include "gpe/polynomial.hpp"
#include "gpe/realization.hpp"
#include "gpe/slicefun.hpp"

namespace gpe::io {

/// Any function object a file can carry: a realization over either field or a
/// polynomial over either field (for functions not analytic at infinity).
using FileObject =
    std::variant<realization::Realization, realization::QuatRealization,
                 poly::MatrixPolynomial, slicefun::SlicePolynomial>;

nlohmann::json to_json(const realization::Realization& r);
nlohmann::json to_json(const realization::QuatRealization& r);
nlohmann::json to_json(const poly::MatrixPolynomial& p);
nlohmann::json to_json(const slicefun::SlicePolynomial& p);
nlohmann::json to_json(const analysis::KernelInertiaReport& report);

FileObject parse_file_object(const nlohmann::json& j);
FileObject load_file_object(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

/// "a+bi" with optional spaces; rejects j/k parts.
Complex parse_complex_point(const std::string& text);
/// "a+bi+cj+dk" with optional spaces; bare units and signs allowed.
quat::Quaternion parse_quat_point(const std::string& text);

std::string format_complex(Complex z);
std::string format_quaternion(const quat::Quaternion& q);
std::string format_matrix(const ComplexMatrix& m);
std::string format_matrix(const quat::QuatMatrix& m);

/// Interpolation problem file: directional, even-polynomial, or full-value.
struct InterpolationFile {
  enum class Mode { directional, even_polynomial, full_value } mode;
  interp::DirectionalSpec directional;
  std::vector<Complex> scalar_nodes;   // even-polynomial mode
  std::vector<Complex> scalar_values;
  interp::QuatInterpolationSpec full_value;
};

InterpolationFile parse_interpolation_file(const nlohmann::json& j);
InterpolationFile load_interpolation_file(const std::string& path);

}  // namespace gpe::io
