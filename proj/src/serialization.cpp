#include "specflow/serialization.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "specflow/error.hpp"

namespace specflow {

namespace {

Json complex_array(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return out;
}

Matrix matrix_from(const Json& values, long rows, long cols) {
  if (!values.is_array() || static_cast<long>(values.size()) != rows * cols) {
    throw Error(ErrorCode::Io, "complex array has the wrong length");
  }
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      const Json& z = values[i * cols + j];
      m(i, j) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

LaurentSymbol symbol_from(const Json& j, int d) {
  LaurentSymbol s(d);
  for (const Json& diag : j) {
    s.set_coefficient(diag.at("offset").get<int>(), matrix_from(diag.at("coeff"), d, d));
  }
  return s;
}

}  // namespace

Json to_json(const LaurentSymbol& symbol) {
  Json out = Json::array();
  for (const auto& [k, c] : symbol.diagonals()) {
    out.push_back({{"offset", k}, {"coeff", complex_array(c)}});
  }
  return out;
}

Json to_json(const LatticeOperator& op) {
  return {
      {"fiber_dim", op.fiber_dim()},
      {"domain", to_string(op.domain())},
      {"left_diagonals", to_json(op.left_background())},
      {"right_diagonals", to_json(op.right_background())},
      {"window", {op.window().lo, op.window().hi}},
      {"perturbation", complex_array(op.perturbation())},
  };
}

LatticeOperator operator_from_json(const Json& j) {
  try {
    const int d = j.at("fiber_dim").get<int>();
    const std::string domain_name = j.at("domain").get<std::string>();
    Domain domain;
    if (domain_name == "full") {
      domain = Domain::FullLine;
    } else if (domain_name == "half") {
      domain = Domain::HalfLine;
    } else {
      throw Error(ErrorCode::Io, "unknown domain '" + domain_name + "'");
    }
    const SiteInterval window{j.at("window").at(0).get<long>(), j.at("window").at(1).get<long>()};
    const long n = window.size() * d;
    return LatticeOperator(domain, symbol_from(j.at("left_diagonals"), d),
                           symbol_from(j.at("right_diagonals"), d), window,
                           matrix_from(j.at("perturbation"), n, n));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed operator JSON: ") + e.what());
  }
}

Json to_json(const FlowReport& report) {
  Json curves = Json::array();
  for (const CurveSample& c : report.curves) {
    curves.push_back({{"s", c.s}, {"eigenvalues", c.eigenvalues}});
  }
  Json segments = Json::array();
  for (const FlowSegment& seg : report.segments) {
    segments.push_back({{"s0", seg.s0}, {"s1", seg.s1}, {"a", seg.a}, {"b", seg.b},
                        {"count0", seg.count0}, {"count1", seg.count1}});
  }
  Json diagnostics = {
      {"refinements", report.diagnostics.refinements},
      {"max_depth", report.diagnostics.max_depth},
      {"max_window_sites", report.diagnostics.max_window_sites},
      {"lipschitz", report.diagnostics.lipschitz},
      {"notes", report.diagnostics.notes},
      {"segments", segments},
  };
  diagnostics["doubled_flow"] =
      report.diagnostics.doubled_flow ? Json(*report.diagnostics.doubled_flow) : Json(nullptr);
  return {
      {"flow", report.flow},
      {"flow_mod2", report.flow_mod2 ? Json(*report.flow_mod2) : Json(nullptr)},
      {"grid", report.partition},
      {"curves", curves},
      {"diagnostics", diagnostics},
  };
}

std::string curves_csv(const FlowReport& report) {
  std::size_t width = 0;
  for (const CurveSample& c : report.curves) width = std::max(width, c.eigenvalues.size());
  std::ostringstream out;
  out << "s";
  for (std::size_t k = 1; k <= width; ++k) out << ",lambda_" << k;
  out << '\n' << std::setprecision(12);
  for (const CurveSample& c : report.curves) {
    out << c.s;
    for (std::size_t k = 0; k < width; ++k) {
      out << ',';
      if (k < c.eigenvalues.size()) out << c.eigenvalues[k];
    }
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace specflow
