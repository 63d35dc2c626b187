#include "ptsim/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ptsim/errors.hpp"
#include "ptsim/fixtures.hpp"

namespace ptsim {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  fail(ErrorCode::ParseError, "complex entry must be [re, im] or a number");
}

Eigen::Index size_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
    fail(ErrorCode::ParseError, std::string("missing or invalid '") + key + "'");
  }
  return static_cast<Eigen::Index>(j[key].get<long long>());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing '") + key + "'");
  return j[key];
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) fail(ErrorCode::ParseError, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool all_scalars(const Json& a) {
  for (const auto& e : a) {
    if (e.is_structured()) return false;
  }
  return true;
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (all_scalars(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], indent, depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], indent, depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

Json residual_table(const DilationResiduals& r) {
  Json j;
  j["hermiticity"] = r.hermiticity;
  j["eq_h1h2"] = r.eq_h1h2;
  j["eq_h2h4"] = r.eq_h2h4;
  j["tau_sq"] = r.tau_sq;
  return j;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_pair(m(r, c)));
  }
  j["data"] = std::move(data);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "matrix must be an object");
  const Eigen::Index rows = size_field(j, "rows");
  const Eigen::Index cols = size_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    fail(ErrorCode::ParseError, "matrix data must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(data[static_cast<std::size_t>(r * cols + c)]);
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json j;
  j["dim"] = v.size();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_pair(v(i)));
  j["data"] = std::move(data);
  return j;
}

ComplexVector vector_from_json(const Json& j) {
  const Json* data = &j;
  if (j.is_object()) {
    data = &field(j, "data");
    if (j.contains("dim") && size_field(j, "dim") != static_cast<Eigen::Index>(data->size())) {
      fail(ErrorCode::ParseError, "vector dim does not match data length");
    }
  }
  if (!data->is_array()) fail(ErrorCode::ParseError, "vector data must be an array");
  ComplexVector v(static_cast<Eigen::Index>(data->size()));
  for (std::size_t i = 0; i < data->size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from((*data)[i]);
  return v;
}

Json to_json(const Classification& c) {
  Json j;
  j["kind"] = std::string(kind_name(c.kind));
  Json spec = Json::array();
  for (Eigen::Index i = 0; i < c.spectrum.size(); ++i) spec.push_back(complex_pair(c.spectrum(i)));
  j["spectrum"] = std::move(spec);
  return j;
}

Json to_json(const MetricOperator& m) {
  Json j;
  j["eta"] = matrix_to_json(m.eta);
  j["positive_definite"] = m.positive_definite;
  j["min_eigenvalue"] = m.min_eigenvalue;
  j["hermiticity_residual"] = m.hermiticity_residual;
  j["intertwining_residual"] = m.intertwining_residual;
  return j;
}

Json to_json(const Dilation& d) {
  Json j;
  j["eta"] = matrix_to_json(d.eta);
  j["tau"] = matrix_to_json(d.tau);
  j["H1"] = matrix_to_json(d.H1);
  j["H2"] = matrix_to_json(d.H2);
  j["H4"] = matrix_to_json(d.H4);
  j["Hhat"] = matrix_to_json(d.Hhat);
  j["residuals"] = residual_table(d.residuals);
  return j;
}

Json to_json(const ObstructionReport& r) {
  Json j;
  j["min_residual"] = r.min_residual;
  j["obstruction_entry_13"] = complex_pair(r.obstruction_entry_13);
  j["samples"] = r.samples;
  j["max_entry_13_deviation"] = r.max_entry_13_deviation;
  j["metric_family_dimension"] = r.metric_family_dimension;
  j["extended_coupling_norm"] = r.extended_coupling_norm;
  return j;
}

Json to_json(const CompletionResult& r) {
  Json j;
  j["U"] = matrix_to_json(r.U);
  j["P_N"] = matrix_to_json(r.P_N);
  j["scale"] = r.scale;
  return j;
}

Json to_json(const SimulationTrace& tr) {
  Json j;
  j["xi1"] = vector_to_json(tr.xi1);
  j["xi2"] = vector_to_json(tr.xi2);
  j["xi3"] = vector_to_json(tr.xi3);
  j["xi4"] = vector_to_json(tr.xi4);
  j["xi5"] = vector_to_json(tr.xi5);
  j["p_prepare"] = tr.p_prepare;
  j["p_post"] = tr.p_post;
  j["p_total"] = tr.p_total;
  j["final_formula_check"] = tr.final_formula_check;
  j["direct_norm"] = tr.direct_norm;
  if (tr.shots) {
    j["shots"] = {{"trials", tr.shots->trials}, {"prepared", tr.shots->prepared}, {"completed", tr.shots->completed}};
  }
  return j;
}

Json to_json(const JointStats& st) {
  Json j;
  Json table = Json::array();
  for (int k = 0; k < 2; ++k) {
    Json rows = Json::array();
    for (int a = 0; a < 2; ++a) rows.push_back(Json::array({st.table[k][a][0], st.table[k][a][1]}));
    table.push_back(std::move(rows));
  }
  j["table"] = std::move(table);
  j["bob_marginals"] = Json::array({Json::array({st.bob_marginals[0][0], st.bob_marginals[0][1]}),
                                    Json::array({st.bob_marginals[1][0], st.bob_marginals[1][1]})});
  j["delta_S"] = st.delta_S;
  j["p_success"] = Json::array({st.p_success[0], st.p_success[1]});
  return j;
}

Json to_json(const WholeSystemReport& r) {
  Json j;
  j["bob_marginals"] = Json::array({Json::array({r.bob_marginals[0][0], r.bob_marginals[0][1]}),
                                    Json::array({r.bob_marginals[1][0], r.bob_marginals[1][1]})});
  j["marginal_gap"] = r.marginal_gap;
  j["reduced_state_gap"] = r.reduced_state_gap;
  return j;
}

Json to_json(const GuntherReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["s"] = r.s;
  j["E0"] = r.e0;
  j["t"] = r.t;
  j["tau"] = r.tau;
  j["H1"] = r.h1;
  j["H2"] = r.h2;
  j["H4"] = r.h4;
  j["Hhat_tensor"] = r.hhat_tensor;
  j["Hhat_tensor_unscaled"] = r.hhat_tensor_unscaled;
  j["projector_Y"] = r.projector_y;
  j["amplitude"] = r.amplitude;
  j["amplitude_residual"] = r.amplitude_residual;
  j["amplitude_orthogonal"] = r.amplitude_orthogonal;
  j["reference_U_tau"] = r.reference_u_tau;
  j["p_prepare"] = r.p_prepare;
  j["evolution_top"] = r.evolution_top;
  j["evolution_bottom"] = r.evolution_bottom;
  return j;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

SimulationConfig simulation_config_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "config must be a JSON object");
  const double t = number_field(j, "t");
  const ComplexVector psi = vector_from_json(field(j, "psi"));
  const Json& scheme_field = field(j, "scheme");
  if (!scheme_field.is_string()) fail(ErrorCode::ParseError, "'scheme' must be a string");
  Scheme scheme;
  try {
    scheme = parse_scheme(scheme_field.get<std::string>());
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }

  std::optional<ComplexMatrix> rho, rho_prime;
  if (j.contains("rho")) rho = matrix_from_json(j["rho"]);
  if (j.contains("rho_prime")) rho_prime = matrix_from_json(j["rho_prime"]);

  Dilation d;
  if (j.contains("alpha_params")) {
    const Json& ap = j["alpha_params"];
    d = gunther_dilation(number_field(ap, "alpha"), number_field(ap, "s"), number_field(ap, "E0"), tol);
  } else {
    const ComplexMatrix h = matrix_from_json(field(j, "hamiltonian"));
    require_square(h, "hamiltonian");
    std::optional<PTPair> pair;
    if (j.contains("P") || j.contains("T")) {
      pair = validate_pt_pair(matrix_from_json(field(j, "P")), matrix_from_json(field(j, "T")), tol);
    } else {
      pair = pt_pair_for_unbroken(h, tol);
    }
    DilationOptions opts;
    if (j.contains("eta")) opts.eta = matrix_from_json(j["eta"]);
    d = build_dilation(PTSystem(h, *pair, tol), opts, tol);
  }

  SimulationConfig cfg = make_config(std::move(d), scheme, t, psi, rho, rho_prime, tol);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(ErrorCode::ParseError, "'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_unsigned()) fail(ErrorCode::ParseError, "'samples' must be a non-negative integer");
    cfg.samples = j["samples"].get<std::uint64_t>();
  }
  return cfg;
}

}  // namespace ptsim
