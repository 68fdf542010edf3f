#include "latred/serialization.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace latred {

using nlohmann::json;

namespace {

json::const_reference field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing JSON field \"") + key + "\"");
  }
  return j.at(key);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad JSON field \"") + key + "\": " + e.what());
  }
}

json rational_matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({{"num", to_string(BigInt(numerator(m(i, j))))},
                     {"den", to_string(BigInt(denominator(m(i, j))))}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix rational_matrix_from(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw std::invalid_argument("basis: expected n rows");
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw std::invalid_argument("basis: expected n columns");
    for (std::size_t c = 0; c < n; ++c) {
      const BigInt num = big_int_from_string(get_as<std::string>(j[i][c], "num"));
      const BigInt den = big_int_from_string(get_as<std::string>(j[i][c], "den"));
      if (den == 0) throw std::invalid_argument("basis: zero denominator");
      m(i, c) = Rational(num, den);
    }
  }
  return m;
}

template <typename T>
json matrix_json(const DenseMatrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<T>(r.begin(), r.end()));
  }
  return rows;
}

template <typename T>
DenseMatrix<T> matrix_from(const json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    throw std::invalid_argument(std::string(name) + ": wrong number of rows");
  }
  DenseMatrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw std::invalid_argument(std::string(name) + ": wrong number of columns");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<T>();
  }
  return m;
}

template <typename T>
std::vector<T> vector_from(const json& j, std::size_t size, const char* name) {
  if (!j.is_array() || j.size() != size) throw std::invalid_argument(std::string(name) + ": wrong length");
  return j.get<std::vector<T>>();
}

json optional_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::uint64_t> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::uint64_t>();
}

Regime regime_from(const std::string& s) {
  if (s == "paper_params") return Regime::kPaperParams;
  if (s == "override") return Regime::kOverride;
  throw std::invalid_argument("unknown regime: " + s);
}

json instance_json(const PlantedIncGDDInstance& inst) {
  return {{"n", inst.dimension()},
          {"B", rational_matrix_json(inst.pair.b().exact())},
          {"S", rational_matrix_json(inst.pair.s().exact())},
          {"t", inst.t},
          {"r", inst.r},
          {"lambda_n", inst.lambda_n},
          {"gamma", inst.gamma},
          {"profile", to_string(inst.profile)},
          {"seed", inst.seed}};
}

PlantedIncGDDInstance instance_from(const json& j) {
  const auto n = get_as<std::size_t>(j, "n");
  if (n == 0) throw std::invalid_argument("instance: n must be >= 1");
  Basis b(rational_matrix_from(field(j, "B"), n));
  Basis s(rational_matrix_from(field(j, "S"), n));
  PlantedIncGDDInstance inst{SublatticePair::from_bases(std::move(b), std::move(s)),
                             vector_from<double>(field(j, "t"), n, "t"),
                             get_as<double>(j, "r"),
                             j.contains("lambda_n") && !j.at("lambda_n").is_null()
                                 ? j.at("lambda_n").get<double>()
                                 : 0.0,
                             j.contains("gamma") ? j.at("gamma").get<double>() : 1.0,
                             j.contains("profile")
                                 ? instance_profile_from_string(j.at("profile").get<std::string>())
                                 : InstanceProfile::kDiagonal,
                             j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0};
  if (!(inst.r > 0.0)) throw std::invalid_argument("instance: r must be positive");
  return inst;
}

template <typename P>
json params_json(const P& p) {
  return {{"eps", p.eps},
          {"m", p.m},
          {"sigma1", p.sigma1},
          {"sigma2", p.sigma2},
          {"gamma", p.gamma},
          {"kappa_target", p.kappa_target},
          {"override_m", optional_json(p.override_m)},
          {"regime", to_string(p.regime)},
          {"formula_m", optional_json(p.formula_m)},
          {"gamma_condition_ok", p.gamma_condition_ok}};
}

template <typename P>
P params_from(const json& j) {
  P p;
  p.eps = get_as<double>(j, "eps");
  p.m = get_as<std::uint64_t>(j, "m");
  p.sigma1 = get_as<double>(j, "sigma1");
  p.sigma2 = get_as<double>(j, "sigma2");
  p.gamma = get_as<double>(j, "gamma");
  p.kappa_target = get_as<double>(j, "kappa_target");
  p.override_m = optional_from(j, "override_m");
  p.regime = regime_from(get_as<std::string>(j, "regime"));
  p.formula_m = optional_from(j, "formula_m");
  p.gamma_condition_ok = j.value("gamma_condition_ok", false);
  if (p.m == 0) throw std::invalid_argument("params: m must be positive");
  return p;
}

std::string dump(const json& j, int indent) { return j.dump(indent) + "\n"; }

}  // namespace

std::string instance_to_json(const PlantedIncGDDInstance& inst, int indent) {
  return dump(instance_json(inst), indent);
}

PlantedIncGDDInstance instance_from_json(const std::string& text) { return instance_from(parse(text)); }

std::string solver_output_to_json(const SolverOutput& out, int indent) {
  return dump({{"x", out.x}, {"value", out.value}, {"solver", out.solver}, {"budget_used", out.budget_used}},
              indent);
}

SolverOutput solver_output_from_json(const std::string& text) {
  const json j = parse(text);
  SolverOutput out;
  out.x = get_as<std::vector<int>>(j, "x");
  out.value = j.value("value", 0.0);
  out.solver = j.value("solver", std::string());
  out.budget_used = j.value("budget_used", std::uint64_t{0});
  return out;
}

std::string transcript_to_json(const SbpTranscript& tr, int indent) {
  json j = {{"pipeline", "sbp"},
            {"instance", instance_json(tr.inst)},
            {"params", params_json(tr.params)},
            {"embedding", {{"column", tr.embedding.column}, {"scale", tr.embedding.scale}}},
            {"U", matrix_json(tr.u)},
            {"V", matrix_json(tr.v)},
            {"V_coeffs", matrix_json(tr.v_coeffs)},
            {"A_tilde", matrix_json(tr.a_tilde)},
            {"K", matrix_json(tr.k)},
            {"A", matrix_json(tr.a)}};
  return dump(j, indent);
}

std::string transcript_to_json(const NppTranscript& tr, int indent) {
  std::vector<std::string> c;
  for (const auto& v : tr.crt.c) c.push_back(to_string(v));
  std::vector<std::string> grid;
  for (const auto& g : tr.grid) grid.push_back(to_string(g));
  json j = {{"pipeline", "npp"},
            {"instance", instance_json(tr.inst)},
            {"params", params_json(tr.params)},
            {"crt", {{"p", tr.crt.p}, {"q", to_string(tr.crt.q)}, {"c", c}}},
            {"U", matrix_json(tr.u)},
            {"V", matrix_json(tr.v)},
            {"V_coeffs", matrix_json(tr.v_coeffs)},
            {"A", matrix_json(tr.a_mod)},
            {"A_floor", matrix_json(tr.a_floor)},
            {"grid", grid},
            {"f", tr.f},
            {"y", tr.y},
            {"K", tr.k},
            {"a", tr.a}};
  return dump(j, indent);
}

std::string transcript_pipeline(const std::string& text) {
  std::string pipeline = get_as<std::string>(parse(text), "pipeline");
  if (pipeline != "sbp" && pipeline != "npp") throw std::invalid_argument("unknown pipeline: " + pipeline);
  return pipeline;
}

SbpTranscript sbp_transcript_from_json(const std::string& text) {
  const json j = parse(text);
  if (get_as<std::string>(j, "pipeline") != "sbp") throw std::invalid_argument("not a perceptron transcript");
  SbpTranscript tr{instance_from(field(j, "instance")), params_from<SbpParams>(field(j, "params")),
                   {}, {}, {}, {}, {}, {}, {}};
  const std::size_t n = tr.inst.dimension();
  const std::size_t m = tr.params.m;
  const json& e = field(j, "embedding");
  tr.embedding.column = get_as<std::size_t>(e, "column");
  tr.embedding.scale = get_as<int>(e, "scale");
  if (tr.embedding.column >= m || tr.embedding.scale == 0) throw std::invalid_argument("bad embedding");
  tr.u = matrix_from<double>(field(j, "U"), n, m, "U");
  tr.v = matrix_from<double>(field(j, "V"), n, m, "V");
  tr.v_coeffs = matrix_from<std::int64_t>(field(j, "V_coeffs"), n, m, "V_coeffs");
  tr.a_tilde = matrix_from<double>(field(j, "A_tilde"), n, m, "A_tilde");
  tr.k = matrix_from<std::int64_t>(field(j, "K"), n, m, "K");
  tr.a = matrix_from<double>(field(j, "A"), n, m, "A");
  return tr;
}

NppTranscript npp_transcript_from_json(const std::string& text) {
  const json j = parse(text);
  if (get_as<std::string>(j, "pipeline") != "npp") throw std::invalid_argument("not a partition transcript");
  NppTranscript tr{instance_from(field(j, "instance")), params_from<NppParams>(field(j, "params")),
                   {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const std::size_t n = tr.inst.dimension();
  const std::size_t m = tr.params.m;
  const json& c = field(j, "crt");
  const auto primes = vector_from<std::uint64_t>(field(c, "p"), n, "crt.p");
  tr.crt = crt_build(primes);
  if (big_int_from_string(get_as<std::string>(c, "q")) != tr.crt.q) {
    throw std::invalid_argument("crt: stored q does not match the primes");
  }
  const auto coeffs = vector_from<std::string>(field(c, "c"), n, "crt.c");
  for (std::size_t i = 0; i < n; ++i) {
    if (big_int_from_string(coeffs[i]) != tr.crt.c[i]) throw std::invalid_argument("crt: coefficient mismatch");
  }
  tr.u = matrix_from<double>(field(j, "U"), n, m, "U");
  tr.v = matrix_from<double>(field(j, "V"), n, m, "V");
  tr.v_coeffs = matrix_from<std::int64_t>(field(j, "V_coeffs"), n, m, "V_coeffs");
  tr.a_mod = matrix_from<double>(field(j, "A"), n, m, "A");
  tr.a_floor = matrix_from<std::int64_t>(field(j, "A_floor"), n, m, "A_floor");
  for (const auto& g : vector_from<std::string>(field(j, "grid"), m, "grid")) {
    tr.grid.push_back(big_int_from_string(g));
  }
  tr.f = vector_from<double>(field(j, "f"), m, "f");
  tr.y = vector_from<double>(field(j, "y"), m, "y");
  tr.k = vector_from<std::int64_t>(field(j, "K"), m, "K");
  tr.a = vector_from<double>(field(j, "a"), m, "a");
  return tr;
}

std::string stat_reports_to_json(const std::vector<StatReport>& reports, int indent) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"test", r.test},
                   {"n", r.n},
                   {"m", r.m},
                   {"samples", r.samples},
                   {"statistic", r.statistic},
                   {"threshold", r.threshold},
                   {"pass", r.pass}});
  }
  return dump(arr, indent);
}

std::string reduction_result_to_json(const ReductionResult& result, int indent) {
  json log = json::array();
  for (const auto& a : result.log) {
    log.push_back({{"attempt", a.attempt},
                   {"solver_value", a.solver_value},
                   {"kappa_target", a.kappa_target},
                   {"kappa_ok", a.kappa_ok},
                   {"extracted", a.extracted},
                   {"member", a.member},
                   {"dist", a.dist},
                   {"bound", a.bound},
                   {"valid", a.valid},
                   {"error_budget_ok", a.error_budget_ok},
                   {"guess_matched", a.guess_matched},
                   {"wraparound", a.wraparound},
                   {"failure", a.failure}});
  }
  const AttemptRecord* last = result.log.empty() ? nullptr : &result.log.back();
  json j = {{"s", result.s ? json(*result.s) : json(nullptr)},
            {"attempts", result.attempts},
            {"dist", last ? json(last->dist) : json(nullptr)},
            {"bound", last ? json(last->bound) : json(nullptr)},
            {"verified", result.verified},
            {"attempts_log", log}};
  return dump(j, indent);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace latred
