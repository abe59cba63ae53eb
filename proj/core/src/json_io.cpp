// Copyright 2026 The tdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tdsim/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tdsim {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

Json cost_json(const QueryCost& c) {
  Json out = Json::object();
  for (const auto& [k, v] : c) out[k] = v;
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const Operator& a) {
  if (a.rows() != a.cols()) throw ArgumentError("only square operators are serialised");
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) entries.push_back({a(i, k).real(), a(i, k).imag()});
  return {{"dim", a.rows()}, {"entries", entries}};
}

Operator operator_from_json(const Json& j) {
  const auto dim = field(j, "dim").get<Eigen::Index>();
  const Json& entries = field(j, "entries");
  if (dim < 1 || !entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim)
    throw ValidationError("operator entries do not match dim^2");
  check_dimension(dim);
  Operator a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Json& e = entries[static_cast<std::size_t>(i * dim + k)];
      if (!e.is_array() || e.size() != 2) throw ValidationError("operator entries must be [re, im] pairs");
      a(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return a;
}

DensityOperator density_from_json(const Json& j) {
  try {
    return DensityOperator::from_operator(operator_from_json(j));
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("not a density operator: ") + e.what());
  }
}

Json to_json(const BlockEncoding& b) {
  return {{"alpha", b.alpha},       {"ancillas", b.ancillas}, {"eps", b.eps},
          {"system_qubits", b.system_qubits}, {"provenance", b.provenance}, {"cost", cost_json(b.cost)},
          {"unitary", to_json(b.unitary)}};
}

BlockEncoding block_encoding_from_json(const Json& j) {
  BlockEncoding b;
  b.unitary = operator_from_json(field(j, "unitary"));
  b.alpha = field(j, "alpha").get<double>();
  b.ancillas = field(j, "ancillas").get<int>();
  b.eps = field(j, "eps").get<double>();
  b.system_qubits = field(j, "system_qubits").get<int>();
  b.provenance = j.value("provenance", std::string{});
  if (j.contains("cost")) b.cost = j.at("cost").get<QueryCost>();
  if (b.unitary.rows() != (Eigen::Index{1} << b.total_qubits()))
    throw ValidationError("unitary size does not match ancillas + system qubits");
  if (!is_unitary(b.unitary)) throw ValidationError("block-encoding matrix is not unitary");
  return b;
}

Json to_json(const OddPolynomial& p) {
  return {{"cheb_odd_coeffs", p.coeffs}, {"degree", p.degree}, {"delta", p.delta}, {"eps", p.eps}};
}

OddPolynomial polynomial_from_json(const Json& j) {
  OddPolynomial p = odd_polynomial(field(j, "cheb_odd_coeffs").get<std::vector<double>>());
  if (field(j, "degree").get<int>() != p.degree) throw ValidationError("degree does not match the coefficients");
  p.delta = field(j, "delta").get<double>();
  p.eps = field(j, "eps").get<double>();
  return p;
}

Json to_json(const ChannelModel& e) {
  Json j = {{"mode", to_string(e.mode)},
            {"label", e.label},
            {"delta_budget", e.delta_budget},
            {"copies_per_use", e.copies_per_use},
            {"workspace_qubits", e.workspace_qubits},
            {"target", to_json(e.target)}};
  if (e.mode == ChannelMode::kNoisyOracle) j["mixing"] = e.mixing;
  if (e.mode == ChannelMode::kDme) {
    j["evolution_time"] = e.evolution_time;
    j["steps"] = e.steps;
  }
  return j;
}

Json to_json(const QueryLedger& ledger) {
  Json j = {{"counts", Json::object()},
            {"queries_total", ledger.total_queries()},
            {"samples_total", ledger.total_samples()},
            {"saturated", ledger.saturated()}};
  for (const auto& [k, v] : ledger.counts()) j["counts"][k] = v;
  return j;
}

Json to_json(const ApproxLowRankProfile& p) {
  Json j = {{"provenance", p.provenance()}};
  switch (p.kind()) {
    case ProfileKind::kExact: j["rank"] = p.rank_bound(); break;
    case ProfileKind::kDepolarized:
      j["rank"] = p.rank_bound();
      j["dim"] = p.dim();
      j["lambda"] = p.lambda();
      break;
    case ProfileKind::kGibbs:
      j["k"] = p.rank_bound();
      j["dim"] = p.dim();
      j["gap"] = p.gap();
      break;
    case ProfileKind::kPowerLaw:
      j["scale"] = p.scale();
      j["dim"] = p.dim();
      break;
    case ProfileKind::kUser: {
      Json pts = Json::array();
      for (const ProfilePoint& q : p.points()) pts.push_back({{"delta", q.delta}, {"rank", q.rank}, {"mass", q.mass}});
      j["points"] = pts;
      break;
    }
  }
  return j;
}

ApproxLowRankProfile profile_from_json(const Json& j) {
  switch (parse_profile_kind(field(j, "provenance").get<std::string>())) {
    case ProfileKind::kExact: return ApproxLowRankProfile::exact(field(j, "rank").get<int>());
    case ProfileKind::kDepolarized:
      return ApproxLowRankProfile::depolarized(field(j, "rank").get<int>(), field(j, "dim").get<Eigen::Index>(),
                                               field(j, "lambda").get<double>());
    case ProfileKind::kGibbs:
      return ApproxLowRankProfile::gibbs(field(j, "k").get<int>(), field(j, "dim").get<Eigen::Index>(),
                                         field(j, "gap").get<double>());
    case ProfileKind::kPowerLaw:
      return ApproxLowRankProfile::power_law(field(j, "scale").get<double>(), field(j, "dim").get<Eigen::Index>());
    case ProfileKind::kUser: {
      std::vector<ProfilePoint> pts;
      for (const Json& q : field(j, "points"))
        pts.push_back({field(q, "delta").get<double>(), field(q, "rank").get<int>(), field(q, "mass").get<double>()});
      return ApproxLowRankProfile::user(std::move(pts));
    }
  }
  throw ValidationError("unreachable profile kind");
}

Json to_json(const FixtureSpec& s) {
  return {{"family", to_string(s.family)}, {"qubits", s.qubits}, {"rank", s.rank},  {"lambda", s.lambda},
          {"k", s.k},           {"gap", s.gap},       {"scale", s.scale}, {"uniform", s.uniform},
          {"seed", s.seed}};
}

FixtureSpec fixture_spec_from_json(const Json& j) {
  FixtureSpec s;
  s.family = parse_fixture_family(field(j, "family").get<std::string>());
  s.qubits = j.value("qubits", s.qubits);
  s.rank = j.value("rank", s.rank);
  s.lambda = j.value("lambda", s.lambda);
  s.k = j.value("k", s.k);
  s.gap = j.value("gap", s.gap);
  s.scale = j.value("scale", s.scale);
  s.uniform = j.value("uniform", s.uniform);
  s.seed = j.value("seed", s.seed);
  return s;
}

Json to_json(const Fixture& f) {
  return {{"spec", to_json(f.spec)}, {"state", to_json(f.state.op())}, {"profile", to_json(f.profile)}};
}

Fixture fixture_from_json(const Json& j) {
  Fixture f;
  if (j.contains("spec")) f.spec = fixture_spec_from_json(j.at("spec"));
  f.state = density_from_json(field(j, "state"));
  if (j.contains("profile")) {
    f.profile = profile_from_json(j.at("profile"));
  } else {
    f.profile = ApproxLowRankProfile::from_spectrum(f.state.op());
  }
  return f;
}

Json to_json(const EstimateReport& r) {
  const EstimateParameters& p = r.params;
  return {{"mode", to_string(r.mode)},
          {"backend", to_string(r.backend)},
          {"estimate", r.estimate},
          {"exact", r.exact_value},
          {"abs_error", r.abs_error},
          {"runs", r.runs},
          {"parameters",
           {{"eps", p.eps},
            {"eps_p", p.eps_p},
            {"eps_h", p.eps_h},
            {"delta", p.delta},
            {"delta_p", p.delta_p},
            {"delta_p_source", to_string(p.delta_p_source)},
            {"degree", p.degree},
            {"grid", p.grid},
            {"shots", p.shots},
            {"repetitions", p.repetitions},
            {"channel_uses", p.channel_uses}}},
          {"precondition", {{"mass", r.precondition_mass}, {"ok", r.precondition_ok}}},
          {"channel_budget", r.channel_budget},
          {"budget_overflow", r.budget_overflow},
          {"noise_mixing", r.noise_mixing},
          {"ledger", to_json(r.ledger)},
          {"warnings", r.warnings}};
}

Json to_json(const SwapTestReport& r) {
  return {{"mode", "swap-pure"},         {"estimate", r.estimate}, {"exact", r.exact_value},
          {"abs_error", r.abs_error},    {"overlap", r.overlap},   {"overlap_exact", r.overlap_exact},
          {"delta", r.delta},            {"grid", r.grid},         {"shots", r.shots},
          {"runs", r.runs},              {"ledger", to_json(r.ledger)}};
}

std::string csv_row(std::uint64_t seed, const EstimateReport& r) {
  std::ostringstream os;
  os << seed << ',' << to_string(r.mode) << ',' << format_double(r.params.eps) << ','
     << format_double(r.params.delta_p) << ',' << format_double(r.estimate) << ','
     << format_double(r.exact_value) << ',' << format_double(r.abs_error) << ',' << r.ledger.total_queries()
     << ',' << r.ledger.total_samples();
  return os.str();
}

std::string csv_row(std::uint64_t seed, const SwapTestReport& r, double eps) {
  std::ostringstream os;
  os << seed << ",swap-pure," << format_double(eps) << ",," << format_double(r.estimate) << ','
     << format_double(r.exact_value) << ',' << format_double(r.abs_error) << ',' << r.ledger.total_queries()
     << ',' << r.ledger.total_samples();
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace tdsim
