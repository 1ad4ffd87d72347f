#include "belab/io.hpp"

#include <cstdio>
#include <fstream>

#include "belab/version.hpp"

namespace belab {

namespace {

std::string format_17g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

nlohmann::json to_json(const StateFile& sf) {
  nlohmann::json j;
  j["dims"] = {sf.state.dims.a, sf.state.dims.b};
  const int d = sf.state.dims.total();
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      entries.push_back(sf.state.mat(r, c));
    }
  }
  j["matrix"] = entries;
  j["label"] = sf.label;
  j["family"] = sf.family;
  if (sf.lambda) j["lambda"] = *sf.lambda;
  return j;
}

StateFile state_from_json(const nlohmann::json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2) {
    throw std::invalid_argument("state file: missing or malformed \"dims\"");
  }
  const Dims dims{j["dims"][0].get<int>(), j["dims"][1].get<int>()};
  if (dims.a <= 0 || dims.b <= 0) {
    throw std::invalid_argument("state file: dims must be positive");
  }
  const int d = dims.total();
  if (!j.contains("matrix") || !j["matrix"].is_array() ||
      static_cast<int>(j["matrix"].size()) != d * d) {
    throw std::invalid_argument("state file: \"matrix\" must hold (d1*d2)^2 entries");
  }
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = j["matrix"][static_cast<std::size_t>(r) * d + c].get<double>();
    }
  }
  StateFile sf{DensityMatrix(std::move(m), dims), j.value("label", std::string{}),
               j.value("family", std::string{}), std::nullopt};
  if (j.contains("lambda")) sf.lambda = j["lambda"].get<double>();
  return sf;
}

void write_state(const std::filesystem::path& path, const StateFile& sf) {
  write_json(path, to_json(sf));
}

StateFile read_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open state file: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed state file " + path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path.string());
  }
  out << "lambda,value\n";
  for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
    out << format_17g(sweep.lambdas[i]) << ',' << format_17g(sweep.values[i]) << '\n';
  }
}

nlohmann::json sweep_to_json(const SweepResult& sweep) {
  nlohmann::json j;
  j["tool"] = tool_stamp();
  j["family"] = sweep.family_label;
  j["detector"] = sweep.detector_label;
  j["points"] = sweep.lambdas.size();
  j["sign_changes"] = sweep.sign_changes;
  j["threshold"] = sweep.threshold ? nlohmann::json(*sweep.threshold) : nlohmann::json(nullptr);
  j["detection_tol"] = kDetectionTol;
  return j;
}

nlohmann::json certify_to_json(const CertifyReport& report, double tol) {
  nlohmann::json j;
  j["tool"] = tool_stamp();
  j["ppt"] = report.ppt;
  j["choi_u"] = report.choi_u ? nlohmann::json(*report.choi_u) : nlohmann::json(nullptr);
  if (report.witness) {
    j["witness"] = {
        {"value", *report.witness},
        {"gamma_kind",
         report.witness_gamma_kind == GammaKind::supplied ? "supplied" : "estimated"}};
  } else {
    j["witness"] = nullptr;
  }
  j["verdict"] = to_string(report.verdict);
  j["detection_tol"] = tol;
  return j;
}

nlohmann::json range_report_to_json(const RangeReport& report) {
  nlohmann::json j;
  j["tool"] = tool_stamp();
  j["state_rank"] = report.state_rank;
  j["candidates_in_range"] = report.candidates_in_range;
  j["span_rank_of_candidates"] = report.span_rank_of_candidates;
  j["verdict"] = to_string(report.verdict);
  return j;
}

nlohmann::json gamma_to_json(const GammaSearch& search) {
  double lo = search.restart_values.front();
  double hi = lo;
  double sum = 0.0;
  int at_min = 0;
  for (double v : search.restart_values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    if (std::abs(v - search.value) <= 1e-9) ++at_min;
  }
  nlohmann::json j;
  j["tool"] = tool_stamp();
  j["gamma"] = search.value;
  j["restarts"] = search.restarts;
  j["seed"] = search.seed;
  j["minimizer"] = {
      {"alpha", std::vector<double>(search.minimizer.alpha.begin(), search.minimizer.alpha.end())},
      {"beta", std::vector<double>(search.minimizer.beta.begin(), search.minimizer.beta.end())}};
  j["restart_stats"] = {{"min", lo},
                        {"max", hi},
                        {"mean", sum / search.restart_values.size()},
                        {"count_at_min", at_min}};
  return j;
}

nlohmann::json ucpb_evidence_to_json(const UcpbEvidence& evidence) {
  nlohmann::json j;
  j["tool"] = tool_stamp();
  j["complement_dim"] = evidence.complement_dim;
  j["choi_u"] = evidence.choi_u ? nlohmann::json(*evidence.choi_u) : nlohmann::json(nullptr);
  j["best_overlap"] = evidence.best_overlap;
  j["found_count"] = evidence.found_count;
  j["orthogonal_found_count"] = evidence.orthogonal_found_count;
  j["product_deficit"] = evidence.product_deficit;
  j["completable"] = evidence.completable;
  j["restarts"] = evidence.restarts;
  j["seed"] = evidence.seed;
  return j;
}

nlohmann::json tool_stamp() {
  return {{"name", kToolName}, {"version", kToolVersion}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path.string());
  }
  out << j.dump(2) << '\n';
}

}  // namespace belab
