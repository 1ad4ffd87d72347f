// belab — build, certify, and sweep PPT bound entangled states constructed
// from unextendible product bases.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "belab/catalog.hpp"
#include "belab/certify.hpp"
#include "belab/io.hpp"
#include "belab/maps.hpp"
#include "belab/range.hpp"
#include "belab/types.hpp"
#include "belab/version.hpp"

namespace fs = std::filesystem;
using namespace belab;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BELAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("BELAB_SEED is not an unsigned integer");
    }
  }
  return 42;
}

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, step = 0, end = 0;
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("grid must have the form start:step:end");
  }
  try {
    start = std::stod(spec.substr(0, c1));
    step = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    end = std::stod(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must have the form start:step:end with numeric fields");
  }
  if (step <= 0) throw std::invalid_argument("grid step must be positive");
  if (start < 0 || end > 1 || start > end) {
    throw std::invalid_argument("grid must lie inside [0, 1]");
  }
  const int n = static_cast<int>((end - start) / step + 1e-9) + 1;
  std::vector<double> grid;
  grid.reserve(n);
  for (int k = 0; k < n; ++k) {
    grid.push_back(std::min(start + k * step, end));
  }
  if (grid.size() < 2) {
    throw std::invalid_argument("grid parses to fewer than 2 increasing points");
  }
  return grid;
}

std::vector<int> parse_index_list(const std::string& spec, int max_value) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string tok = spec.substr(pos, comma == std::string::npos ? spec.size() - pos
                                                                        : comma - pos);
    int idx = 0;
    try {
      idx = std::stoi(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad index '" + tok + "' in subset list");
    }
    if (idx < 1 || idx > max_value) {
      throw std::invalid_argument("subset index " + tok + " out of range 1.." +
                                  std::to_string(max_value));
    }
    out.push_back(idx - 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty subset list");
  return out;
}

ProductBasis upb_by_name(const std::string& name) {
  if (name == "tiles") return tiles_upb();
  if (name == "gentiles2") return gentiles2_4x3_upb();
  if (name == "extended-tiles") return extended_tiles_4x3_upb();
  throw std::invalid_argument("unknown UPB '" + name +
                              "' (expected tiles, gentiles2, or extended-tiles)");
}

struct FamilySpec {
  StateFamily family;
  std::string parent_upb;
};

FamilySpec make_family(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "rho1") {
    if (arg.empty()) throw std::invalid_argument("rho1 needs a state index, e.g. rho1:1");
    const std::vector<int> indices = parse_index_list(arg, 5);
    if (indices.size() != 1) {
      throw std::invalid_argument("rho1 takes a single state index");
    }
    return {rho1_family(indices.front()), "tiles"};
  }
  if (head == "rho2") return {rho2_family(), "tiles"};
  if (head == "rho3") {
    if (arg.size() != 2 || arg[0] != '4' || arg[1] < '1' || arg[1] > '3') {
      throw std::invalid_argument("rho3 selector must be rho3:41, rho3:42 or rho3:43");
    }
    return {rho3_family(arg[1] - '1'), "extended-tiles"};
  }
  if (head == "sigma1") return {sigma1_family(), "gentiles2"};
  if (head == "sigma2") {
    if (arg.empty()) {
      throw std::invalid_argument("sigma2 needs a subset list, e.g. sigma2:7 or sigma2:1,2,7");
    }
    const ProductBasis upb = gentiles2_4x3_upb();
    return {sigma2_family(upb, parse_index_list(arg, upb.size())), "gentiles2"};
  }
  throw std::invalid_argument("unknown family '" + spec + "'");
}

bool is_family_selector(const std::string& s) {
  return s.rfind("rho1", 0) == 0 || s.rfind("rho2", 0) == 0 || s.rfind("rho3", 0) == 0 ||
         s.rfind("sigma1", 0) == 0 || s.rfind("sigma2", 0) == 0;
}

StateFile make_state(const std::string& selector, std::optional<double> lambda) {
  if (selector == "tiles-edge" || selector == "gentiles2-edge") {
    if (lambda) throw std::invalid_argument(selector + " does not take --lambda");
    const ProductBasis upb = selector == "tiles-edge" ? tiles_upb() : gentiles2_4x3_upb();
    return {edge_state(upb), selector, "edge", std::nullopt};
  }
  if (is_family_selector(selector)) {
    if (!lambda) throw std::invalid_argument(selector + " needs --lambda");
    FamilySpec fam = make_family(selector);
    return {fam.family.at(*lambda), fam.family.label,
            selector.substr(0, selector.find(':')), lambda};
  }
  throw std::invalid_argument("unknown state selector '" + selector + "'");
}

StateFile resolve_state(const std::string& selector_or_path, std::optional<double> lambda) {
  if (selector_or_path == "tiles-edge" || selector_or_path == "gentiles2-edge" ||
      is_family_selector(selector_or_path)) {
    return make_state(selector_or_path, lambda);
  }
  return read_state(selector_or_path);
}

std::string sanitize(const std::string& selector) {
  std::string out = selector;
  for (char& c : out) {
    if (c == ':' || c == ',') c = '-';
  }
  return out;
}

// --- subcommand handlers -------------------------------------------------

struct BuildArgs {
  std::string selector;
  std::optional<double> lambda;
  std::string out;
  double rank_tol = kDefaultRankTol;
  double tol = kDetectionTol;
};

void run_build(const BuildArgs& args) {
  const StateFile sf = make_state(args.selector, args.lambda);
  const fs::path out = args.out.empty() ? fs::path(sanitize(args.selector) + ".json")
                                        : fs::path(args.out);
  write_state(out, sf);
  std::cout << "label=" << sf.label << " rank=" << rank(sf.state.mat, args.rank_tol)
            << " trace=" << fmt(sf.state.mat.trace())
            << " ppt=" << (is_ppt(sf.state, args.tol) ? "true" : "false") << "\n"
            << "wrote " << out.string() << "\n";
}

struct SweepArgs {
  std::string family;
  std::string detector = "choi-u";
  std::string grid = "0:0.005:1";
  std::optional<double> gamma_value;
  std::string out = "sweep.csv";
};

Detector make_detector(const std::string& name, const FamilySpec& fam,
                       std::optional<double> gamma_value) {
  if (name == "choi-u") {
    if (fam.family.edge.dims.b != 3) {
      throw std::invalid_argument("choi-u detector needs party B of dimension 3");
    }
    return choi_u_detector();
  }
  if (name == "pt-mineig") return pt_min_eig_detector();
  if (name == "witness") {
    if (!gamma_value) {
      throw std::invalid_argument("witness detector needs --gamma-value (supplied gamma)");
    }
    return witness_detector(
        Witness(upb_by_name(fam.parent_upb).span_projector(), *gamma_value,
                GammaKind::supplied));
  }
  throw std::invalid_argument("unknown detector '" + name +
                              "' (expected choi-u, witness, or pt-mineig)");
}

void run_sweep(const SweepArgs& args) {
  const FamilySpec fam = make_family(args.family);
  const Detector det = make_detector(args.detector, fam, args.gamma_value);
  const SweepResult res = sweep(fam.family, parse_grid(args.grid), det);
  const fs::path csv(args.out);
  write_sweep_csv(csv, res);
  nlohmann::json j = sweep_to_json(res);
  j["csv"] = csv.string();
  write_json(fs::path(csv).replace_extension(".json"), j);
  std::cout << "threshold=" << (res.threshold ? fmt(*res.threshold) : "none") << "\n";
  if (res.sign_changes > 1) {
    std::cout << "sign_changes=" << res.sign_changes << " (no single threshold)\n";
  }
}

struct ReproduceArgs {
  int figure = 0;
  std::string out_dir = ".";
};

void run_reproduce(const ReproduceArgs& args) {
  StateFamily family = [&]() -> StateFamily {
    switch (args.figure) {
      case 1: return rho1_family(0);
      case 2: return rho2_family();
      case 3: return sigma1_family();
      default: throw std::invalid_argument("figure must be 1, 2 or 3");
    }
  }();
  fs::create_directories(args.out_dir);
  const SweepResult res = sweep(family, parse_grid("0:0.005:1"), choi_u_detector());
  const fs::path csv = fs::path(args.out_dir) / ("fig" + std::to_string(args.figure) + ".csv");
  write_sweep_csv(csv, res);
  nlohmann::json j = sweep_to_json(res);
  j["csv"] = csv.string();
  write_json(fs::path(csv).replace_extension(".json"), j);
  std::cout << "figure " << args.figure << " family=" << family.label
            << " threshold=" << (res.threshold ? fmt(*res.threshold) : "none") << "\n";
}

struct GammaArgs {
  std::string upb = "tiles";
  int restarts = 200;
  std::uint64_t seed = 42;
  std::string out;
};

void run_gamma(const GammaArgs& args) {
  const ProductBasis upb = upb_by_name(args.upb);
  const GammaSearch search =
      estimate_gamma_search(upb.span_projector(), upb.dims, args.restarts, args.seed);
  std::cout << "gamma=" << fmt(search.value) << " (upper bound, " << args.restarts
            << " restarts, seed " << args.seed << ")\n";
  std::cout << "minimizer alpha=[";
  for (int i = 0; i < search.minimizer.alpha.size(); ++i) {
    std::cout << (i ? ", " : "") << fmt(search.minimizer.alpha(i));
  }
  std::cout << "] beta=[";
  for (int i = 0; i < search.minimizer.beta.size(); ++i) {
    std::cout << (i ? ", " : "") << fmt(search.minimizer.beta(i));
  }
  std::cout << "]\n";
  nlohmann::json j = gamma_to_json(search);
  j["upb"] = args.upb;
  const fs::path out = args.out.empty() ? fs::path("gamma-" + args.upb + ".json")
                                        : fs::path(args.out);
  write_json(out, j);
  std::cout << "wrote " << out.string() << "\n";
}

struct RangeCheckArgs {
  std::string state;
  std::optional<double> lambda;
  std::string candidates = "search";
  int restarts = 200;
  std::uint64_t seed = 42;
  std::string out = "range-report.json";
};

void run_range_check(const RangeCheckArgs& args) {
  const StateFile sf = resolve_state(args.state, args.lambda);
  std::vector<ProductVector> candidates;
  if (args.candidates == "partners") {
    candidates = tiles_plus_partners();
  } else if (args.candidates == "search") {
    const ProductSearchResult found = product_search(
        range_projector(sf.state), sf.state.dims, args.restarts, args.seed);
    for (const ProductSearchHit& h : found.found) candidates.push_back(h.vector);
  } else {
    std::ifstream in{fs::path(args.candidates)};
    if (!in) throw std::invalid_argument("cannot open candidates file: " + args.candidates);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed candidates file: ") + e.what());
    }
    const auto as_vector = [](const nlohmann::json& arr) {
      const std::vector<double> v = arr.get<std::vector<double>>();
      return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    for (const auto& item : j) {
      candidates.emplace_back(as_vector(item.at("alpha")), as_vector(item.at("beta")));
    }
  }
  const RangeReport report = check_range_criterion(sf.state, candidates);
  std::cout << "state=" << (sf.label.empty() ? args.state : sf.label)
            << " rank=" << report.state_rank
            << " candidates_in_range=" << report.candidates_in_range
            << " span_rank=" << report.span_rank_of_candidates
            << " verdict=" << to_string(report.verdict) << "\n";
  nlohmann::json j = range_report_to_json(report);
  j["state"] = sf.label.empty() ? args.state : sf.label;
  j["candidates"] = args.candidates;
  if (args.candidates == "search") {
    j["restarts"] = args.restarts;
    j["seed"] = args.seed;
  }
  write_json(args.out, j);
}

struct CertifyArgs {
  std::string state;
  std::optional<double> lambda;
  std::string upb;
  std::optional<double> gamma_value;
  int restarts = 200;
  std::uint64_t seed = 42;
  double tol = kDetectionTol;
  std::string out;
};

void run_certify(const CertifyArgs& args) {
  const StateFile sf = resolve_state(args.state, args.lambda);
  CertifyOptions options;
  options.tol = args.tol;
  if (!args.upb.empty()) {
    const ProductBasis upb = upb_by_name(args.upb);
    const Matrix pi = upb.span_projector();
    if (args.gamma_value) {
      options.witness = Witness(pi, *args.gamma_value, GammaKind::supplied);
    } else {
      options.witness = Witness(pi, estimate_gamma(pi, upb.dims, args.restarts, args.seed),
                                GammaKind::estimated);
    }
  } else if (args.gamma_value) {
    throw std::invalid_argument("--gamma-value needs --upb to pick the witness projector");
  }
  const CertifyReport report = certify_state(sf.state, options);
  nlohmann::json j = certify_to_json(report, args.tol);
  j["state"] = sf.label.empty() ? args.state : sf.label;
  j["seed"] = args.seed;
  std::cout << j.dump(2) << "\n";
  if (!args.out.empty()) write_json(args.out, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               " — bound entangled states from unextendible product bases"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "construct a catalog state and write it as JSON");
  build->add_option("selector", build_args.selector,
                    "tiles-edge | gentiles2-edge | rho1:i | rho2 | rho3:4b | sigma1 | "
                    "sigma2:i,j,... (indices 1-based)")
      ->required();
  build->add_option("--lambda", build_args.lambda, "mixing parameter in [0,1]");
  build->add_option("--out", build_args.out, "output path (default <selector>.json)");
  build->add_option("--tol", build_args.tol, "PPT detection tolerance");
  build->add_option("--rank-tol", build_args.rank_tol, "eigenvalue cutoff for the printed rank");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a detector along a lambda grid");
  sweep_cmd->add_option("--family", sweep_args.family, "rho1:i | rho2 | rho3:4b | sigma1 | sigma2:...")
      ->required();
  sweep_cmd->add_option("--detector", sweep_args.detector, "choi-u | witness | pt-mineig");
  sweep_cmd->add_option("--grid", sweep_args.grid, "start:step:end (default 0:0.005:1)");
  sweep_cmd->add_option("--gamma-value", sweep_args.gamma_value,
                        "supplied gamma for the witness detector");
  sweep_cmd->add_option("--out", sweep_args.out, "CSV output path");

  ReproduceArgs repro_args;
  CLI::App* repro = app.add_subcommand("reproduce",
                                       "emit the min-eigenvalue-vs-lambda curves as CSV");
  repro->add_option("--figure", repro_args.figure, "1 (rho1), 2 (rho2) or 3 (sigma1)")
      ->required();
  repro->add_option("--out", repro_args.out_dir, "output directory (default .)");

  GammaArgs gamma_args;
  CLI::App* gamma_cmd = app.add_subcommand("gamma",
                                           "estimate the minimal product overlap of a UPB projector");
  gamma_cmd->add_option("--upb", gamma_args.upb, "tiles | gentiles2 | extended-tiles");
  gamma_cmd->add_option("--restarts", gamma_args.restarts, "seesaw restarts (default 200)");
  gamma_cmd->add_option("--seed", seed, "RNG seed (default $BELAB_SEED or 42)");
  gamma_cmd->add_option("--out", gamma_args.out, "JSON report path");

  RangeCheckArgs range_args;
  CLI::App* range_cmd = app.add_subcommand("range-check",
                                           "test whether product candidates span a state's range");
  range_cmd->add_option("--state", range_args.state, "state selector or JSON file path")
      ->required();
  range_cmd->add_option("--lambda", range_args.lambda, "mixing parameter for family selectors");
  range_cmd->add_option("--candidates", range_args.candidates,
                        "partners | search | path to a JSON candidates file");
  range_cmd->add_option("--restarts", range_args.restarts, "search restarts (default 200)");
  range_cmd->add_option("--seed", seed, "RNG seed (default $BELAB_SEED or 42)");
  range_cmd->add_option("--out", range_args.out, "JSON report path");

  CertifyArgs certify_args;
  CLI::App* certify_cmd = app.add_subcommand("certify", "PPT check plus entanglement detectors");
  certify_cmd->add_option("--state", certify_args.state, "state selector or JSON file path")
      ->required();
  certify_cmd->add_option("--lambda", certify_args.lambda,
                          "mixing parameter for family selectors");
  certify_cmd->add_option("--upb", certify_args.upb, "witness projector UPB");
  certify_cmd->add_option("--gamma-value", certify_args.gamma_value,
                          "supplied gamma for the witness");
  certify_cmd->add_option("--restarts", certify_args.restarts,
                          "restarts when gamma is estimated");
  certify_cmd->add_option("--seed", seed, "RNG seed (default $BELAB_SEED or 42)");
  certify_cmd->add_option("--tol", certify_args.tol, "detection tolerance");
  certify_cmd->add_option("--out", certify_args.out, "JSON report path");

  try {
    seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    gamma_args.seed = seed;
    range_args.seed = seed;
    certify_args.seed = seed;
    if (*build) run_build(build_args);
    if (*sweep_cmd) run_sweep(sweep_args);
    if (*repro) run_reproduce(repro_args);
    if (*gamma_cmd) run_gamma(gamma_args);
    if (*range_cmd) run_range_check(range_args);
    if (*certify_cmd) run_certify(certify_args);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
