#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loglie/corr.hpp"
#include "loglie/group.hpp"
#include "loglie/isometry.hpp"
#include "loglie/matrix_io.hpp"
#include "loglie/parallel.hpp"
#include "loglie/spd.hpp"
#include "loglie/verify.hpp"

namespace {

using namespace loglie;

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitMembership = 3;
constexpr int kExitNoConvergence = 4;

ChartPtr make_chart(const std::string& name, int n) {
  if (name == "spd-le") return spd_chart(n);
  if (name == "corr-offlog") return offlog_chart(n);
  if (name == "corr-logscaling") return logscaling_chart(n);
  throw ParseError("unknown chart: " + name);
}

void check_kind(const MatrixFile& file, const std::string& chart_name) {
  if (file.kind == MatrixKind::Unspecified) return;
  const bool wants_spd = (chart_name == "spd-le");
  const bool is_spd = (file.kind == MatrixKind::Spd);
  if (wants_spd != is_spd)
    throw MembershipViolation("declared matrix kind does not match chart " + chart_name);
}

std::vector<GroupElem> load_elements(const std::string& path, const ChartPtr& chart,
                                     const std::string& chart_name) {
  const MatrixFile file = read_matrix_file(path);
  check_kind(file, chart_name);
  std::vector<GroupElem> elems;
  elems.reserve(file.matrices.size());
  for (const auto& m : file.matrices) elems.emplace_back(chart, m);
  return elems;
}

uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("LOGLIE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("LOGLIE_SEED is not a valid integer");
    }
  }
  return 0;
}

std::string matrices_json(const std::vector<SymMat>& mats) {
  std::string out = "[";
  for (size_t i = 0; i < mats.size(); ++i) {
    if (i) out += ",";
    out += matrix_to_json(mats[i]);
  }
  out += "]";
  return out;
}

void emit_matrix_result(const std::string& output, const std::string& json,
                        const SymMat* single_matrix, const std::string& pretty) {
  if (output == "json") {
    std::cout << json << "\n";
  } else if (output == "csv") {
    if (!single_matrix) throw ParseError("csv output supports a single matrix only");
    std::cout << matrix_to_csv(*single_matrix);
  } else {
    std::cout << pretty;
  }
}

std::string pretty_matrix(const SymMat& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += "  ";
      out += format_double(m(i, j));
    }
    out += "\n";
  }
  return out;
}

std::vector<int> parse_dim_range(const std::string& text) {
  std::vector<int> dims;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw ParseError("empty dimension range: " + text);
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
    return dims;
  }
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) dims.push_back(std::stoi(item));
  if (dims.empty()) throw ParseError("no dimensions in: " + text);
  return dims;
}

struct CommonOpts {
  std::string input;
  std::string chart_name = "spd-le";
  std::string output = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input", opts.input, "input matrix file (.json or .csv)")->required();
  cmd->add_option("--chart", opts.chart_name, "geometry to use")
      ->check(CLI::IsMember({"spd-le", "corr-offlog", "corr-logscaling"}));
  cmd->add_option("--output", opts.output, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
}

int run(int argc, char** argv) {
  CLI::App app{"log-Euclidean Lie-group geometry on SPD and full-rank correlation matrices"};
  app.require_subcommand(1);

  CommonOpts mean_opts, geo_opts, dist_opts;
  std::vector<double> t_values{0.0, 0.5, 1.0};

  CLI::App* cmd_mean = app.add_subcommand("mean", "log-Euclidean mean and variance");
  add_common(cmd_mean, mean_opts);

  CLI::App* cmd_geodesic = app.add_subcommand("geodesic", "geodesic between two matrices");
  add_common(cmd_geodesic, geo_opts);
  cmd_geodesic->add_option("--t", t_values, "evaluation parameters (repeat or comma-separate)")
      ->delimiter(',');

  CLI::App* cmd_dist = app.add_subcommand("dist", "geodesic distance between two matrices");
  add_common(cmd_dist, dist_opts);

  std::string map_input, map_from = "spd-le", map_to = "corr-offlog", map_output = "json";
  double map_tol = 1e-8;
  CLI::App* cmd_map = app.add_subcommand("map", "apply an isometry between the structures");
  cmd_map->add_option("--input", map_input)->required();
  cmd_map->add_option("--from", map_from, "source structure")
      ->check(CLI::IsMember({"spd-le", "corr-offlog", "corr-logscaling"}));
  cmd_map->add_option("--to", map_to, "target structure")
      ->check(CLI::IsMember({"spd-le", "corr-offlog", "corr-logscaling"}));
  cmd_map->add_option("--output", map_output)->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_map->add_option("--tol-isometry", map_tol, "distance-preservation gate");

  std::string verify_dims = "2..6", verify_output = "json";
  int verify_trials = 50;
  uint64_t verify_seed = 0;
  bool verify_serial = false;
  std::vector<std::string> verify_only;
  Tolerances tol;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run the numerical certificate suite");
  cmd_verify->add_option("--n", verify_dims, "dimension range, e.g. 2..6 or 3,5");
  cmd_verify->add_option("--trials", verify_trials, "random trials per check and dimension");
  CLI::Option* seed_opt = cmd_verify->add_option("--seed", verify_seed, "RNG seed");
  cmd_verify->add_option("--output", verify_output)->check(CLI::IsMember({"json", "pretty"}));
  cmd_verify->add_flag("--serial", verify_serial, "disable parallel trial evaluation");
  cmd_verify->add_option("--only", verify_only, "run only checks with these id prefixes")
      ->delimiter(',');
  cmd_verify->add_option("--tol-roundtrip", tol.roundtrip);
  cmd_verify->add_option("--tol-roundtrip-iterative", tol.roundtrip_iterative);
  cmd_verify->add_option("--tol-group", tol.group);
  cmd_verify->add_option("--tol-scalers", tol.scalers);
  cmd_verify->add_option("--tol-rowzero-image", tol.rowzero_image);
  cmd_verify->add_option("--tol-metric-split", tol.metric_split);
  cmd_verify->add_option("--tol-degeneracy", tol.degeneracy);
  cmd_verify->add_option("--tol-tangent-fd", tol.tangent_fd);
  cmd_verify->add_option("--tol-tangent-inverse", tol.tangent_inverse);
  cmd_verify->add_option("--tol-isometry", tol.isometry);
  cmd_verify->add_option("--tol-embed-norm", tol.embed_norm);
  cmd_verify->add_option("--tol-helmert", tol.helmert);
  cmd_verify->add_option("--tol-multistart", tol.multistart);
  cmd_verify->add_option("--tol-quotient", tol.quotient);
  cmd_verify->add_option("--tol-section-isometry", tol.section_isometry);
  cmd_verify->add_option("--tol-lift", tol.lift);
  cmd_verify->add_option("--tol-split-cross", tol.split_cross);
  cmd_verify->add_option("--tol-mean-translation", tol.mean_translation);
  cmd_verify->add_option("--tol-cov-translation", tol.cov_translation);
  cmd_verify->add_option("--tol-cov-psd", tol.cov_psd);
  cmd_verify->add_option("--tol-geodesic-affinity", tol.geodesic_affinity);
  cmd_verify->add_option("--tol-defect-witness", tol.defect_witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  if (cmd_mean->parsed()) {
    const auto& o = mean_opts;
    const MatrixFile file = read_matrix_file(o.input);
    check_kind(file, o.chart_name);
    if (file.matrices.empty()) throw EmptySample();
    const ChartPtr chart = make_chart(o.chart_name, file.matrices.front().dim());
    std::vector<GroupElem> elems;
    for (const auto& m : file.matrices) elems.emplace_back(chart, m);
    const GroupElem mean = le_mean(elems);
    const double variance = le_variance(elems);

    std::string json = "{\"chart\": \"" + o.chart_name + "\"";
    json += ", \"count\": " + std::to_string(elems.size());
    json += ", \"mean\": " + matrix_to_json(mean.value);
    json += ", \"variance\": " + format_double(variance) + "}";
    std::string pretty = pretty_matrix(mean.value) + "variance = " + format_double(variance) + "\n";
    if (o.output == "csv") std::cerr << "variance = " << format_double(variance) << "\n";
    emit_matrix_result(o.output, json, &mean.value, pretty);
    return 0;
  }

  if (cmd_geodesic->parsed()) {
    const auto& o = geo_opts;
    const MatrixFile file = read_matrix_file(o.input);
    check_kind(file, o.chart_name);
    if (file.matrices.size() != 2) throw ParseError("geodesic needs exactly two matrices");
    const ChartPtr chart = make_chart(o.chart_name, file.matrices.front().dim());
    const GroupElem a(chart, file.matrices[0]);
    const GroupElem b(chart, file.matrices[1]);
    std::vector<SymMat> points;
    for (double t : t_values) points.push_back(geodesic(a, b, t).value);

    std::string json = "{\"chart\": \"" + o.chart_name + "\", \"t\": [";
    for (size_t i = 0; i < t_values.size(); ++i) {
      if (i) json += ",";
      json += format_double(t_values[i]);
    }
    json += "], \"points\": " + matrices_json(points) + "}";
    std::string pretty;
    for (size_t i = 0; i < points.size(); ++i) {
      pretty += "t = " + format_double(t_values[i]) + "\n" + pretty_matrix(points[i]);
    }
    emit_matrix_result(o.output, json, points.size() == 1 ? &points[0] : nullptr, pretty);
    return 0;
  }

  if (cmd_dist->parsed()) {
    const auto& o = dist_opts;
    const MatrixFile file = read_matrix_file(o.input);
    check_kind(file, o.chart_name);
    if (file.matrices.size() != 2) throw ParseError("dist needs exactly two matrices");
    const ChartPtr chart = make_chart(o.chart_name, file.matrices.front().dim());
    const double d = dist(GroupElem(chart, file.matrices[0]), GroupElem(chart, file.matrices[1]));
    if (o.output == "json")
      std::cout << "{\"chart\": \"" << o.chart_name << "\", \"distance\": " << format_double(d)
                << "}\n";
    else
      std::cout << format_double(d) << "\n";
    return 0;
  }

  if (cmd_map->parsed()) {
    const MatrixFile file = read_matrix_file(map_input);
    check_kind(file, map_from);
    const int n_in = file.matrices.front().dim();
    const ChartPtr source = make_chart(map_from, n_in);
    for (const auto& m : file.matrices) GroupElem(source, m);  // membership gate

    auto apply = [&](const SymMat& m) -> SymMat {
      if (map_from == map_to) return m;
      if (map_from == "spd-le" && map_to == "corr-offlog") return spd_to_corr_offlog(m);
      if (map_from == "spd-le" && map_to == "corr-logscaling") return spd_to_corr_logscaling(m);
      if (map_from == "corr-offlog" && map_to == "spd-le") return corr_offlog_to_spd(m);
      if (map_from == "corr-logscaling" && map_to == "spd-le") return corr_logscaling_to_spd(m);
      if (map_from == "corr-offlog" && map_to == "corr-logscaling")
        return corr_offlog_to_logscaling(m);
      return corr_logscaling_to_offlog(m);
    };

    std::vector<SymMat> mapped;
    for (const auto& m : file.matrices) mapped.push_back(apply(m));

    bool have_residual = false;
    double residual = 0.0;
    if (file.matrices.size() >= 2 && map_from != map_to) {
      have_residual = true;
      const ChartPtr target = make_chart(map_to, mapped.front().dim());
      for (size_t i = 0; i < file.matrices.size(); ++i)
        for (size_t j = i + 1; j < file.matrices.size(); ++j) {
          const double ds =
              (source->fwd(file.matrices[i]) - source->fwd(file.matrices[j])).frobenius_norm();
          const double dt = (target->fwd(mapped[i]) - target->fwd(mapped[j])).frobenius_norm();
          residual = std::max(residual, std::abs(dt - ds) / (1.0 + ds));
        }
    }

    std::string json = "{\"from\": \"" + map_from + "\", \"to\": \"" + map_to + "\"";
    json += ", \"matrices\": " + matrices_json(mapped);
    json += ", \"max_distance_residual\": ";
    json += have_residual ? format_double(residual) : std::string("null");
    json += "}";
    std::string pretty;
    for (const auto& m : mapped) pretty += pretty_matrix(m) + "\n";
    if (have_residual)
      std::cerr << "pairwise distance residual: " << format_double(residual) << "\n";
    emit_matrix_result(map_output, json, mapped.size() == 1 ? &mapped[0] : nullptr, pretty);
    if (have_residual && residual > map_tol) {
      std::cerr << "distance preservation violated (residual " << format_double(residual)
                << " > " << format_double(map_tol) << ")\n";
      return kExitFailure;
    }
    return 0;
  }

  if (cmd_verify->parsed()) {
    VerifyOptions opts;
    opts.dims = parse_dim_range(verify_dims);
    opts.trials = verify_trials;
    opts.seed = resolve_seed(seed_opt, verify_seed);
    opts.tol = tol;
    opts.parallel = !verify_serial;
    opts.only = verify_only;
    const VerifyReport report = run_verify(opts);
    if (verify_output == "json")
      std::cout << report_to_json(report, opts);
    else
      std::cout << report_to_text(report);
    if (!report.all_pass()) {
      std::cerr << "verification failed\n";
      return kExitFailure;
    }
    return 0;
  }

  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const loglie::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const loglie::NotSymmetric& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const loglie::MembershipViolation& e) {
    std::cerr << "membership error: " << e.what() << "\n";
    return kExitMembership;
  } catch (const loglie::NotPositiveDefinite& e) {
    std::cerr << "membership error: " << e.what() << "\n";
    return kExitMembership;
  } catch (const loglie::NoConvergence& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const loglie::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
